#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// are written from definitions with explicit index loops and do not call the
// library routines they are used to check.

#include <cmath>
#include <cstdint>
#include <vector>

#include "oqec/channels.hpp"
#include "oqec/random.hpp"
#include "oqec/spaces.hpp"

namespace oqec::testing {

// sum_k m[(k, i), (k, j)] or sum_k m[(i, k), (j, k)] for a two-factor split.
inline Matrix partial_trace_loop(const Matrix& m, std::size_t d0, std::size_t d1,
                                 std::size_t keep) {
  const auto a = static_cast<Eigen::Index>(d0);
  const auto b = static_cast<Eigen::Index>(d1);
  if (keep == 1) {
    Matrix out = Matrix::Zero(b, b);
    for (Eigen::Index i = 0; i < b; ++i)
      for (Eigen::Index j = 0; j < b; ++j)
        for (Eigen::Index k = 0; k < a; ++k) out(i, j) += m(k * b + i, k * b + j);
    return out;
  }
  Matrix out = Matrix::Zero(a, a);
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index j = 0; j < a; ++j)
      for (Eigen::Index k = 0; k < b; ++k) out(i, j) += m(i * b + k, j * b + k);
  return out;
}

inline Matrix kron_loop(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      for (Eigen::Index k = 0; k < y.rows(); ++k)
        for (Eigen::Index l = 0; l < y.cols(); ++l)
          out(i * y.rows() + k, j * y.cols() + l) = x(i, j) * y(k, l);
  return out;
}

// Normalized sum_jk (Q^T E_j^T E_k^* Q^*) (x) |j><k|, the reference-environment
// marginal written directly from the Kraus operators.
inline Matrix reference_marginal_formula(const Decomposition& dec, const Channel& ch) {
  const Matrix& q = dec.code_isometry();
  const auto n = static_cast<Eigen::Index>(ch.size());
  const auto dcode = q.cols();
  Matrix out = Matrix::Zero(dcode * n, dcode * n);
  double norm = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Matrix block = q.transpose() * ch.kraus[j].transpose() *
                           ch.kraus[k].conjugate() * q.conjugate();
      Matrix unit = Matrix::Zero(n, n);
      unit(j, k) = 1.0;
      out += kron_loop(block, unit);
      if (j == k) norm += block.trace().real();
    }
  }
  return out / norm;
}

// sum_ij |i><j| (x) ch(|i><j|) evaluated on matrix units.
inline Matrix choi_from_matrix_units(const Channel& ch) {
  const auto din = static_cast<Eigen::Index>(ch.dim_in);
  const auto dout = static_cast<Eigen::Index>(ch.dim_out);
  Matrix out = Matrix::Zero(din * dout, din * dout);
  for (Eigen::Index i = 0; i < din; ++i) {
    for (Eigen::Index j = 0; j < din; ++j) {
      Matrix unit = Matrix::Zero(din, din);
      unit(i, j) = 1.0;
      Matrix image = Matrix::Zero(dout, dout);
      for (const auto& e : ch.kraus) image += e * unit * e.adjoint();
      out.block(i * dout, j * dout, dout, dout) = image;
    }
  }
  return out;
}

inline Decomposition random_decomposition(std::size_t da, std::size_t db, std::size_t dc,
                                          Rng& rng) {
  return Decomposition(da, db, dc, random_unitary(da * db + dc, rng));
}

// Random channel on B with k Kraus operators.
inline Channel random_b_channel(std::size_t db, std::size_t k, Rng& rng) {
  const Matrix iso = polar_isometry(ginibre(k * db, db, rng));
  std::vector<Matrix> ops;
  const auto n = static_cast<Eigen::Index>(db);
  for (std::size_t i = 0; i < k; ++i) ops.push_back(iso.middleRows(i * n, n));
  return Channel(db, db, std::move(ops));
}

// U o (I_A (x) N_B) on the code block, with an arbitrary TP action on C.
// Condition [b] holds by construction.
inline Channel random_correctable_channel(const Decomposition& dec, std::size_t k,
                                          Rng& rng) {
  const Channel nb = random_b_channel(dec.dim_b(), k, rng);
  const Matrix u = random_unitary(dec.dim_v(), rng);
  const Matrix& q = dec.code_isometry();
  const auto dv = static_cast<Eigen::Index>(dec.dim_v());
  const Matrix complement = Matrix::Identity(dv, dv) - q * q.adjoint();
  std::vector<Matrix> ops;
  const double w = 1.0 / static_cast<double>(k);
  for (const auto& n : nb.kraus) {
    ops.push_back(u * (q * kron_loop(Matrix::Identity(dec.dim_a(), dec.dim_a()), n) *
                           q.adjoint() +
                       std::sqrt(w) * complement));
  }
  return Channel(dec.dim_v(), dec.dim_v(), std::move(ops));
}

// Replaces the Kraus list by sum_l u(j, l) E_l for a random unitary u.
inline Channel remix(const Channel& ch, Rng& rng) {
  const Matrix u = random_unitary(ch.size(), rng);
  std::vector<Matrix> ops;
  for (std::size_t j = 0; j < ch.size(); ++j) {
    Matrix f = Matrix::Zero(ch.dim_out, ch.dim_in);
    for (std::size_t l = 0; l < ch.size(); ++l) f += u(j, l) * ch.kraus[l];
    ops.push_back(std::move(f));
  }
  return Channel(ch.dim_in, ch.dim_out, std::move(ops), ch.trace_decreasing);
}

inline Matrix pure(const Vector& v) { return v * v.adjoint(); }

}  // namespace oqec::testing
