#include "oqec/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oqec/channels.hpp"
#include "oqec/error.hpp"
#include "oqec/random.hpp"
#include "test_support.hpp"

using namespace oqec;
using oqec::testing::kron_loop;
using oqec::testing::partial_trace_loop;

namespace {

Matrix diag(std::initializer_list<double> values) {
  Vector d(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) d(i++) = v;
  return d.asDiagonal();
}

StateVector bell() {
  StateVector v{{2, 2}, Vector::Zero(4)};
  v.amplitudes(0) = v.amplitudes(3) = 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST(kron, identity_and_diagonal) {
  EXPECT_TRUE(kron(identity(2), identity(2)).isApprox(identity(4)));
  EXPECT_TRUE(kron(diag({1, 2}), diag({3, 4})).isApprox(diag({3, 4, 6, 8})));
}

TEST(kron, pauli_product_squares_to_identity) {
  const Matrix xz = kron(pauli::x(), pauli::z());
  EXPECT_TRUE(xz.isApprox(kron_loop(pauli::x(), pauli::z())));
  EXPECT_LT((xz * xz - identity(4)).norm(), 1e-15);
}

TEST(kron, associative_and_mixed_product) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d1 = 2 + rng.index(3), d2 = 2 + rng.index(3), d3 = 2 + rng.index(3);
    const Matrix a = ginibre(d1, d1, rng), b = ginibre(d2, d2, rng), c = ginibre(d3, d3, rng);
    EXPECT_LT((kron(a, kron(b, c)) - kron(kron(a, b), c)).norm(), 1e-12);
    const Matrix c2 = ginibre(d1, d1, rng), d = ginibre(d2, d2, rng);
    EXPECT_LT((kron(a, b) * kron(c2, d) - kron(Matrix(a * c2), Matrix(b * d))).norm(), 1e-10);
  }
}

TEST(partial_trace, bell_marginal_is_maximally_mixed) {
  const auto v = bell();
  const Matrix rho = v.amplitudes * v.amplitudes.adjoint();
  EXPECT_LT((partial_trace(rho, {2, 2}, {0}) - identity(2) / 2.0).norm(), 1e-15);
  EXPECT_LT((reduced_density(v, {1}) - identity(2) / 2.0).norm(), 1e-15);
}

TEST(partial_trace, product_state_factorizes) {
  Rng rng(5);
  const Matrix ra = random_density(3, rng);
  const Matrix rb = 0.5 * random_density(2, rng);  // Tr = 0.5
  const Matrix out = partial_trace(kron(ra, rb), {3, 2}, {0});
  EXPECT_LT((out - ra * 0.5).norm(), 1e-14);
}

TEST(partial_trace, matches_index_loop_oracle) {
  Rng rng(7);
  const Matrix rho = random_density(8, rng);
  const Matrix out = partial_trace(rho, {2, 4}, {1});
  EXPECT_LT((out - partial_trace_loop(rho, 2, 4, 1)).norm(), 1e-14);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-14);
  EXPECT_LT((partial_trace(rho, {2, 4}, {0}) - partial_trace_loop(rho, 2, 4, 0)).norm(),
            1e-14);
}

TEST(partial_trace, sequential_order_does_not_matter) {
  Rng rng(8);
  const Matrix rho = random_density(2 * 3 * 2, rng);
  // Trace factor 0 then 2 (which becomes factor 1) vs 2 then 0.
  const Matrix first = partial_trace(partial_trace(rho, {2, 3, 2}, {1, 2}), {3, 2}, {0});
  const Matrix second = partial_trace(partial_trace(rho, {2, 3, 2}, {0, 1}), {2, 3}, {1});
  EXPECT_LT((first - second).norm(), 1e-12);
  EXPECT_LT((first - partial_trace(rho, {2, 3, 2}, {1})).norm(), 1e-12);
}

TEST(partial_trace, reduced_density_agrees_with_full_projector) {
  Rng rng(9);
  StateVector v{{2, 3, 2}, random_pure_state(12, rng)};
  const Matrix full = v.amplitudes * v.amplitudes.adjoint();
  const std::size_t keep[] = {0, 2};
  const std::size_t dims[] = {2, 3, 2};
  EXPECT_LT((reduced_density(v, keep) - partial_trace(full, dims, keep)).norm(), 1e-14);
}

TEST(partial_trace, dimension_mismatch_throws) {
  EXPECT_THROW(partial_trace(identity(6), {2, 2}, {0}), DimensionError);
  EXPECT_THROW(partial_trace(identity(4), {2, 2}, {2}), DimensionError);
}

TEST(eig_hermitian, diagonal_and_identity) {
  const auto e = eig_hermitian(diag({0.25, 0.75}));
  EXPECT_NEAR(e.values(0), 0.75, 1e-15);
  EXPECT_NEAR(e.values(1), 0.25, 1e-15);
  EXPECT_LT((e.vectors.col(0) - Vector::Unit(2, 1)).norm(), 1e-15);
  EXPECT_LT((e.vectors.col(1) - Vector::Unit(2, 0)).norm(), 1e-15);

  const auto id = eig_hermitian(identity(2));
  EXPECT_NEAR(id.values(0), 1.0, 1e-15);
  EXPECT_NEAR(id.values(1), 1.0, 1e-15);
  // Degenerate eigenspace resolves to the standard basis.
  EXPECT_LT((id.vectors - identity(2)).norm(), 1e-15);
}

TEST(eig_hermitian, pauli_x) {
  const auto e = eig_hermitian(pauli::x());
  EXPECT_NEAR(e.values(0), 1.0, 1e-15);
  EXPECT_NEAR(e.values(1), -1.0, 1e-15);
  Vector plus(2), minus(2);
  plus << 1, 1;
  minus << 1, -1;
  EXPECT_LT((e.vectors.col(0) - plus / std::sqrt(2.0)).norm(), 1e-14);
  EXPECT_LT((e.vectors.col(1) - minus / std::sqrt(2.0)).norm(), 1e-14);
}

TEST(eig_hermitian, reconstruction_orthonormality_and_phase) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + rng.index(8);
    const Matrix g = ginibre(d, d, rng);
    const Matrix h = g + g.adjoint();
    const auto e = eig_hermitian(h);
    const Matrix rebuilt = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LE((h - rebuilt).norm(), 1e-10 * h.norm());
    EXPECT_LT((e.vectors.adjoint() * e.vectors - identity(d)).norm(), 1e-12);
    for (Eigen::Index k = 0; k < e.values.size(); ++k) {
      if (k > 0) EXPECT_GE(e.values(k - 1), e.values(k));
      Eigen::Index lead = 0;
      while (std::abs(e.vectors(lead, k)) <= 1e-12) ++lead;
      EXPECT_EQ(e.vectors(lead, k).imag(), 0.0);
      EXPECT_GT(e.vectors(lead, k).real(), 0.0);
    }
  }
}

TEST(eig_hermitian, degenerate_basis_is_independent_of_input_rotation) {
  Rng rng(4);
  // diag(2, 1, 1, 1) conjugated by a unitary that only mixes the degenerate block.
  Matrix u = identity(4);
  u.bottomRightCorner(3, 3) = random_unitary(3, rng);
  const Matrix h = u * diag({2, 1, 1, 1}) * u.adjoint();
  const auto e = eig_hermitian(h);
  EXPECT_LT((e.vectors - identity(4)).norm(), 1e-12);
}

TEST(eig_hermitian, rejects_non_hermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eig_hermitian(m), ContractViolation);
}

TEST(schmidt, bell_and_product) {
  const auto s = schmidt(bell(), 2, 2);
  ASSERT_EQ(s.coeffs.size(), 2u);
  EXPECT_NEAR(s.coeffs[0], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.coeffs[1], 1 / std::sqrt(2.0), 1e-15);

  Vector plus(2);
  plus << 1, 1;
  StateVector prod{{2, 2}, kron(Vector(Vector::Unit(2, 0)), Vector(plus / std::sqrt(2.0)))};
  const auto p = schmidt(prod, 2, 2);
  ASSERT_EQ(p.coeffs.size(), 1u);
  EXPECT_NEAR(p.coeffs[0], 1.0, 1e-15);
}

TEST(schmidt, reconstruction_and_marginal_spectrum) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    StateVector v{{4, 3}, random_pure_state(12, rng)};
    const auto s = schmidt(v, 4, 3);
    Vector rebuilt = Vector::Zero(12);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
      rebuilt += s.coeffs[i] * kron(Vector(s.left.col(i)), Vector(s.right.col(i)));
    }
    EXPECT_LE((v.amplitudes - rebuilt).norm(), 1e-10);
    EXPECT_LT((s.left.adjoint() * s.left - identity(s.coeffs.size())).norm(), 1e-12);
    EXPECT_LT((s.right.adjoint() * s.right - identity(s.coeffs.size())).norm(), 1e-12);
    const RealVector left_spec = eigvals_hermitian(reduced_density(v, {0}));
    const RealVector right_spec = eigvals_hermitian(reduced_density(v, {1}));
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
      EXPECT_NEAR(s.coeffs[i] * s.coeffs[i], left_spec(i), 1e-10);
      EXPECT_NEAR(s.coeffs[i] * s.coeffs[i], right_spec(i), 1e-10);
    }
  }
}

TEST(schmidt, dimension_mismatch_throws) {
  EXPECT_THROW(schmidt(bell(), 3, 2), DimensionError);
}

TEST(entropy, reference_values) {
  Vector v = Vector::Unit(3, 1);
  EXPECT_NEAR(von_neumann_entropy(v * v.adjoint()), 0.0, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(identity(2) / 2.0), 1.0, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(diag({0.5, 0.25, 0.25})), 1.5, 1e-15);
}

TEST(entropy, unitary_invariance) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + rng.index(6);
    const Matrix rho = random_density(d, rng);
    const Matrix u = random_unitary(d, rng);
    EXPECT_NEAR(von_neumann_entropy(rho), von_neumann_entropy(u * rho * u.adjoint()), 1e-9);
  }
}

TEST(entropy, rejects_non_states) {
  EXPECT_THROW(von_neumann_entropy(diag({1.5, -0.5})), NotAStateError);
  EXPECT_THROW(von_neumann_entropy(diag({0.5, 0.25})), NotAStateError);
}
