#include "oqec/codes.hpp"

#include <cmath>

#include "oqec/random.hpp"

namespace oqec {

namespace frames {

Matrix permutation(std::size_t dim, const std::vector<std::size_t>& leading) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix f = Matrix::Zero(n, n);
  std::vector<bool> used(dim, false);
  Eigen::Index col = 0;
  for (std::size_t i : leading) {
    f(static_cast<Eigen::Index>(i), col++) = 1.0;
    used[i] = true;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (!used[i]) f(static_cast<Eigen::Index>(i), col++) = 1.0;
  }
  return f;
}

Matrix three_qubit_spin_coupling() {
  Matrix lower = Matrix::Zero(8, 8);  // J_- = sum_i |1><0|_i
  Matrix sigma_minus = Matrix::Zero(2, 2);
  sigma_minus(1, 0) = 1.0;
  for (std::size_t site = 0; site < 3; ++site) {
    Matrix term = Matrix::Identity(1, 1);
    for (std::size_t i = 0; i < 3; ++i) term = kron(term, i == site ? sigma_minus : pauli::i2());
    lower += term;
  }
  auto basis = [](std::initializer_list<std::pair<int, double>> terms) {
    Vector v = Vector::Zero(8);
    for (auto [idx, amp] : terms) v(idx) = amp;
    return Vector(v / v.norm());
  };
  Matrix f(8, 8);
  // Copy 0: singlet on qubits 1,2 with qubit 3 free.
  f.col(0) = basis({{2, 1.0}, {4, -1.0}});
  f.col(1) = lower * f.col(0);
  // Copy 1: qubits 1,2 in the triplet, recoupled to total spin 1/2.
  f.col(2) = basis({{1, 2.0}, {2, -1.0}, {4, -1.0}});
  f.col(3) = lower * f.col(2);
  f.col(1).normalize();
  f.col(3).normalize();
  // Spin 3/2.
  f.col(4) = basis({{0, 1.0}});
  f.col(5) = basis({{1, 1.0}, {2, 1.0}, {4, 1.0}});
  f.col(6) = basis({{3, 1.0}, {5, 1.0}, {6, 1.0}});
  f.col(7) = basis({{7, 1.0}});
  return f;
}

namespace {

Matrix x_on(std::initializer_list<std::size_t> sites) {
  std::string ops(9, 'I');
  for (std::size_t s : sites) ops[s] = 'X';
  return pauli::string(ops);
}

}  // namespace

Matrix bacon_shor_9() {
  // Qubit (r, c) of the 3x3 grid is site 3r + c. Stabilizers: X on row pairs,
  // Z on column pairs. Logical X on row 0, Z on column 0. Gauge qubit i has
  // an X-type partner x_i anticommuting only with horizontal ZZ gauge z_i:
  // z = ZZ(1,0..1), ZZ(1,1..2), ZZ(2,0..1), ZZ(2,1..2).
  const Matrix stab_x1 = x_on({0, 1, 2, 3, 4, 5});
  const Matrix stab_x2 = x_on({3, 4, 5, 6, 7, 8});
  const Matrix logical_x = x_on({0, 1, 2});
  const Matrix gauge_x[4] = {x_on({0, 3}), x_on({2, 5}), x_on({0, 6}), x_on({2, 8})};

  Vector zero = Vector::Zero(512);
  zero(0) = 1.0;
  Vector v00 = zero + stab_x1 * zero;
  v00 = v00 + stab_x2 * v00;
  v00.normalize();

  Matrix code(512, 32);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 16; ++b) {
      Vector v = a ? Vector(logical_x * v00) : v00;
      for (int bit = 0; bit < 4; ++bit) {
        if (b & (8 >> bit)) v = gauge_x[bit] * v;
      }
      code.col(a * 16 + b) = v;
    }
  }
  Matrix f(512, 512);
  f.leftCols(32) = code;
  f.rightCols(480) = orthogonal_complement(code);
  return f;
}

}  // namespace frames

namespace {

CatalogEntry bit_flip_3() {
  return {"bit_flip_3",
          Decomposition(2, 1, 6, frames::permutation(8, {0, 7})),
          noise::restricted_flip(3, 0.1),
          {},
          "3-qubit repetition code, at most one bit flip; B trivial"};
}

CatalogEntry phase_flip_3() {
  const Matrix h3 = kron(kron(pauli::h(), pauli::h()), pauli::h());
  return {"phase_flip_3",
          Decomposition(2, 1, 6, h3 * frames::permutation(8, {0, 7})),
          noise::restricted_phase_flip(3, 0.1),
          {},
          "Hadamard-conjugated repetition code, at most one phase flip"};
}

CatalogEntry dfs_2qubit_dephasing() {
  return {"dfs_2qubit_dephasing",
          Decomposition(2, 1, 2, frames::permutation(4, {1, 2})),
          noise::collective_unitary(2, {{0.5, pauli::i2()}, {0.5, pauli::z()}}),
          {},
          "decoherence-free subspace span{|01>,|10>} under collective dephasing"};
}

CatalogEntry ns_3qubit_collective() {
  Rng rng(3);
  std::vector<std::pair<double, Matrix>> terms;
  for (double w : {0.5, 0.3, 0.2}) terms.emplace_back(w, random_su2(rng));
  return {"ns_3qubit_collective",
          Decomposition(2, 2, 4, frames::three_qubit_spin_coupling()),
          noise::collective_unitary(3, terms),
          {},
          "noiseless subsystem: multiplicity factor of the two spin-1/2 copies"};
}

CatalogEntry bitflip_3_vs_z() {
  const Matrix id = identity(8);
  return {"bitflip_3_vs_z",
          Decomposition(2, 1, 6, frames::permutation(8, {0, 7})),
          Channel(8, 8, {std::sqrt(0.5) * id, std::sqrt(0.5) * pauli::string("ZII")}),
          {false, false, false},
          "negative control: Z_1 acts as logical Z on the repetition code"};
}

CatalogEntry bacon_shor_9() {
  const double p = 0.01;
  std::vector<Matrix> ops{std::sqrt(1.0 - 27.0 * p) * identity(512)};
  for (std::size_t site = 0; site < 9; ++site) {
    for (char op : {'X', 'Y', 'Z'}) {
      std::string s(9, 'I');
      s[site] = op;
      ops.push_back(std::sqrt(p) * pauli::string(s));
    }
  }
  return {"bacon_shor_9",
          Decomposition(2, 16, 480, frames::bacon_shor_9()),
          Channel(512, 512, std::move(ops)),
          {},
          "9-qubit Bacon-Shor subsystem code, single-qubit Pauli noise"};
}

}  // namespace

std::vector<CatalogEntry> catalog(const CatalogOptions& opts) {
  std::vector<CatalogEntry> out;
  out.push_back(bit_flip_3());
  out.push_back(phase_flip_3());
  out.push_back(dfs_2qubit_dephasing());
  out.push_back(ns_3qubit_collective());
  out.push_back(bitflip_3_vs_z());
  if (opts.extended) out.push_back(bacon_shor_9());
  return out;
}

std::vector<std::string> catalog_names(const CatalogOptions& opts) {
  std::vector<std::string> names{"bit_flip_3", "phase_flip_3", "dfs_2qubit_dephasing",
                                 "ns_3qubit_collective", "bitflip_3_vs_z"};
  if (opts.extended) names.emplace_back("bacon_shor_9");
  return names;
}

std::optional<CatalogEntry> find_entry(std::string_view name, const CatalogOptions& opts) {
  if (name == "bit_flip_3") return bit_flip_3();
  if (name == "phase_flip_3") return phase_flip_3();
  if (name == "dfs_2qubit_dephasing") return dfs_2qubit_dephasing();
  if (name == "ns_3qubit_collective") return ns_3qubit_collective();
  if (name == "bitflip_3_vs_z") return bitflip_3_vs_z();
  if (name == "bacon_shor_9" && opts.extended) return bacon_shor_9();
  return std::nullopt;
}

}  // namespace oqec
