#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "oqec/tensor.hpp"

namespace oqec {

// A quantum operation in operator-sum form. Kraus order indexes the model
// environment basis and is kept stable; it never affects the action.
//
// `trace_decreasing` is a declaration, not a computed property: checks and
// synthesis refuse a non-trace-preserving channel unless it is set.
struct Channel {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  std::vector<Matrix> kraus;
  bool trace_decreasing = false;

  Channel() = default;
  Channel(std::size_t din, std::size_t dout, std::vector<Matrix> ops,
          bool declared_trace_decreasing = false);

  std::size_t size() const { return kraus.size(); }
  // Exact, entry-by-entry equality of the Kraus lists.
  bool operator==(const Channel& other) const;
};

struct ChannelValidation {
  bool trace_preserving = false;
  bool trace_nonincreasing = false;
  double defect = 0.0;  // || sum_j E_j^dag E_j - I ||_F
};

ChannelValidation validate(const Channel& ch, const Tolerances& tol = {});

// Throws ContractViolation unless `ch` is trace preserving, or declared
// trace decreasing and actually trace non-increasing.
void require_admissible(const Channel& ch, const Tolerances& tol = {});

Matrix apply(const Channel& ch, const Matrix& rho);
// For rho = L L^dag, returns [E_1 L, E_2 L, ...] so that ch(rho) = L' L'^dag.
Matrix apply_to_factor(const Channel& ch, const Matrix& factor);

// Kraus list {R_j E_k}, j outer.
Channel compose(const Channel& second, const Channel& first);

// sum_ij |i><j| (x) ch(|i><j|), of side dim_in * dim_out.
Matrix choi(const Channel& ch);
double choi_distance(const Channel& a, const Channel& b);

// I_d (x) ch, and ch (x) I_d.
Channel extend_left(std::size_t d, const Channel& ch);
Channel extend_right(const Channel& ch, std::size_t d);

// Fixture noise models. All are trace preserving.
namespace noise {

Channel identity(std::size_t d);
Channel unitary(const Matrix& u, const Tolerances& tol = {});
Channel bit_flip(double p);
Channel phase_flip(double p);
Channel depolarizing(std::size_t d, double p);

// Single-qubit channel `ch` acting on `site` of n qubits (site 0 is the
// most significant bit of the row-major index).
Channel single_qubit_on(std::size_t n, std::size_t site, const Channel& ch);

// {sqrt(1 - n p) I, sqrt(p) X_1, ..., sqrt(p) X_n}: at most one flip.
Channel restricted_flip(std::size_t n, double p);
Channel restricted_phase_flip(std::size_t n, double p);

// {sqrt(w_i) U_i^{(x) n}}.
Channel collective_unitary(std::size_t n,
                           const std::vector<std::pair<double, Matrix>>& terms,
                           const Tolerances& tol = {});

// k Kraus blocks of a Haar-style random isometry C^d -> C^{k d}.
Channel random_channel(std::size_t d, std::size_t k, std::uint64_t seed);

}  // namespace noise

namespace pauli {
Matrix i2();
Matrix x();
Matrix y();
Matrix z();
Matrix h();
// Tensor product of single-qubit operators given as a string over "IXYZ".
Matrix string(std::string_view ops);
}  // namespace pauli

}  // namespace oqec
