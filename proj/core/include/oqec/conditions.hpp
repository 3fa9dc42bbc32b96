#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "oqec/channels.hpp"
#include "oqec/spaces.hpp"
#include "oqec/tensor.hpp"

namespace oqec {

enum class Condition { b, c, d };

std::string to_string(Condition c);

// Normalized |psi'> = (I_{R_A R_B} (x) L)|alpha>|beta>|s> over the factors
// R_A, R_B, V, E in that order. R_A and R_B carry copies of the canonical
// A and B bases; E has one basis vector per Kraus operator.
struct PurifiedState {
  std::size_t dim_ra = 0;
  std::size_t dim_rb = 0;
  std::size_t dim_v = 0;
  std::size_t dim_e = 0;
  StateVector psi;
  // Squared norm of the unnormalized state divided by dim_a * dim_b; equal
  // to 1 for trace-preserving channels.
  double norm_in = 1.0;

  static constexpr std::size_t kRA = 0;
  static constexpr std::size_t kRB = 1;
  static constexpr std::size_t kV = 2;
  static constexpr std::size_t kE = 3;
};

struct ConditionBWitness {
  std::size_t num_kraus = 0;
  std::vector<Matrix> b_blocks;       // index j * num_kraus + k
  std::vector<double> pair_residuals;  // same indexing
  std::pair<std::size_t, std::size_t> worst_pair{0, 0};
  double max_pair_residual = 0.0;

  const Matrix& block(std::size_t j, std::size_t k) const {
    return b_blocks[j * num_kraus + k];
  }
};

struct ConditionCWitness {
  Matrix rho_ra;
  Matrix rho_rbe;
};

struct ConditionDWitness {
  double s_a = 0.0;    // log2 dim_a
  double s_v = 0.0;    // S(rho'_V)
  double s_rbe = 0.0;  // S(rho'_{R_B E})
  // s_a - (s_v - s_rbe); >= 0 by subadditivity, 0 iff correctable.
  double signed_gap = 0.0;
};

struct ConditionReport {
  Condition condition = Condition::b;
  bool pass = false;
  double residual = 0.0;
  double tol = 0.0;
  std::variant<ConditionBWitness, ConditionCWitness, ConditionDWitness> witness;
  std::vector<std::string> notes;
};

// P E_j^dag E_k P = I_A (x) B_jk for all pairs. B_jk is taken as the A-average
// of the restricted block. The residual is the root-sum-square of the pair
// defects, which is invariant under unitary remixing of the Kraus list; the
// witness carries each pair's defect and the worst pair.
ConditionReport check_condition_b(const Decomposition& dec, const Channel& ch,
                                  double tol, const Tolerances& numeric = {});

PurifiedState purify(const Decomposition& dec, const Channel& ch,
                     const Tolerances& numeric = {});

// rho'_{R_A R_B E}, rho'_{R_A}, rho'_{R_B E} from the purified state.
Matrix reference_environment_marginal(const PurifiedState& ps);

// rho'_{R_A R_B E} = rho'_{R_A} (x) rho'_{R_B E}.
ConditionReport check_condition_c(const PurifiedState& ps, double tol);

// S(rho_A) = S(rho'_V) - S(rho'_{R_B E}).
ConditionReport check_condition_d(const PurifiedState& ps, double tol,
                                  const Tolerances& numeric = {});

// S(rho_V) - S(rho_{R V}) in bits for a state on R (x) V.
double coherent_info(const Matrix& rho_rv, std::size_t dim_r, std::size_t dim_v,
                     const Tolerances& numeric = {});

// Reference-system state on R_A (x) V before any noise: R_A maximally
// entangled with A while R_B (traced) is maximally entangled with B.
Matrix initial_reference_state(const Decomposition& dec);

struct DpiTrace {
  std::vector<double> values;  // before any channel, then after each
  bool monotone = true;        // never rises by more than `slack`
  double max_increase = 0.0;
};

DpiTrace dpi_trace(const Decomposition& dec, const std::vector<Channel>& chain,
                   double slack = 1e-9, const Tolerances& numeric = {});

}  // namespace oqec
