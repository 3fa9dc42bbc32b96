#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "oqec/channels.hpp"
#include "oqec/spaces.hpp"
#include "oqec/tensor.hpp"

namespace oqec {

enum class RecoveryMethod { schmidt, universal };

std::string to_string(RecoveryMethod m);

struct SynthesisOptions {
  double tol = 1e-9;  // condition-b acceptance threshold
  Tolerances numeric{};
};

// Data of the measurement-then-rotate construction from the Schmidt form of
// the purified state.
struct SchmidtData {
  std::vector<double> q;      // nonzero spectrum of rho'_{R_B E}, descending
  std::size_t num_k = 0;
  std::size_t dim_a = 0;
  Matrix schmidt_vectors;     // dV x (dim_a * num_k), column j * num_k + k is e_jk
  Matrix targets;             // dV x dim_a, column j is |j>_A|s>_B embedded in V
  Vector b_state;             // |s>_B, canonical coordinates

  // dV x dim_a block whose column j is e_jk.
  Matrix vectors_at(std::size_t k) const;
  // P_k = sum_j |e_jk><e_jk|.
  Matrix projector(std::size_t k) const;
  // A unitary with U_k |e_jk> = |j>_A|s>_B, extended to the complements in
  // index order.
  Matrix unitary(std::size_t k) const;
};

// Data of the single recovery for every fixed-B-state restriction E_s.
struct UniversalData {
  std::vector<Matrix> errors;  // F_(j,t) = E_j |.>_A|t>_B, index j * dim_b + t
  Matrix gram;                 // F_i^dag F_i' = gram(i, i') I_A
  RealVector gram_spectrum;    // descending
  Matrix mix;                  // eigenvectors of gram
  std::vector<Matrix> isometries;  // W_m : A -> V, mutually orthogonal ranges
};

struct Recovery {
  Channel channel;
  RecoveryMethod method = RecoveryMethod::schmidt;
  std::variant<SchmidtData, UniversalData> data;
  std::size_t num_completion = 0;  // trailing Kraus operators on the unreached subspace
  double condition_b_residual = 0.0;
};

// Throws NotCorrectableError when condition [b] fails at opts.tol.
Recovery synthesize_schmidt_recovery(const Decomposition& dec, const Channel& ch,
                                     const SynthesisOptions& opts = {});
Recovery synthesize_universal_recovery(const Decomposition& dec, const Channel& ch,
                                       const SynthesisOptions& opts = {});
Recovery synthesize_recovery(const Decomposition& dec, const Channel& ch,
                             RecoveryMethod method, const SynthesisOptions& opts = {});

struct VerificationReport {
  std::size_t trials = 0;
  std::size_t skipped = 0;  // inputs annihilated by a trace-decreasing channel
  double max_infidelity = 0.0;
  double b_marginal_drift = 0.0;
  double max_leakage = 0.0;
  bool support_ok = true;

  bool passed(double tol) const { return support_ok && max_infidelity <= tol; }
};

// Random pure rho on A and sigma on B through recovery o ch. Outputs are
// renormalized per trial. Drift compares the recovered B marginals of two
// A inputs sharing the same sigma.
VerificationReport verify_recovery(const Decomposition& dec, const Channel& ch,
                                   const Channel& recovery, std::size_t trials,
                                   std::uint64_t seed, const Tolerances& numeric = {});

// <Phi| (I (x) ch)(Phi (x) I_B/dim_b) |Phi> restricted to R_A A, with Phi the
// normalized maximally entangled state of R_A A.
double entanglement_fidelity(const Decomposition& dec, const Channel& ch);

struct Factorization {
  Matrix u;      // unitary on V (physical basis)
  Channel n_b;   // channel on B
  double residual = 0.0;  // Choi distance between ch and u o (I_A (x) n_b)
};

// Representation of a correctable channel on V = A (x) B as u o (I_A (x) n_b).
// I_A (x) n_b is expressed in canonical coordinates and rotated by the frame.
Factorization factorize_product(const Decomposition& dec, const Channel& ch,
                                const SynthesisOptions& opts = {});

// I_A (x) n_b as a channel on V, rotated into the physical basis.
Channel local_b_channel(const Decomposition& dec, const Channel& n_b);

struct LinearityReport {
  Channel derived;  // F_l = sum_k coeffs(l, k) E_k
  ChannelValidation validation;
  VerificationReport verification;
  bool pass = false;
};

// Checks that `recovery` also corrects the channel whose Kraus operators are
// the linear combinations given by the rows of `coeffs`. Throws InputError
// when that family is not trace non-increasing.
LinearityReport extend_by_linearity(const Decomposition& dec, const Channel& ch,
                                    const Channel& recovery, const Matrix& coeffs,
                                    std::size_t trials, std::uint64_t seed,
                                    double tol, const Tolerances& numeric = {});

}  // namespace oqec
