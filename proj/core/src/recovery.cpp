#include "oqec/recovery.hpp"

#include <cmath>

#include "oqec/conditions.hpp"
#include "oqec/error.hpp"
#include "oqec/random.hpp"

namespace oqec {

std::string to_string(RecoveryMethod m) {
  return m == RecoveryMethod::schmidt ? "schmidt" : "universal";
}

namespace {

double require_correctable(const Decomposition& dec, const Channel& ch,
                           const SynthesisOptions& opts) {
  const auto rep = check_condition_b(dec, ch, opts.tol, opts.numeric);
  if (!rep.pass) throw NotCorrectableError(rep.residual);
  return rep.residual;
}

struct SchmidtForm {
  std::vector<double> q;
  std::size_t num_k = 0;
  Matrix vectors;  // dV x (dim_a * num_k), column j * num_k + k, orthonormalized
};

// Schmidt form of |psi'> across R_A R_B E : V using the product eigenbasis
// {|j>_{R_A}} x {|k>_{R_B E}}; valid because condition [c] holds.
SchmidtForm schmidt_form(const PurifiedState& ps, double b_residual,
                         const Tolerances& numeric) {
  const auto da = static_cast<Eigen::Index>(ps.dim_ra);
  const auto db = static_cast<Eigen::Index>(ps.dim_rb);
  const auto dv = static_cast<Eigen::Index>(ps.dim_v);
  const auto de = static_cast<Eigen::Index>(ps.dim_e);

  const Matrix rho_rbe =
      reduced_density(ps.psi, {PurifiedState::kRB, PurifiedState::kE});
  const auto eig = eig_hermitian(rho_rbe, numeric);

  SchmidtForm out;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > numeric.cutoff) out.q.push_back(eig.values(k));
  }
  out.num_k = out.q.size();
  const auto nk = static_cast<Eigen::Index>(out.num_k);
  if (da * nk > dv) throw NotCorrectableError(b_residual);

  Matrix raw(dv, da * nk);
  for (Eigen::Index j = 0; j < da; ++j) {
    Matrix slice(dv, db * de);
    for (Eigen::Index b = 0; b < db; ++b) {
      for (Eigen::Index v = 0; v < dv; ++v) {
        for (Eigen::Index e = 0; e < de; ++e) {
          slice(v, b * de + e) = ps.psi.amplitudes(((j * db + b) * dv + v) * de + e);
        }
      }
    }
    for (Eigen::Index k = 0; k < nk; ++k) {
      const double scale = std::sqrt(out.q[static_cast<std::size_t>(k)] /
                                     static_cast<double>(da));
      raw.col(j * nk + k) = slice * eig.vectors.col(k).conjugate() / scale;
    }
  }
  out.vectors = polar_isometry(raw);
  return out;
}

// Appends the projector onto the orthogonal complement of the isometry
// `reached`, making the Kraus family trace preserving. Returns the number of
// operators added (0 when `reached` spans V).
std::size_t append_completion(std::vector<Matrix>& ops, const Matrix& reached) {
  const Matrix comp = orthogonal_complement(reached);
  if (comp.cols() == 0) return 0;
  ops.push_back(comp * comp.adjoint());
  return 1;
}

}  // namespace

Matrix SchmidtData::vectors_at(std::size_t k) const {
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto nk = static_cast<Eigen::Index>(num_k);
  Matrix ek(schmidt_vectors.rows(), da);
  for (Eigen::Index j = 0; j < da; ++j) {
    ek.col(j) = schmidt_vectors.col(j * nk + static_cast<Eigen::Index>(k));
  }
  return ek;
}

Matrix SchmidtData::projector(std::size_t k) const {
  const Matrix ek = vectors_at(k);
  return ek * ek.adjoint();
}

Matrix SchmidtData::unitary(std::size_t k) const {
  const Matrix ek = vectors_at(k);
  return targets * ek.adjoint() +
         orthogonal_complement(targets) * orthogonal_complement(ek).adjoint();
}

Recovery synthesize_schmidt_recovery(const Decomposition& dec, const Channel& ch,
                                     const SynthesisOptions& opts) {
  Recovery rec;
  rec.method = RecoveryMethod::schmidt;
  rec.condition_b_residual = require_correctable(dec, ch, opts);

  const auto ps = purify(dec, ch, opts.numeric);
  const auto form = schmidt_form(ps, rec.condition_b_residual, opts.numeric);

  // |j>_A |s>_B with |s> the first canonical B basis vector.
  const Matrix targets = dec.a_isometry_at(0);

  SchmidtData data;
  data.q = form.q;
  data.num_k = form.num_k;
  data.dim_a = dec.dim_a();
  data.schmidt_vectors = form.vectors;
  data.targets = targets;
  data.b_state = Vector::Zero(static_cast<Eigen::Index>(dec.dim_b()));
  data.b_state(0) = 1.0;

  std::vector<Matrix> ops;
  ops.reserve(form.num_k + 1);
  for (std::size_t k = 0; k < form.num_k; ++k) ops.push_back(targets * data.vectors_at(k).adjoint());
  rec.num_completion = append_completion(ops, form.vectors);
  rec.channel = Channel(dec.dim_v(), dec.dim_v(), std::move(ops));
  rec.data = std::move(data);
  return rec;
}

Recovery synthesize_universal_recovery(const Decomposition& dec, const Channel& ch,
                                       const SynthesisOptions& opts) {
  Recovery rec;
  rec.method = RecoveryMethod::universal;
  rec.condition_b_residual = require_correctable(dec, ch, opts);

  const std::size_t db = dec.dim_b();
  const auto da = static_cast<Eigen::Index>(dec.dim_a());
  UniversalData data;
  for (const auto& e : ch.kraus) {
    for (std::size_t t = 0; t < db; ++t) data.errors.push_back(e * dec.a_isometry_at(t));
  }
  const auto n = static_cast<Eigen::Index>(data.errors.size());
  data.gram.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      data.gram(i, k) = (data.errors[static_cast<std::size_t>(i)].adjoint() *
                         data.errors[static_cast<std::size_t>(k)])
                            .trace() /
                        static_cast<double>(da);
    }
  }
  const auto eig = eig_hermitian(data.gram, opts.numeric);
  data.gram_spectrum = eig.values;
  data.mix = eig.vectors;

  std::vector<Matrix> canonical;
  for (Eigen::Index m = 0; m < n; ++m) {
    if (eig.values(m) <= opts.numeric.cutoff) continue;
    Matrix g = Matrix::Zero(static_cast<Eigen::Index>(dec.dim_v()), da);
    for (Eigen::Index i = 0; i < n; ++i) {
      g += eig.vectors(i, m) * data.errors[static_cast<std::size_t>(i)];
    }
    canonical.push_back(polar_isometry(g));
  }
  const auto count = static_cast<Eigen::Index>(canonical.size());
  if (count * da > static_cast<Eigen::Index>(dec.dim_v())) {
    throw NotCorrectableError(rec.condition_b_residual);
  }
  // Joint polar step removes residual overlap between the ranges.
  Matrix stacked(static_cast<Eigen::Index>(dec.dim_v()), count * da);
  for (Eigen::Index m = 0; m < count; ++m) {
    stacked.middleCols(m * da, da) = canonical[static_cast<std::size_t>(m)];
  }
  stacked = polar_isometry(stacked);

  const Matrix target = dec.a_isometry_at(0);
  std::vector<Matrix> ops;
  for (Eigen::Index m = 0; m < count; ++m) {
    data.isometries.push_back(stacked.middleCols(m * da, da));
    ops.push_back(target * data.isometries.back().adjoint());
  }
  rec.num_completion = append_completion(ops, stacked);
  rec.channel = Channel(dec.dim_v(), dec.dim_v(), std::move(ops));
  rec.data = std::move(data);
  return rec;
}

Recovery synthesize_recovery(const Decomposition& dec, const Channel& ch,
                             RecoveryMethod method, const SynthesisOptions& opts) {
  return method == RecoveryMethod::schmidt ? synthesize_schmidt_recovery(dec, ch, opts)
                                           : synthesize_universal_recovery(dec, ch, opts);
}

VerificationReport verify_recovery(const Decomposition& dec, const Channel& ch,
                                   const Channel& recovery, std::size_t trials,
                                   std::uint64_t seed, const Tolerances& numeric) {
  if (!validate(recovery, numeric).trace_preserving) {
    throw ContractViolation("verify_recovery: recovery is not trace preserving");
  }
  if (recovery.dim_in != ch.dim_out) {
    throw DimensionError("verify_recovery: recovery does not act on the channel output");
  }
  Rng rng(seed);
  VerificationReport rep;
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const Vector s = random_pure_state(dec.dim_b(), rng);
    Matrix b_marginal[2];
    bool have[2] = {false, false};
    for (int which = 0; which < 2; ++which) {
      const Vector psi = random_pure_state(dec.dim_a(), rng);
      // The input is pure, so propagate a factor of the state through both
      // channels rather than dense density matrices.
      const Vector input = dec.code_isometry() * kron(psi, s);
      const Matrix out = apply_to_factor(recovery, apply_to_factor(ch, input));
      Matrix tau = out * out.adjoint();
      const double tr = tau.trace().real();
      if (tr <= numeric.cutoff) {
        ++rep.skipped;
        continue;
      }
      tau /= tr;
      const double leak = support_leakage(dec, tau);
      rep.max_leakage = std::max(rep.max_leakage, leak);
      if (leak > numeric.atol) rep.support_ok = false;
      const Matrix out_a = restrict_to_a(dec, tau);
      const double overlap = psi.dot(out_a * psi).real();
      rep.max_infidelity = std::max(rep.max_infidelity, 1.0 - overlap);
      b_marginal[which] = restrict_to_b(dec, tau);
      have[which] = true;
    }
    if (have[0] && have[1]) {
      rep.b_marginal_drift =
          std::max(rep.b_marginal_drift, (b_marginal[0] - b_marginal[1]).norm());
    }
  }
  return rep;
}

double entanglement_fidelity(const Decomposition& dec, const Channel& ch) {
  const std::size_t da = dec.dim_a();
  const auto dv = static_cast<Eigen::Index>(dec.dim_v());
  Matrix rho = oqec::apply(extend_left(da, ch), initial_reference_state(dec));
  rho /= rho.trace().real();
  double acc = 0.0;
  for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(da); ++a) {
    for (Eigen::Index b = 0; b < static_cast<Eigen::Index>(da); ++b) {
      const Matrix block = rho.block(a * dv, b * dv, dv, dv);
      acc += restrict_to_a(dec, block)(a, b).real();
    }
  }
  return acc / static_cast<double>(da);
}

Channel local_b_channel(const Decomposition& dec, const Channel& n_b) {
  if (n_b.dim_in != dec.dim_b() || n_b.dim_out != dec.dim_b()) {
    throw DimensionError("local_b_channel: channel does not act on B");
  }
  const Matrix& q = dec.code_isometry();
  std::vector<Matrix> ops;
  for (const auto& e : n_b.kraus) {
    ops.push_back(q * kron(identity(dec.dim_a()), e) * q.adjoint());
  }
  return Channel(dec.dim_v(), dec.dim_v(), std::move(ops), n_b.trace_decreasing);
}

Factorization factorize_product(const Decomposition& dec, const Channel& ch,
                                const SynthesisOptions& opts) {
  if (dec.dim_c() != 0) {
    throw DomainError("factorize_product: requires dim_c = 0, got " +
                      std::to_string(dec.dim_c()));
  }
  const double b_residual = require_correctable(dec, ch, opts);
  const auto ps = purify(dec, ch, opts.numeric);
  const auto form = schmidt_form(ps, b_residual, opts.numeric);

  const auto da = static_cast<Eigen::Index>(dec.dim_a());
  const auto db = static_cast<Eigen::Index>(dec.dim_b());
  const auto nk = static_cast<Eigen::Index>(form.num_k);
  const auto dv = static_cast<Eigen::Index>(dec.dim_v());
  if (nk > db) throw NotCorrectableError(b_residual);

  // Columns of `c` are W^dag |j,k>: e_jk for k < num_k, then the orthonormal
  // extension in index order.
  Matrix c(dv, dv);
  const Matrix extension = orthogonal_complement(form.vectors);
  Eigen::Index next = 0;
  for (Eigen::Index j = 0; j < da; ++j) {
    for (Eigen::Index k = 0; k < db; ++k) {
      c.col(j * db + k) = k < nk ? Vector(form.vectors.col(j * nk + k))
                                 : Vector(extension.col(next++));
    }
  }
  const Matrix& q = dec.code_isometry();

  std::vector<Matrix> local;
  for (const auto& e : ch.kraus) {
    const Matrix canonical = c.adjoint() * e * q;  // Q^dag W E Q
    local.push_back(partial_trace(canonical, {dec.dim_a(), dec.dim_b()}, {1}) /
                    static_cast<double>(da));
  }

  Factorization out;
  out.u = c * q.adjoint();  // W^dag with W = Q C^dag
  out.n_b = Channel(dec.dim_b(), dec.dim_b(), std::move(local), ch.trace_decreasing);
  out.residual =
      choi_distance(ch, compose(noise::unitary(out.u, opts.numeric),
                                local_b_channel(dec, out.n_b)));
  return out;
}

LinearityReport extend_by_linearity(const Decomposition& dec, const Channel& ch,
                                    const Channel& recovery, const Matrix& coeffs,
                                    std::size_t trials, std::uint64_t seed,
                                    double tol, const Tolerances& numeric) {
  if (static_cast<std::size_t>(coeffs.cols()) != ch.size() || coeffs.rows() == 0) {
    throw InputError("coeffs", "expected " + std::to_string(ch.size()) +
                                   " columns and at least one row");
  }
  std::vector<Matrix> ops;
  for (Eigen::Index l = 0; l < coeffs.rows(); ++l) {
    Matrix f = Matrix::Zero(static_cast<Eigen::Index>(ch.dim_out),
                            static_cast<Eigen::Index>(ch.dim_in));
    for (std::size_t k = 0; k < ch.size(); ++k) {
      f += coeffs(l, static_cast<Eigen::Index>(k)) * ch.kraus[k];
    }
    ops.push_back(std::move(f));
  }
  LinearityReport rep;
  rep.derived = Channel(ch.dim_in, ch.dim_out, std::move(ops), true);
  rep.validation = validate(rep.derived, numeric);
  if (!rep.validation.trace_nonincreasing) {
    throw InputError("coeffs", "derived operators are not trace non-increasing");
  }
  rep.derived.trace_decreasing = !rep.validation.trace_preserving;
  rep.verification = verify_recovery(dec, rep.derived, recovery, trials, seed, numeric);
  rep.pass = rep.verification.passed(tol);
  return rep;
}

}  // namespace oqec
