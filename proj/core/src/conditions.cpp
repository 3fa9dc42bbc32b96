#include "oqec/conditions.hpp"

#include <algorithm>
#include <cmath>

#include "oqec/error.hpp"

namespace oqec {

std::string to_string(Condition c) {
  switch (c) {
    case Condition::b: return "b";
    case Condition::c: return "c";
    case Condition::d: return "d";
  }
  return "?";
}

namespace {

void require_on_v(const Decomposition& dec, const Channel& ch) {
  if (ch.dim_in != dec.dim_v() || ch.dim_out != dec.dim_v()) {
    throw DimensionError("channel acts on " + std::to_string(ch.dim_in) + " -> " +
                         std::to_string(ch.dim_out) + ", decomposition has dV = " +
                         std::to_string(dec.dim_v()));
  }
}

// Entropy of a reduced state of a pure vector, computed on whichever side of
// the cut is smaller.
double marginal_entropy(const PurifiedState& ps, std::vector<std::size_t> keep,
                        const Tolerances& numeric) {
  std::vector<std::size_t> rest;
  std::size_t kept_dim = 1;
  for (std::size_t f = 0; f < ps.psi.dims.size(); ++f) {
    if (std::find(keep.begin(), keep.end(), f) == keep.end()) {
      rest.push_back(f);
    } else {
      kept_dim *= ps.psi.dims[f];
    }
  }
  const std::size_t rest_dim = ps.psi.total_dim() / kept_dim;
  const Matrix rho = reduced_density(ps.psi, kept_dim <= rest_dim ? keep : rest);
  return von_neumann_entropy(rho, numeric);
}

}  // namespace

ConditionReport check_condition_b(const Decomposition& dec, const Channel& ch,
                                  double tol, const Tolerances& numeric) {
  require_on_v(dec, ch);
  require_admissible(ch, numeric);

  const Matrix& q = dec.code_isometry();
  const std::size_t n = ch.size();
  std::vector<Matrix> images;
  images.reserve(n);
  for (const auto& e : ch.kraus) images.push_back(e * q);

  ConditionBWitness w;
  w.num_kraus = n;
  w.b_blocks.resize(n * n);
  w.pair_residuals.resize(n * n);
  const Matrix id_a = identity(dec.dim_a());
  const double inv_da = 1.0 / static_cast<double>(dec.dim_a());
  double sum_sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Matrix m = images[j].adjoint() * images[k];
      Matrix b = partial_trace(m, {dec.dim_a(), dec.dim_b()}, {1}) * inv_da;
      const double r = (m - kron(id_a, b)).norm();
      w.b_blocks[j * n + k] = std::move(b);
      w.pair_residuals[j * n + k] = r;
      sum_sq += r * r;
      if (r > w.max_pair_residual) {
        w.max_pair_residual = r;
        w.worst_pair = {j, k};
      }
    }
  }

  ConditionReport rep;
  rep.condition = Condition::b;
  rep.residual = std::sqrt(sum_sq);
  rep.tol = tol;
  rep.pass = rep.residual <= tol;
  rep.witness = std::move(w);
  return rep;
}

PurifiedState purify(const Decomposition& dec, const Channel& ch,
                     const Tolerances& numeric) {
  require_on_v(dec, ch);
  require_admissible(ch, numeric);

  PurifiedState ps;
  ps.dim_ra = dec.dim_a();
  ps.dim_rb = dec.dim_b();
  ps.dim_v = dec.dim_v();
  ps.dim_e = ch.size();
  ps.psi.dims = {ps.dim_ra, ps.dim_rb, ps.dim_v, ps.dim_e};

  const auto dcode = static_cast<Eigen::Index>(dec.dim_code());
  const auto dv = static_cast<Eigen::Index>(ps.dim_v);
  const auto de = static_cast<Eigen::Index>(ps.dim_e);
  ps.psi.amplitudes.resize(dcode * dv * de);
  const Matrix& q = dec.code_isometry();
  for (Eigen::Index j = 0; j < de; ++j) {
    const Matrix image = ch.kraus[static_cast<std::size_t>(j)] * q;
    for (Eigen::Index r = 0; r < dcode; ++r) {
      for (Eigen::Index v = 0; v < dv; ++v) {
        ps.psi.amplitudes((r * dv + v) * de + j) = image(v, r);
      }
    }
  }
  const double norm_sq = ps.psi.amplitudes.squaredNorm();
  if (norm_sq <= numeric.cutoff) {
    throw DegenerateError("purify: channel annihilates the code space");
  }
  ps.norm_in = norm_sq / static_cast<double>(dcode);
  ps.psi.amplitudes /= std::sqrt(norm_sq);
  return ps;
}

Matrix reference_environment_marginal(const PurifiedState& ps) {
  return reduced_density(ps.psi, {PurifiedState::kRA, PurifiedState::kRB,
                                  PurifiedState::kE});
}

ConditionReport check_condition_c(const PurifiedState& ps, double tol) {
  const Matrix joint = reference_environment_marginal(ps);
  ConditionCWitness w;
  w.rho_ra = reduced_density(ps.psi, {PurifiedState::kRA});
  w.rho_rbe = reduced_density(ps.psi, {PurifiedState::kRB, PurifiedState::kE});

  ConditionReport rep;
  rep.condition = Condition::c;
  rep.residual = (joint - kron(w.rho_ra, w.rho_rbe)).norm();
  rep.tol = tol;
  rep.pass = rep.residual <= tol;
  if (ps.norm_in < 1.0 - 1e-12) rep.notes.push_back("purified state renormalized");
  rep.witness = std::move(w);
  return rep;
}

ConditionReport check_condition_d(const PurifiedState& ps, double tol,
                                  const Tolerances& numeric) {
  ConditionDWitness w;
  w.s_a = std::log2(static_cast<double>(ps.dim_ra));
  w.s_v = marginal_entropy(ps, {PurifiedState::kV}, numeric);
  w.s_rbe = marginal_entropy(ps, {PurifiedState::kRB, PurifiedState::kE}, numeric);
  w.signed_gap = w.s_a - (w.s_v - w.s_rbe);

  ConditionReport rep;
  rep.condition = Condition::d;
  rep.residual = std::abs(w.signed_gap);
  rep.tol = tol;
  rep.pass = rep.residual <= tol;
  if (ps.norm_in < 1.0 - 1e-12) rep.notes.push_back("purified state renormalized");
  rep.witness = w;
  return rep;
}

double coherent_info(const Matrix& rho_rv, std::size_t dim_r, std::size_t dim_v,
                     const Tolerances& numeric) {
  if (static_cast<std::size_t>(rho_rv.rows()) != dim_r * dim_v ||
      rho_rv.rows() != rho_rv.cols()) {
    throw DimensionError("coherent_info: state side does not equal dim_r * dim_v");
  }
  const double s_rv = von_neumann_entropy(rho_rv, numeric);
  const double s_v = von_neumann_entropy(partial_trace(rho_rv, {dim_r, dim_v}, {1}),
                                         numeric);
  return s_v - s_rv;
}

Matrix initial_reference_state(const Decomposition& dec) {
  const auto da = static_cast<Eigen::Index>(dec.dim_a());
  const auto dv = static_cast<Eigen::Index>(dec.dim_v());
  Matrix rho = Matrix::Zero(da * dv, da * dv);
  for (std::size_t b = 0; b < dec.dim_b(); ++b) {
    const Matrix qa = dec.a_isometry_at(b);
    Vector phi(da * dv);
    for (Eigen::Index a = 0; a < da; ++a) phi.segment(a * dv, dv) = qa.col(a);
    rho += phi * phi.adjoint();
  }
  return rho / static_cast<double>(dec.dim_code());
}

DpiTrace dpi_trace(const Decomposition& dec, const std::vector<Channel>& chain,
                   double slack, const Tolerances& numeric) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    require_on_v(dec, chain[i]);
    if (!validate(chain[i], numeric).trace_preserving) {
      throw ContractViolation("dpi_trace: channel " + std::to_string(i) +
                              " is not trace preserving");
    }
  }
  const std::size_t da = dec.dim_a();
  const std::size_t dv = dec.dim_v();
  Matrix rho = initial_reference_state(dec);

  DpiTrace out;
  out.values.push_back(coherent_info(rho, da, dv, numeric));
  for (const auto& ch : chain) {
    rho = oqec::apply(extend_left(da, ch), rho);
    const double value = coherent_info(rho, da, dv, numeric);
    const double rise = value - out.values.back();
    out.max_increase = std::max(out.max_increase, rise);
    if (rise > slack) out.monotone = false;
    out.values.push_back(value);
  }
  return out;
}

}  // namespace oqec
