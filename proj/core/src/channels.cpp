#include "oqec/channels.hpp"

#include <cmath>

#include "oqec/error.hpp"
#include "oqec/random.hpp"

namespace oqec {

Channel::Channel(std::size_t din, std::size_t dout, std::vector<Matrix> ops,
                 bool declared_trace_decreasing)
    : dim_in(din),
      dim_out(dout),
      kraus(std::move(ops)),
      trace_decreasing(declared_trace_decreasing) {
  if (kraus.empty()) throw DimensionError("channel: Kraus list is empty");
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    if (static_cast<std::size_t>(kraus[i].rows()) != dim_out ||
        static_cast<std::size_t>(kraus[i].cols()) != dim_in) {
      throw DimensionError("channel: Kraus operator " + std::to_string(i) + " is " +
                           std::to_string(kraus[i].rows()) + "x" +
                           std::to_string(kraus[i].cols()) + ", expected " +
                           std::to_string(dim_out) + "x" + std::to_string(dim_in));
    }
  }
}

bool Channel::operator==(const Channel& other) const {
  if (dim_in != other.dim_in || dim_out != other.dim_out ||
      trace_decreasing != other.trace_decreasing || kraus.size() != other.kraus.size()) {
    return false;
  }
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    if (kraus[i].rows() != other.kraus[i].rows() ||
        kraus[i].cols() != other.kraus[i].cols() || kraus[i] != other.kraus[i]) {
      return false;
    }
  }
  return true;
}

namespace {

Matrix completeness(const Channel& ch) {
  const auto d = static_cast<Eigen::Index>(ch.dim_in);
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : ch.kraus) sum += e.adjoint() * e;
  return sum;
}

void require_square_input(const Channel& ch, const Matrix& rho) {
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != ch.dim_in) {
    throw DimensionError("apply: state is " + std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + ", channel input dim " +
                         std::to_string(ch.dim_in));
  }
}

}  // namespace

ChannelValidation validate(const Channel& ch, const Tolerances& tol) {
  if (ch.kraus.empty()) throw DimensionError("validate: Kraus list is empty");
  for (const auto& e : ch.kraus) {
    if (static_cast<std::size_t>(e.rows()) != ch.dim_out ||
        static_cast<std::size_t>(e.cols()) != ch.dim_in) {
      throw DimensionError("validate: Kraus shapes are not uniform");
    }
  }
  const Matrix sum = completeness(ch);
  ChannelValidation out;
  out.defect = (sum - Matrix::Identity(sum.rows(), sum.cols())).norm();
  out.trace_preserving = out.defect <= tol.atol;
  out.trace_nonincreasing = eigvals_hermitian(sum, tol)(0) <= 1.0 + tol.atol;
  return out;
}

void require_admissible(const Channel& ch, const Tolerances& tol) {
  const auto v = validate(ch, tol);
  if (v.trace_preserving) return;
  if (!ch.trace_decreasing) {
    throw ContractViolation("channel is not trace preserving (defect " +
                            std::to_string(v.defect) +
                            ") and is not declared trace decreasing");
  }
  if (!v.trace_nonincreasing) {
    throw ContractViolation("channel is declared trace decreasing but increases trace");
  }
}

Matrix apply(const Channel& ch, const Matrix& rho) {
  require_square_input(ch, rho);
  const auto d = static_cast<Eigen::Index>(ch.dim_out);
  Matrix out = Matrix::Zero(d, d);
  for (const auto& e : ch.kraus) out += e * rho * e.adjoint();
  return out;
}

Matrix apply_to_factor(const Channel& ch, const Matrix& factor) {
  if (static_cast<std::size_t>(factor.rows()) != ch.dim_in) {
    throw DimensionError("apply_to_factor: factor has " + std::to_string(factor.rows()) +
                         " rows, channel input is " + std::to_string(ch.dim_in));
  }
  const auto r = factor.cols();
  Matrix out(static_cast<Eigen::Index>(ch.dim_out), r * static_cast<Eigen::Index>(ch.size()));
  for (std::size_t i = 0; i < ch.size(); ++i) {
    out.middleCols(static_cast<Eigen::Index>(i) * r, r).noalias() = ch.kraus[i] * factor;
  }
  return out;
}

Channel compose(const Channel& second, const Channel& first) {
  if (first.dim_out != second.dim_in) {
    throw DimensionError("compose: first.dim_out " + std::to_string(first.dim_out) +
                         " != second.dim_in " + std::to_string(second.dim_in));
  }
  std::vector<Matrix> ops;
  ops.reserve(second.size() * first.size());
  for (const auto& r : second.kraus) {
    for (const auto& e : first.kraus) ops.push_back(r * e);
  }
  return Channel(first.dim_in, second.dim_out, std::move(ops),
                 first.trace_decreasing || second.trace_decreasing);
}

Matrix choi(const Channel& ch) {
  const auto din = static_cast<Eigen::Index>(ch.dim_in);
  const auto dout = static_cast<Eigen::Index>(ch.dim_out);
  Matrix out = Matrix::Zero(din * dout, din * dout);
  Vector v(din * dout);
  for (const auto& e : ch.kraus) {
    for (Eigen::Index i = 0; i < din; ++i) v.segment(i * dout, dout) = e.col(i);
    out += v * v.adjoint();
  }
  return out;
}

double choi_distance(const Channel& a, const Channel& b) {
  if (a.dim_in != b.dim_in || a.dim_out != b.dim_out) {
    throw DimensionError("choi_distance: channel shapes differ");
  }
  return (choi(a) - choi(b)).norm();
}

Channel extend_left(std::size_t d, const Channel& ch) {
  std::vector<Matrix> ops;
  for (const auto& e : ch.kraus) ops.push_back(kron(identity(d), e));
  return Channel(d * ch.dim_in, d * ch.dim_out, std::move(ops), ch.trace_decreasing);
}

Channel extend_right(const Channel& ch, std::size_t d) {
  std::vector<Matrix> ops;
  for (const auto& e : ch.kraus) ops.push_back(kron(e, identity(d)));
  return Channel(ch.dim_in * d, ch.dim_out * d, std::move(ops), ch.trace_decreasing);
}

namespace pauli {

Matrix i2() { return Matrix::Identity(2, 2); }

Matrix x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Matrix z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix h() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Matrix string(std::string_view ops) {
  Matrix out = Matrix::Identity(1, 1);
  for (char c : ops) {
    switch (c) {
      case 'I': out = kron(out, i2()); break;
      case 'X': out = kron(out, x()); break;
      case 'Y': out = kron(out, y()); break;
      case 'Z': out = kron(out, z()); break;
      default: throw ParameterError(std::string("pauli string: bad symbol '") + c + "'");
    }
  }
  return out;
}

}  // namespace pauli

namespace noise {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(std::string(what) + ": probability " + std::to_string(p) +
                         " outside [0, 1]");
  }
}

Matrix tensor_power(const Matrix& u, std::size_t n) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < n; ++i) out = kron(out, u);
  return out;
}

Matrix on_site(std::size_t n, std::size_t site, const Matrix& op) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < n; ++i) out = kron(out, i == site ? op : pauli::i2());
  return out;
}

Channel single_pauli_mixture(double p, const Matrix& op) {
  require_probability(p, "pauli channel");
  return Channel(2, 2, {std::sqrt(1.0 - p) * pauli::i2(), std::sqrt(p) * op});
}

Channel restricted(std::size_t n, double p, const Matrix& op, const char* what) {
  require_probability(p, what);
  if (n == 0) throw ParameterError(std::string(what) + ": n must be >= 1");
  if (static_cast<double>(n) * p > 1.0 + 1e-15) {
    throw ParameterError(std::string(what) + ": n * p exceeds 1");
  }
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Matrix> ops;
  ops.push_back(std::sqrt(std::max(0.0, 1.0 - static_cast<double>(n) * p)) *
                oqec::identity(dim));
  for (std::size_t site = 0; site < n; ++site) {
    ops.push_back(std::sqrt(p) * on_site(n, site, op));
  }
  return Channel(dim, dim, std::move(ops));
}

}  // namespace

Channel identity(std::size_t d) {
  if (d == 0) throw ParameterError("identity: dimension must be >= 1");
  return Channel(d, d, {oqec::identity(d)});
}

Channel unitary(const Matrix& u, const Tolerances& tol) {
  if (u.rows() != u.cols()) throw DimensionError("unitary: matrix is not square");
  if ((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() > tol.atol) {
    throw ParameterError("unitary: matrix is not unitary");
  }
  const auto d = static_cast<std::size_t>(u.rows());
  return Channel(d, d, {u});
}

Channel bit_flip(double p) { return single_pauli_mixture(p, pauli::x()); }

Channel phase_flip(double p) { return single_pauli_mixture(p, pauli::z()); }

Channel depolarizing(std::size_t d, double p) {
  require_probability(p, "depolarizing");
  if (d == 0) throw ParameterError("depolarizing: dimension must be >= 1");
  // rho -> (1 - p) rho + p I/d, via the d^2 Weyl operators X^a Z^b.
  const auto n = static_cast<Eigen::Index>(d);
  Matrix shift = Matrix::Zero(n, n);
  Matrix clock = Matrix::Zero(n, n);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    shift((k + 1) % n, k) = 1.0;
    clock(k, k) = std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(d));
  }
  const double dd = static_cast<double>(d * d);
  std::vector<Matrix> ops;
  Matrix xa = oqec::identity(d);
  for (std::size_t a = 0; a < d; ++a) {
    Matrix zb = oqec::identity(d);
    for (std::size_t b = 0; b < d; ++b) {
      const double w = (a == 0 && b == 0) ? 1.0 - p + p / dd : p / dd;
      ops.push_back(std::sqrt(w) * xa * zb);
      zb = clock * zb;
    }
    xa = shift * xa;
  }
  return Channel(d, d, std::move(ops));
}

Channel single_qubit_on(std::size_t n, std::size_t site, const Channel& ch) {
  if (ch.dim_in != 2 || ch.dim_out != 2) {
    throw DimensionError("single_qubit_on: channel must act on one qubit");
  }
  if (site >= n) throw ParameterError("single_qubit_on: site out of range");
  std::vector<Matrix> ops;
  for (const auto& e : ch.kraus) ops.push_back(on_site(n, site, e));
  const std::size_t dim = std::size_t{1} << n;
  return Channel(dim, dim, std::move(ops), ch.trace_decreasing);
}

Channel restricted_flip(std::size_t n, double p) {
  return restricted(n, p, pauli::x(), "restricted_flip");
}

Channel restricted_phase_flip(std::size_t n, double p) {
  return restricted(n, p, pauli::z(), "restricted_phase_flip");
}

Channel collective_unitary(std::size_t n,
                           const std::vector<std::pair<double, Matrix>>& terms,
                           const Tolerances& tol) {
  if (terms.empty()) throw ParameterError("collective_unitary: no terms");
  double total = 0.0;
  std::vector<Matrix> ops;
  const auto d = terms.front().second.rows();
  for (const auto& [w, u] : terms) {
    require_probability(w, "collective_unitary weight");
    if (u.rows() != d || u.cols() != d) {
      throw DimensionError("collective_unitary: unitaries differ in size");
    }
    if ((u.adjoint() * u - Matrix::Identity(d, d)).norm() > tol.atol) {
      throw ParameterError("collective_unitary: term is not unitary");
    }
    total += w;
    ops.push_back(std::sqrt(w) * tensor_power(u, n));
  }
  if (std::abs(total - 1.0) > tol.atol) {
    throw ParameterError("collective_unitary: weights sum to " + std::to_string(total));
  }
  const auto dim = static_cast<std::size_t>(ops.front().rows());
  return Channel(dim, dim, std::move(ops));
}

Channel random_channel(std::size_t d, std::size_t k, std::uint64_t seed) {
  if (d == 0 || k == 0) throw ParameterError("random_channel: d and k must be >= 1");
  Rng rng(seed);
  const Matrix iso = polar_isometry(ginibre(k * d, d, rng));
  std::vector<Matrix> ops;
  const auto n = static_cast<Eigen::Index>(d);
  for (std::size_t i = 0; i < k; ++i) {
    ops.push_back(iso.middleRows(static_cast<Eigen::Index>(i) * n, n));
  }
  return Channel(d, d, std::move(ops));
}

}  // namespace noise

}  // namespace oqec
