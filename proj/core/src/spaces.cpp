#include "oqec/spaces.hpp"

#include "oqec/error.hpp"

namespace oqec {

namespace {

void require_density(const Matrix& m, std::size_t dim, const char* what,
                     const Tolerances& tol) {
  if (static_cast<std::size_t>(m.rows()) != dim || m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a " + std::to_string(dim) +
                         "-square matrix");
  }
  if (hermiticity_defect(m) > tol.atol || std::abs(m.trace() - 1.0) > tol.atol ||
      eigvals_hermitian(m, tol).minCoeff() < -tol.atol) {
    throw NotAStateError(std::string(what) + " is not a density matrix");
  }
}

}  // namespace

Decomposition::Decomposition(std::size_t dim_a, std::size_t dim_b,
                             std::size_t dim_c, std::optional<Matrix> frame,
                             const Tolerances& tol)
    : dim_a_(dim_a), dim_b_(dim_b), dim_c_(dim_c), frame_(std::move(frame)) {
  if (dim_a_ < 1 || dim_b_ < 1) {
    throw ParameterError("decomposition: dim_a and dim_b must be >= 1");
  }
  const auto dv = static_cast<Eigen::Index>(dim_v());
  const auto dcode = static_cast<Eigen::Index>(dim_code());
  if (frame_) {
    if (frame_->rows() != dv || frame_->cols() != dv) {
      throw DimensionError("decomposition: frame must be " + std::to_string(dv) +
                           "-square");
    }
    const double defect = (frame_->adjoint() * *frame_ - Matrix::Identity(dv, dv)).norm();
    if (defect > tol.atol) {
      throw ParameterError("decomposition: frame is not unitary (defect " +
                           std::to_string(defect) + ")");
    }
    code_ = frame_->leftCols(dcode);
  } else {
    code_ = Matrix::Identity(dv, dcode);
  }
}

Matrix Decomposition::a_isometry_at(std::size_t b) const {
  const auto da = static_cast<Eigen::Index>(dim_a_);
  const auto db = static_cast<Eigen::Index>(dim_b_);
  Matrix out(code_.rows(), da);
  for (Eigen::Index a = 0; a < da; ++a) {
    out.col(a) = code_.col(a * db + static_cast<Eigen::Index>(b));
  }
  return out;
}

bool Decomposition::operator==(const Decomposition& other) const {
  if (dim_a_ != other.dim_a_ || dim_b_ != other.dim_b_ || dim_c_ != other.dim_c_) {
    return false;
  }
  if (frame_.has_value() != other.frame_.has_value()) return false;
  return !frame_ || *frame_ == *other.frame_;
}

Matrix projector_p(const Decomposition& dec) {
  const Matrix& q = dec.code_isometry();
  return q * q.adjoint();
}

Matrix embed_state(const Decomposition& dec, const Matrix& rho_a,
                   const Matrix& sigma_b, const Tolerances& tol) {
  require_density(rho_a, dec.dim_a(), "embed_state: rho_a", tol);
  require_density(sigma_b, dec.dim_b(), "embed_state: sigma_b", tol);
  const Matrix& q = dec.code_isometry();
  return q * kron(rho_a, sigma_b) * q.adjoint();
}

Matrix restrict_to_a(const Decomposition& dec, const Matrix& op_v) {
  const Matrix& q = dec.code_isometry();
  const Matrix block = q.adjoint() * op_v * q;
  return partial_trace(block, {dec.dim_a(), dec.dim_b()}, {0});
}

Matrix restrict_to_b(const Decomposition& dec, const Matrix& op_v) {
  const Matrix& q = dec.code_isometry();
  const Matrix block = q.adjoint() * op_v * q;
  return partial_trace(block, {dec.dim_a(), dec.dim_b()}, {1});
}

double support_leakage(const Decomposition& dec, const Matrix& rho_v) {
  const auto dv = static_cast<Eigen::Index>(dec.dim_v());
  const Matrix comp = Matrix::Identity(dv, dv) - projector_p(dec);
  return (comp * rho_v * comp).norm();
}

Matrix extract_a(const Decomposition& dec, const Matrix& rho_v,
                 const Tolerances& tol) {
  if (static_cast<std::size_t>(rho_v.rows()) != dec.dim_v() ||
      rho_v.rows() != rho_v.cols()) {
    throw DimensionError("extract_a: expected a " + std::to_string(dec.dim_v()) +
                         "-square matrix");
  }
  const double leak = support_leakage(dec, rho_v);
  if (leak > tol.atol) {
    throw SupportError("extract_a: state leaks outside A(x)B (" +
                       std::to_string(leak) + ")");
  }
  return restrict_to_a(dec, rho_v);
}

}  // namespace oqec
