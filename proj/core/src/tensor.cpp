#include "oqec/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oqec/error.hpp"

namespace oqec {

std::size_t StateVector::total_dim() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron(std::span<const Matrix> factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Matrix identity(std::size_t d) {
  return Matrix::Identity(static_cast<Eigen::Index>(d),
                          static_cast<Eigen::Index>(d));
}

namespace {

// Offsets of every composite index over `which` factors, embedded in the
// full row-major index space of `dims`.
std::vector<Eigen::Index> factor_offsets(std::span<const std::size_t> dims,
                                         const std::vector<std::size_t>& which) {
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  std::vector<Eigen::Index> offsets{0};
  for (std::size_t f : which) {
    std::vector<Eigen::Index> next;
    next.reserve(offsets.size() * dims[f]);
    for (Eigen::Index base : offsets) {
      for (std::size_t d = 0; d < dims[f]; ++d) {
        next.push_back(base + static_cast<Eigen::Index>(d * stride[f]));
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

struct Split {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
};

Split split_factors(std::span<const std::size_t> dims,
                    std::span<const std::size_t> keep) {
  std::vector<bool> is_kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) {
      throw DimensionError("partial trace: kept factor " + std::to_string(k) +
                           " out of range");
    }
    is_kept[k] = true;
  }
  Split s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    (is_kept[i] ? s.kept : s.traced).push_back(i);
  }
  return s;
}

}  // namespace

Matrix partial_trace(const Matrix& m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep) {
  const auto total = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                                     std::multiplies<>());
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != total) {
    throw DimensionError("partial trace: matrix side " + std::to_string(m.rows()) +
                         " does not match product of dims " +
                         std::to_string(total));
  }
  const auto s = split_factors(dims, keep);
  const auto kept = factor_offsets(dims, s.kept);
  const auto traced = factor_offsets(dims, s.traced);

  const auto n = static_cast<Eigen::Index>(kept.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      cplx acc = 0.0;
      for (Eigen::Index t : traced) acc += m(kept[r] + t, kept[c] + t);
      out(r, c) = acc;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, std::initializer_list<std::size_t> dims,
                     std::initializer_list<std::size_t> keep) {
  return partial_trace(m, std::span<const std::size_t>(dims.begin(), dims.size()),
                       std::span<const std::size_t>(keep.begin(), keep.size()));
}

Matrix reduced_density(const StateVector& v, std::span<const std::size_t> keep) {
  if (static_cast<std::size_t>(v.amplitudes.size()) != v.total_dim()) {
    throw DimensionError("state vector: amplitude count does not match dims");
  }
  const auto s = split_factors(v.dims, keep);
  const auto kept = factor_offsets(v.dims, s.kept);
  const auto traced = factor_offsets(v.dims, s.traced);

  Matrix reshaped(static_cast<Eigen::Index>(kept.size()),
                  static_cast<Eigen::Index>(traced.size()));
  for (std::size_t r = 0; r < kept.size(); ++r) {
    for (std::size_t c = 0; c < traced.size(); ++c) {
      reshaped(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          v.amplitudes(kept[r] + traced[c]);
    }
  }
  return reshaped * reshaped.adjoint();
}

Matrix reduced_density(const StateVector& v,
                       std::initializer_list<std::size_t> keep) {
  return reduced_density(v, std::span<const std::size_t>(keep.begin(), keep.size()));
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm();
}

void fix_phase(Eigen::Ref<Vector> v, double threshold) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > threshold) {
      v *= std::conj(v(i)) / mag;
      v(i) = mag;
      return;
    }
  }
}

namespace {

void require_hermitian(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw ContractViolation("eig_hermitian: matrix is not square");
  }
  const double scale = std::max(1.0, m.norm());
  if (hermiticity_defect(m) > tol.atol * scale) {
    throw ContractViolation("eig_hermitian: matrix is not Hermitian");
  }
}

// Lexicographic order on phase-fixed vectors: larger real part first, then
// larger imaginary part, component by component.
bool lex_before(const Vector& a, const Vector& b) {
  constexpr double eps = 1e-12;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > eps) return a(i).real() > b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > eps) return a(i).imag() > b(i).imag();
  }
  return false;
}

// Replaces the columns of `block` (an orthonormal basis of one eigenspace)
// by the Gram-Schmidt projection of e_0, e_1, ... onto that eigenspace.
Matrix canonical_eigenspace_basis(const Matrix& block) {
  const Eigen::Index n = block.rows();
  const Eigen::Index m = block.cols();
  Matrix out(n, m);
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < n && found < m; ++i) {
    // Projection of e_i onto the eigenspace is block * block(i,:)^dagger.
    Vector v = block * block.row(i).adjoint();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < found; ++k) {
        v -= out.col(k) * out.col(k).dot(v);
      }
    }
    const double nv = v.norm();
    if (nv > 1e-6) {
      out.col(found++) = v / nv;
    }
  }
  if (found < m) return block;  // pathological conditioning; keep solver basis
  return out;
}

}  // namespace

HermitianEigen eig_hermitian(const Matrix& m, const Tolerances& tol) {
  require_hermitian(m, tol);
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("eig_hermitian: eigensolver did not converge");
  }
  const Eigen::Index n = h.rows();
  HermitianEigen out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();

  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  const double degeneracy = 1e-10 * scale;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && out.values(end - 1) - out.values(end) <= degeneracy) ++end;
    const Eigen::Index width = end - start;
    if (width > 1) {
      Matrix basis = canonical_eigenspace_basis(out.vectors.middleCols(start, width));
      std::vector<Vector> cols;
      for (Eigen::Index k = 0; k < width; ++k) {
        Vector c = basis.col(k);
        fix_phase(c, tol.cutoff);
        cols.push_back(std::move(c));
      }
      std::stable_sort(cols.begin(), cols.end(), lex_before);
      for (Eigen::Index k = 0; k < width; ++k) out.vectors.col(start + k) = cols[k];
    } else {
      fix_phase(out.vectors.col(start), tol.cutoff);
    }
    start = end;
  }
  return out;
}

RealVector eigvals_hermitian(const Matrix& m, const Tolerances& tol) {
  require_hermitian(m, tol);
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("eigvals_hermitian: eigensolver did not converge");
  }
  return solver.eigenvalues().reverse();
}

Schmidt schmidt(const StateVector& v, std::size_t dim_left, std::size_t dim_right,
                const Tolerances& tol) {
  if (static_cast<std::size_t>(v.amplitudes.size()) != dim_left * dim_right) {
    throw DimensionError("schmidt: amplitude count " +
                         std::to_string(v.amplitudes.size()) + " != " +
                         std::to_string(dim_left) + " x " + std::to_string(dim_right));
  }
  const auto dl = static_cast<Eigen::Index>(dim_left);
  const auto dr = static_cast<Eigen::Index>(dim_right);
  Matrix reshaped(dl, dr);
  for (Eigen::Index i = 0; i < dl; ++i) {
    for (Eigen::Index j = 0; j < dr; ++j) reshaped(i, j) = v.amplitudes(i * dr + j);
  }
  Eigen::BDCSVD<Matrix> svd(reshaped, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();

  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol.cutoff) ++rank;

  Schmidt out;
  out.left = svd.matrixU().leftCols(rank);
  out.right = svd.matrixV().leftCols(rank).conjugate();
  for (Eigen::Index i = 0; i < rank; ++i) {
    out.coeffs.push_back(s(i));
    Vector l = out.left.col(i);
    const Vector before = l;
    fix_phase(l, tol.cutoff);
    // l = before * phase; compensate on the right factor.
    Eigen::Index lead = 0;
    while (lead < l.size() && std::abs(before(lead)) <= tol.cutoff) ++lead;
    const cplx phase = l(lead) / before(lead);
    out.left.col(i) = l;
    out.right.col(i) *= std::conj(phase);
  }
  return out;
}

double entropy_of_spectrum(const RealVector& values, double cutoff) {
  double s = 0.0;
  for (double lam : values) {
    if (lam > cutoff) s -= lam * std::log2(lam);
  }
  return s;
}

double von_neumann_entropy(const Matrix& rho, const Tolerances& tol) {
  if (rho.rows() != rho.cols()) throw NotAStateError("entropy: matrix is not square");
  if (hermiticity_defect(rho) > tol.atol) {
    throw NotAStateError("entropy: matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > tol.atol) {
    throw NotAStateError("entropy: trace is not 1");
  }
  const RealVector values = eigvals_hermitian(rho, tol);
  if (values.minCoeff() < -tol.atol) {
    throw NotAStateError("entropy: negative eigenvalue " +
                         std::to_string(values.minCoeff()));
  }
  return entropy_of_spectrum(values, tol.cutoff);
}

Matrix orthogonal_complement(const Matrix& y) {
  const Eigen::Index dim = y.rows();
  const Eigen::Index n = y.cols();
  if (n == 0) return Matrix::Identity(dim, dim);
  if (n >= dim) return Matrix(dim, 0);
  Eigen::HouseholderQR<Matrix> qr(y);
  const Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  Matrix comp = q.rightCols(dim - n);
  for (Eigen::Index k = 0; k < comp.cols(); ++k) fix_phase(comp.col(k));
  return comp;
}

Matrix polar_isometry(const Matrix& m) {
  if (m.cols() == 0) return m;
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace oqec
