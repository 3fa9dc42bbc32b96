#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace oqec {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numeric thresholds. `cutoff` drops eigenvalues / Schmidt coefficients,
// `atol` decides pass/fail and input validation.
struct Tolerances {
  double cutoff = 1e-12;
  double atol = 1e-9;
};

// Amplitudes over an ordered list of subsystems, flattened row-major:
// the composite index of (i_0, ..., i_{n-1}) is ((i_0 d_1 + i_1) d_2 + ...).
struct StateVector {
  std::vector<std::size_t> dims;
  Vector amplitudes;

  std::size_t total_dim() const;
  double norm() const { return amplitudes.norm(); }
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron(std::span<const Matrix> factors);
Vector kron(const Vector& a, const Vector& b);

Matrix identity(std::size_t d);

// Reduces a square operator on prod(dims) to the factors listed in `keep`.
// Kept factors appear in ascending index order in the result.
Matrix partial_trace(const Matrix& m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep);
Matrix partial_trace(const Matrix& m, std::initializer_list<std::size_t> dims,
                     std::initializer_list<std::size_t> keep);

// |v><v| reduced to `keep`, computed without forming the full projector.
Matrix reduced_density(const StateVector& v, std::span<const std::size_t> keep);
Matrix reduced_density(const StateVector& v,
                       std::initializer_list<std::size_t> keep);

double hermiticity_defect(const Matrix& m);

struct HermitianEigen {
  RealVector values;  // descending
  Matrix vectors;     // columns, orthonormal, phase-fixed
};

// Hermitian eigendecomposition with deterministic output. Each column has
// its first component of magnitude > 1e-12 real and nonnegative. Within a
// degenerate cluster the basis is the Gram-Schmidt projection of the
// standard basis in index order, so the result does not depend on the
// solver's arbitrary choice inside the eigenspace.
HermitianEigen eig_hermitian(const Matrix& m, const Tolerances& tol = {});

// Eigenvalues only (descending); skips the canonicalization work.
RealVector eigvals_hermitian(const Matrix& m, const Tolerances& tol = {});

struct Schmidt {
  std::vector<double> coeffs;  // descending, all > cutoff
  Matrix left;                 // dim_left x rank
  Matrix right;                // dim_right x rank
};

Schmidt schmidt(const StateVector& v, std::size_t dim_left,
                std::size_t dim_right, const Tolerances& tol = {});

// Entropy in bits.
double von_neumann_entropy(const Matrix& rho, const Tolerances& tol = {});
double entropy_of_spectrum(const RealVector& values, double cutoff = 1e-12);

// Multiplies v by a unit phase so its first significant entry is real >= 0.
void fix_phase(Eigen::Ref<Vector> v, double threshold = 1e-12);

// Orthonormal basis of the orthogonal complement of the column span of an
// isometry `y` (dim x n), deterministically ordered.
Matrix orthogonal_complement(const Matrix& y);

// Nearest isometry (polar factor) of a full-column-rank matrix.
Matrix polar_isometry(const Matrix& m);

}  // namespace oqec
