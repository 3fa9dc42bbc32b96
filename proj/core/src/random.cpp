#include "oqec/random.hpp"

#include <cmath>
#include <numbers>

namespace oqec {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2, im * std::numbers::sqrt2 / 2};
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.complex_normal();
  }
  return g;
}

Matrix random_unitary(std::size_t d, Rng& rng) {
  // QR of a Ginibre matrix with the diagonal phases of R divided out is Haar.
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Matrix random_su2(Rng& rng) {
  Matrix u = random_unitary(2, rng);
  u /= std::sqrt(u.determinant());
  return u;
}

Vector random_pure_state(std::size_t d, Rng& rng) {
  Vector v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

Matrix random_density(std::size_t d, Rng& rng) {
  const Matrix g = ginibre(d, d, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace oqec
