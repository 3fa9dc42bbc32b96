#pragma once

#include <optional>

#include "oqec/tensor.hpp"

namespace oqec {

// V = (A (x) B) (+) C. In the canonical layout, coordinate a*dim_b + b of the
// frame-rotated basis is |a>_A|b>_B and the last dim_c coordinates span C.
// A frame, when present, is the unitary whose columns are that basis
// expressed in the physical basis of V.
class Decomposition {
 public:
  Decomposition(std::size_t dim_a, std::size_t dim_b, std::size_t dim_c,
                std::optional<Matrix> frame = std::nullopt,
                const Tolerances& tol = {});

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::size_t dim_c() const { return dim_c_; }
  std::size_t dim_code() const { return dim_a_ * dim_b_; }
  std::size_t dim_v() const { return dim_a_ * dim_b_ + dim_c_; }
  const std::optional<Matrix>& frame() const { return frame_; }

  // dV x dim_a*dim_b isometry onto A (x) B; column a*dim_b + b is |a,b>.
  const Matrix& code_isometry() const { return code_; }

  // dV x dim_a isometry |a> -> |a>_A |b>_B for fixed b.
  Matrix a_isometry_at(std::size_t b) const;

  bool operator==(const Decomposition& other) const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  std::size_t dim_c_;
  std::optional<Matrix> frame_;
  Matrix code_;
};

Matrix projector_p(const Decomposition& dec);

Matrix embed_state(const Decomposition& dec, const Matrix& rho_a,
                   const Matrix& sigma_b, const Tolerances& tol = {});

// Logical A state of an operator on V: restrict to the A (x) B block in
// canonical coordinates and trace out B. Throws SupportError if the
// weight outside A (x) B exceeds tol.atol.
Matrix extract_a(const Decomposition& dec, const Matrix& rho_v,
                 const Tolerances& tol = {});

// Same reduction without the support check, and the B-side counterpart.
Matrix restrict_to_a(const Decomposition& dec, const Matrix& op_v);
Matrix restrict_to_b(const Decomposition& dec, const Matrix& op_v);

// Frobenius norm of (I - P) rho (I - P).
double support_leakage(const Decomposition& dec, const Matrix& rho_v);

}  // namespace oqec
