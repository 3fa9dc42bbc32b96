#pragma once

#include <cstdint>
#include <random>

#include "oqec/tensor.hpp"

namespace oqec {

// Seeded generator whose outputs are identical on every platform: the
// engine is fully specified by the standard and the floating-point
// transforms below avoid the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double normal();   // standard Gaussian
  cplx complex_normal();
  std::size_t index(std::size_t n);  // uniform in [0, n)

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
Matrix random_unitary(std::size_t d, Rng& rng);
Matrix random_su2(Rng& rng);
Vector random_pure_state(std::size_t d, Rng& rng);
Matrix random_density(std::size_t d, Rng& rng);

}  // namespace oqec
