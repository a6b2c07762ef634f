#pragma once

#include "latdim/linalg.hpp"

#include <cstdint>

namespace latdim {

// Counter-based generator: every variate is a pure function of
// (seed, stream, index), so draws do not depend on evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  // Uniform on (0, 1].
  double uniform(std::uint64_t index) const;
  // Standard normal (Box-Muller on two hashed uniforms).
  double normal(std::uint64_t index) const;

  Vector normal_vector(Eigen::Index dim, std::uint64_t offset = 0) const;
  Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t offset = 0) const;
  // Uniform on the unit sphere in R^dim.
  Vector unit_vector(Eigen::Index dim, std::uint64_t offset = 0) const;

  CounterRng substream(std::uint64_t s) const;

 private:
  std::uint64_t hash(std::uint64_t index) const;

  std::uint64_t seed_;
  std::uint64_t stream_;
};

// Haar-distributed orthogonal n x n matrix (QR of a Gaussian matrix with the
// sign correction on R's diagonal).
Matrix random_orthogonal(Eigen::Index n, const CounterRng& rng);

}  // namespace latdim
