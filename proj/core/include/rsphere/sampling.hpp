#pragma once

#include <random>

#include "rsphere/projection.hpp"

namespace rsphere {

/// Deterministic random inputs for tests, benchmarks and the CLI self-test.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  /// Entries with independent standard normal real and imaginary parts.
  ComplexMatrix gaussian(Eigen::Index rows, Eigen::Index cols);
  /// Haar-distributed unitary (QR of a Gaussian matrix, phases fixed).
  ComplexMatrix unitary(Eigen::Index n);
  /// Gaussian n x n matrix rescaled to operator norm `norm`.
  ComplexMatrix block_with_norm(Eigen::Index n, double norm);
  /// Hermitian matrix with the given spectrum in a random basis.
  ComplexMatrix hermitian_with_spectrum(const RealVector &spectrum);
  /// u p0 u* for a Haar unitary u of size 2n.
  SphereProjection projection(Eigen::Index n);

  std::mt19937_64 &engine() noexcept { return engine_; }

private:
  std::mt19937_64 engine_;
};

} // namespace rsphere
