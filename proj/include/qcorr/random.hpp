#pragma once

#include <cstdint>
#include <random>

#include "qcorr/linalg.hpp"

namespace qcorr {

/// Seeded generator used for every random draw in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniform variates take the top 53 bits of each draw and normal
/// variates use the Box-Muller transform, so a seed produces the same numbers
/// on every conforming platform (std::normal_distribution gives no such
/// guarantee).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();

  /// Standard normal.
  double normal();

  /// Standard complex Gaussian: real and imaginary parts iid N(0, 1).
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Independent stream seed for item `index` of a run seeded with `seed`
/// (splitmix64 finalizer over both words).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Haar-distributed unitary of size n (QR of a complex Ginibre matrix with the
/// diagonal phases of R divided out).
ComplexMatrix random_unitary(Eigen::Index n, Rng& rng);

}  // namespace qcorr
