#pragma once

#include <cstdint>
#include <limits>

namespace recordlab {

// Stateless 64-bit mixer (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t x);

// Derives an independent seed for a sub-stream identified by `tag`.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag);

// xoshiro256++ keyed by (seed, stream). Each stream is a separate generator so
// path i of a simulation draws the same numbers regardless of thread layout.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on the open interval (0, 1).
  double uniform();

  // Standard normal by the polar method (portable across standard libraries).
  double normal();

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace recordlab
