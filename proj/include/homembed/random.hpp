#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace homembed {

/// Seeded random stream with platform-independent output.
///
/// The std:: distributions are implementation-defined, so banks sampled
/// through them would differ between standard libraries. Only the engine
/// (whose sequence is fixed by the standard) is taken from <random>.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound). `bound` must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  bool bernoulli(double p) { return p >= 1.0 || uniform01() < p; }

  /// Knuth's multiplication method; exact for the small rates used here.
  std::uint64_t poisson(double lambda);

private:
  std::mt19937_64 engine_;
};

}  // namespace homembed
