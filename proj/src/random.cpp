#include "homembed/random.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace homembed {

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_index bound must be positive");
  // Rejection sampling on the largest multiple of bound.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::poisson(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("poisson rate must be finite and non-negative");
  }
  if (lambda > 700.0) throw std::invalid_argument("poisson rate too large for multiplication method");
  const double threshold = std::exp(-lambda);
  std::uint64_t k = 0;
  double product = uniform01();
  while (product > threshold) {
    ++k;
    product *= uniform01();
  }
  return k;
}

}  // namespace homembed
