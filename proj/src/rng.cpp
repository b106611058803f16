#include "spdcsim/rng.hpp"

#include <cmath>

namespace spdcsim {

namespace {
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t state = master;
  std::uint64_t z = splitmix64(state);
  state = z ^ (stream * 0xda942042e4dd58b5ull + 0x2545f4914f6cdd1dull);
  return splitmix64(state);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal01(std::mt19937_64& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log1p(-u1)) *
         std::cos(2.0 * 3.141592653589793238 * u2);
}

std::uint64_t poisson_sample(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  if (mean <= 64.0) {
    // Knuth product method.
    const double threshold = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01(rng);
    } while (p > threshold);
    return k - 1;
  }
  const double g = mean + std::sqrt(mean) * normal01(rng);
  return g <= 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(g));
}

}  // namespace spdcsim
