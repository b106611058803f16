#pragma once

#include <cstdint>
#include <random>

namespace spdcsim {

/// Independent stream seed derived from a master seed (splitmix64), so
/// per-resample streams do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Uniform in [0, 1) from the engine's top 53 bits.
double uniform01(std::mt19937_64& rng);

/// Standard normal via Box-Muller; implementation-independent.
double normal01(std::mt19937_64& rng);

/// Poisson sample: Knuth product method for small means, rounded Gaussian
/// approximation above (mean > 64).
std::uint64_t poisson_sample(std::mt19937_64& rng, double mean);

}  // namespace spdcsim
