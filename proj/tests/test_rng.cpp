#include <cmath>

#include "doctest.h"
#include "spdcsim/rng.hpp"

using namespace spdcsim;

TEST_CASE("seed derivation distinguishes streams and repeats itself") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("uniform01 stays in [0, 1)") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal01 has unit moments") {
  std::mt19937_64 rng(7);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = normal01(rng);
    sum += z;
    sum2 += z * z;
  }
  CHECK(sum / n == doctest::Approx(0.0).epsilon(1.0));
  CHECK(std::fabs(sum / n) < 0.01);
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("poisson sampler moments") {
  auto moments = [](double mean, int n) {
    std::mt19937_64 rng(13);
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(poisson_sample(rng, mean));
      s += k;
      s2 += k * k;
    }
    const double m = s / n;
    return std::pair{m, s2 / n - m * m};
  };

  SUBCASE("small mean (product method)") {
    const auto [m, v] = moments(3.0, 100000);
    CHECK(m == doctest::Approx(3.0).epsilon(0.02));
    CHECK(v == doctest::Approx(3.0).epsilon(0.05));
  }
  SUBCASE("large mean (Gaussian branch)") {
    const auto [m, v] = moments(900.0, 50000);
    CHECK(m == doctest::Approx(900.0).epsilon(0.002));
    CHECK(v == doctest::Approx(900.0).epsilon(0.05));
  }
  SUBCASE("edge cases") {
    std::mt19937_64 rng(1);
    CHECK(poisson_sample(rng, 0.0) == 0);
    CHECK(poisson_sample(rng, -1.0) == 0);
  }
}

TEST_CASE("fixed seeds reproduce sequences") {
  std::mt19937_64 a(derive_seed(42, 5)), b(derive_seed(42, 5));
  for (int i = 0; i < 100; ++i) CHECK(poisson_sample(a, 37.5) == poisson_sample(b, 37.5));
}
