#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "spdcsim/density_matrix.hpp"
#include "spdcsim/rng.hpp"

using namespace spdcsim;

namespace {

constexpr double kPi = 3.141592653589793238;

PolarizationDensityMatrix random_density_matrix(std::mt19937_64& rng) {
  Eigen::Matrix4cd t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t(i, j) = {normal01(rng), normal01(rng)};
  Eigen::Matrix4cd s = t.adjoint() * t;
  s /= s.trace().real();
  return PolarizationDensityMatrix(0.5 * (s + s.adjoint().eval()));
}

}  // namespace

TEST_CASE("source-family density matrices") {
  SUBCASE("C = 1 is the Phi+ projector") {
    const auto rho = PolarizationDensityMatrix::from_coherence(1.0);
    CHECK(fidelity(rho, bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
    const auto ev = rho.eigenvalues();
    CHECK(ev[3] == doctest::Approx(1.0));
    CHECK(ev[2] == doctest::Approx(0.0));
  }
  SUBCASE("C = i is Phi_{pi/2} with a purely imaginary off-diagonal") {
    const auto rho =
        PolarizationDensityMatrix::from_coherence(std::complex<double>(0, 1));
    CHECK(rho(0, 3).real() == 0.0);
    CHECK(rho(0, 3).imag() == doctest::Approx(-0.5));
    CHECK(rho(3, 0).imag() == doctest::Approx(0.5));
    CHECK(fidelity(rho, phi_state(kPi / 2.0)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("C = 0 is the equal HH/VV mixture") {
    const auto rho = PolarizationDensityMatrix::from_coherence(0.0);
    const auto ev = rho.eigenvalues();
    CHECK(ev[0] == doctest::Approx(0.0));
    CHECK(ev[1] == doctest::Approx(0.0));
    CHECK(ev[2] == doctest::Approx(0.5));
    CHECK(ev[3] == doctest::Approx(0.5));
  }
}

TEST_CASE("coincidence probability on the source family") {
  const auto bell = PolarizationDensityMatrix::from_coherence(1.0);
  CHECK(coincidence_probability(bell, kPi / 4, -kPi / 4) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(coincidence_probability(bell, kPi / 4, kPi / 4) ==
        doctest::Approx(0.5).epsilon(1e-12));

  SUBCASE("fringe law (1 - cos b)/4 at crossed analyzers") {
    for (double b : {0.0, 0.3, 1.1, kPi / 2, 2.0, kPi, 4.5}) {
      const auto rho = PolarizationDensityMatrix::from_coherence(
          std::exp(std::complex<double>(0.0, b)));
      CHECK(coincidence_probability(rho, kPi / 4, -kPi / 4) ==
            doctest::Approx((1.0 - std::cos(b)) / 4.0).epsilon(1e-12));
    }
  }

  SUBCASE("matches the explicit projector quadratic form") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ang(0.0, kPi);
    for (int i = 0; i < 50; ++i) {
      const double c_re = std::cos(i * 0.37), c_im = std::sin(i * 0.21) * 0.5;
      const std::complex<double> c(c_re * 0.8, c_im);
      const auto rho = PolarizationDensityMatrix::from_coherence(c);
      const double a1 = ang(rng), a2 = ang(rng);
      const double c1 = std::cos(a1), s1 = std::sin(a1);
      const double c2 = std::cos(a2), s2 = std::sin(a2);
      const double expected = 0.5 * c1 * c1 * c2 * c2 + 0.5 * s1 * s1 * s2 * s2 +
                              c.real() * c1 * c2 * s1 * s2;
      CHECK(coincidence_probability(rho, a1, a2) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("polarizer completeness sums to one") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> ang(0.0, kPi);
  for (int i = 0; i < 40; ++i) {
    const auto rho = random_density_matrix(rng);
    const double a = ang(rng), b = ang(rng);
    const double total = coincidence_probability(rho, a, b) +
                         coincidence_probability(rho, a + kPi / 2, b) +
                         coincidence_probability(rho, a, b + kPi / 2) +
                         coincidence_probability(rho, a + kPi / 2, b + kPi / 2);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("fidelity") {
  const auto bell = PolarizationDensityMatrix::pure(bell_phi_plus());
  CHECK(fidelity(bell, bell_phi_plus()) == doctest::Approx(1.0));
  const PolarizationDensityMatrix mixed;  // I/4
  CHECK(fidelity(mixed, bell_phi_minus()) == doctest::Approx(0.25));

  SUBCASE("invariant under a global phase of the target") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i) {
      const auto rho = random_density_matrix(rng);
      const Eigen::Vector4cd t = phi_state(0.77);
      const double phase = 2.0 * kPi * uniform01(rng);
      const Eigen::Vector4cd t2 = std::exp(std::complex<double>(0, phase)) * t;
      CHECK(fidelity(rho, t) == doctest::Approx(fidelity(rho, t2)).epsilon(1e-12));
    }
  }
}

TEST_CASE("trace distance") {
  const auto plus = PolarizationDensityMatrix::pure(bell_phi_plus());
  const auto minus = PolarizationDensityMatrix::pure(bell_phi_minus());
  CHECK(trace_distance(plus, plus) == doctest::Approx(0.0));
  CHECK(trace_distance(plus, minus) == doctest::Approx(1.0));
}

TEST_CASE("require_valid catches broken matrices") {
  Eigen::Matrix4cd bad = Eigen::Matrix4cd::Zero();
  bad(0, 0) = 1.5;  // trace != 1
  CHECK_THROWS(PolarizationDensityMatrix(bad).require_valid());
  Eigen::Matrix4cd negative = Eigen::Matrix4cd::Identity() * 0.5;
  negative(3, 3) = -0.5;
  CHECK_THROWS(PolarizationDensityMatrix(negative).require_valid());
}
