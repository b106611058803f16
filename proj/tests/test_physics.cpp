#include <cmath>
#include <random>

#include "doctest.h"
#include "spdcsim/errors.hpp"
#include "spdcsim/math_util.hpp"
#include "spdcsim/physics.hpp"

using namespace spdcsim;

namespace {
SourceConfig default_cfg() { return SourceConfig{}; }
}

TEST_CASE("signal detuning from angles") {
  const SourceConfig cfg = default_cfg();
  CHECK(signal_detuning_from_angles(0.0, 0.0, cfg) == 0.0);
  // Anti-correlated angles sit at zero detuning.
  CHECK(signal_detuning_from_angles(1.8e-3, -1.8e-3, cfg) == doctest::Approx(0.0));
  // One gamma of idler shift is one nanometer.
  CHECK(signal_detuning_from_angles(0.0, 1.294e-4, cfg) == doctest::Approx(1.0));
}

TEST_CASE("signal detuning is linear and antisymmetric") {
  const SourceConfig cfg = default_cfg();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-5e-3, 5e-3);
  for (int i = 0; i < 200; ++i) {
    const double a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    const double lhs = signal_detuning_from_angles(a + c, b + e, cfg);
    const double rhs = signal_detuning_from_angles(a, b, cfg) +
                       signal_detuning_from_angles(c, e, cfg);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(signal_detuning_from_angles(-a, -b, cfg) ==
          doctest::Approx(-signal_detuning_from_angles(a, b, cfg)));
  }
}

TEST_CASE("spdc phase examples") {
  SourceConfig cfg = default_cfg();
  cfg.phi0 = 0.0;
  CHECK(spdc_phase({0.0, 0.0, 0.0}, cfg) == 0.0);
  CHECK(spdc_phase({1e-3, 1e-3, 0.0}, cfg) == doctest::Approx(0.0));
  // -(-250)(1e-3) + (-250)(-1e-3) = +0.5
  CHECK(spdc_phase({1e-3, -1e-3, 0.0}, cfg) == doctest::Approx(0.5));
}

TEST_CASE("spdc phase theta/theta' slopes are equal and opposite") {
  SourceConfig cfg = default_cfg();
  cfg.phi0 = 0.7;
  cfg.alpha_L = 2.1;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-4e-3, 4e-3);
  for (int i = 0; i < 200; ++i) {
    const double t = d(rng), tp = d(rng);
    const double swap_diff =
        spdc_phase({t, tp, 0.0}, cfg) - spdc_phase({tp, t, 0.0}, cfg);
    CHECK(swap_diff ==
          doctest::Approx(-2.0 * cfg.beta_L_over_gamma * (t - tp)).epsilon(1e-12));
  }
}

TEST_CASE("phase matching amplitude") {
  const SourceConfig cfg = default_cfg();
  SUBCASE("on-surface mismatch vanishes") {
    const AngularPoint p{1.3e-3, -0.4e-3, 0.0};
    CHECK(phase_matching_amplitude(p, cfg) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("first zero at u = pi") {
    const double theta = 3.141592653589793 / cfg.kappa_L;
    CHECK(std::fabs(phase_matching_amplitude(theta, 0.0, 0.0, cfg)) < 1e-12);
  }
  SUBCASE("u = pi/2 gives 2/pi") {
    const double theta = 0.5 * 3.141592653589793 / cfg.kappa_L;
    CHECK(phase_matching_amplitude(theta, 0.0, 0.0, cfg) ==
          doctest::Approx(2.0 / 3.141592653589793).epsilon(1e-12));
  }
  SUBCASE("bounded by 1, equality only at zero mismatch") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-8e-3, 8e-3);
    for (int i = 0; i < 300; ++i) {
      const double t = d(rng), tp = d(rng);
      const double f = phase_matching_amplitude(t, tp, 0.0, cfg);
      CHECK(f <= 1.0);
      if (std::fabs(cfg.kappa_L * (t + tp)) > 1e-3) CHECK(f < 1.0);
    }
  }
}

TEST_CASE("pump spectral density") {
  const SourceConfig cfg = default_cfg();
  const double peak = 2.0 * std::sqrt(std::log(2.0) / 3.141592653589793) / cfg.pump_fwhm;
  CHECK(pump_spectral_density(0.0, cfg) == doctest::Approx(peak).epsilon(1e-12));
  CHECK(pump_spectral_density(0.5 * cfg.pump_fwhm, cfg) ==
        doctest::Approx(0.5 * peak).epsilon(1e-12));
  CHECK(pump_spectral_density(-0.5 * cfg.pump_fwhm, cfg) ==
        doctest::Approx(0.5 * peak).epsilon(1e-12));

  SUBCASE("independent quadrature of the unit Gaussian") {
    // 401-node midpoint rule over the pump grid span integrates to 1.
    const int n = 401;
    const double half = 4.0 * cfg.pump_fwhm;
    const double h = 2.0 * half / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      sum += pump_spectral_density(-half + (i + 0.5) * h, cfg);
    CHECK(sum * h == doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("non-positive FWHM is a configuration error") {
    SourceConfig bad = cfg;
    bad.pump_fwhm = 0.0;
    CHECK_THROWS_AS(pump_spectral_density(0.0, bad), ConfigError);
  }
}

TEST_CASE("sinc helper") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(3.141592653589793) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sinc(1e-6) == doctest::Approx(1.0 - 1e-12 / 6.0));
  CHECK(sinc(2.0) == doctest::Approx(std::sin(2.0) / 2.0));
}
