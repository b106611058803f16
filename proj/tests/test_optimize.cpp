#include <cmath>

#include "doctest.h"
#include "spdcsim/coherence.hpp"
#include "spdcsim/errors.hpp"
#include "spdcsim/optimize.hpp"

using namespace spdcsim;

namespace {

constexpr double kPi = 3.141592653589793238;

SourceConfig bench_cfg() {
  SourceConfig cfg;
  cfg.phi0 = 1.1;
  cfg.kappa_L = 1024.0;
  cfg.mu_spatial = 0.9;
  return cfg;
}

double wrapped_distance(double a, double b) {
  double d = std::fmod(a - b, 2.0 * kPi);
  if (d < -kPi) d += 2.0 * kPi;
  if (d > kPi) d -= 2.0 * kPi;
  return std::fabs(d);
}

}  // namespace

TEST_CASE("optimization recovers the analytic optimum from a zero start") {
  const SourceConfig cfg = bench_cfg();
  const OptimizeResult result = optimize_program(cfg, SlmProgram{});
  const SlmProgram expected = analytic_optimum(cfg);

  CHECK(result.converged);
  CHECK(std::fabs(result.program.a1 - expected.a1) <= 0.005);
  CHECK(std::fabs(result.program.a2 + result.program.a1) < 1e-12);
  CHECK(wrapped_distance(result.program.b1 + result.program.b2, cfg.phi0) <= 0.02);

  SUBCASE("optimum beats every trace sample") {
    for (const auto& trace : result.traces)
      for (const auto& s : trace.samples)
        CHECK(result.objective <= s.coincidence + 1e-12);
  }

  SUBCASE("b1 trace is a 2-pi sinusoid") {
    const SweepTrace* b_trace = nullptr;
    for (const auto& t : result.traces)
      if (t.parameter == "b1") {
        b_trace = &t;
        break;
      }
    REQUIRE(b_trace != nullptr);
    // Fit P(b) = A - B cos(b - c) using the three lowest Fourier modes.
    double a0 = 0.0, re = 0.0, im = 0.0, second = 0.0;
    const int n = static_cast<int>(b_trace->samples.size());
    for (const auto& s : b_trace->samples) {
      a0 += s.coincidence;
      re += s.coincidence * std::cos(s.parameter);
      im += s.coincidence * std::sin(s.parameter);
      second += s.coincidence * std::cos(2.0 * s.parameter);
    }
    a0 /= n;
    const double first = 2.0 * std::hypot(re / n, im / n);
    CHECK(first > 0.1 * a0);                    // dominant fundamental
    CHECK(std::fabs(2.0 * second / n) < 1e-9);  // no second harmonic
    // Residual against the fitted sinusoid.
    const double phase = std::atan2(im / n, re / n);
    for (const auto& s : b_trace->samples) {
      const double model = a0 + first * std::cos(s.parameter - phase);
      CHECK(std::fabs(s.coincidence - model) < 1e-9);
    }
  }
}

TEST_CASE("result does not depend on the initial b1/b2 split") {
  const SourceConfig cfg = bench_cfg();
  SlmProgram first;
  first.b1 = 1.7;
  SlmProgram second;
  second.b1 = 0.5;
  second.b2 = 1.2;
  const OptimizeResult r1 = optimize_program(cfg, first);
  const OptimizeResult r2 = optimize_program(cfg, second);
  CHECK(wrapped_distance(r1.program.b1 + r1.program.b2,
                         r2.program.b1 + r2.program.b2) < 1e-6);
  CHECK(r1.program.a1 == doctest::Approx(r2.program.a1).epsilon(1e-8));
}

TEST_CASE("slope sign follows the phase coupling") {
  SourceConfig cfg = bench_cfg();
  cfg.beta_L_over_gamma = 250.0;
  const OptimizeResult result = optimize_program(cfg, SlmProgram{});
  CHECK(result.program.a1 == doctest::Approx(0.05).epsilon(0.1));
}

TEST_CASE("objective is 2-pi periodic in the offset") {
  const SourceConfig cfg = bench_cfg();
  SlmProgram slm = analytic_optimum(cfg);
  auto objective = [&](double b1) {
    SlmProgram p = slm;
    p.b1 = b1;
    const auto rho = synthesize_state(cfg, p, Stage::full);
    return coincidence_probability(rho, kPi / 4, -kPi / 4);
  };
  for (double b : {0.0, 0.7, 2.9})
    CHECK(objective(b) == doctest::Approx(objective(b + 2.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("round budget reports non-convergence honestly") {
  const SourceConfig cfg = bench_cfg();
  OptimizeOptions opts;
  opts.max_rounds = 1;
  const OptimizeResult result = optimize_program(cfg, SlmProgram{}, opts);
  CHECK_FALSE(result.converged);
  CHECK(result.rounds == 1);
  // Even one round should land close.
  CHECK(std::fabs(result.program.a1 - (-0.05)) <= 0.01);
}

TEST_CASE("optimizer option validation") {
  const SourceConfig cfg = bench_cfg();
  OptimizeOptions opts;
  opts.sweep_samples = 2;
  CHECK_THROWS_AS(optimize_program(cfg, SlmProgram{}, opts), ConfigError);
  OptimizeOptions bad_bracket;
  bad_bracket.slope_min = 0.1;
  bad_bracket.slope_max = -0.1;
  CHECK_THROWS_AS(optimize_program(cfg, SlmProgram{}, bad_bracket), ConfigError);
}
