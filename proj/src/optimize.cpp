#include "spdcsim/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "spdcsim/coherence.hpp"
#include "spdcsim/errors.hpp"
#include "spdcsim/math_util.hpp"

namespace spdcsim {

namespace {

constexpr double kPi = 3.141592653589793238;
constexpr double kQuarterPi = kPi / 4.0;

double objective(const SourceConfig& cfg, const SlmProgram& slm) {
  const PolarizationDensityMatrix rho = synthesize_state(cfg, slm, Stage::full);
  return coincidence_probability(rho, kQuarterPi, -kQuarterPi);
}

}  // namespace

OptimizeResult optimize_program(const SourceConfig& cfg, const SlmProgram& initial,
                                const OptimizeOptions& opts) {
  if (opts.sweep_samples < 4) throw ConfigError("opt_sweep_samples must be >= 4");
  if (!(opts.slope_max > opts.slope_min))
    throw ConfigError("empty slope bracket for the a-sweep");

  // Only b1 + b2 is physical: fold the initial split into b1 and keep b2 = 0
  // for the whole procedure. Slopes are tied a1 = -a2, mirroring the lab
  // sweeps; center pixels come from the geometry.
  const CenterPixels centers = default_center_pixels(cfg);
  SlmProgram prog = initial;
  prog.b1 = initial.b1 + initial.b2;
  prog.b2 = 0.0;
  prog.a1 = 0.5 * (initial.a1 - initial.a2);
  prog.a2 = -prog.a1;
  prog.xc1 = centers.idler;
  prog.xc2 = centers.signal;

  OptimizeResult result;
  double previous = objective(cfg, prog);

  for (int round = 1; round <= opts.max_rounds; ++round) {
    // (i) offset sweep: b1 over one period with everything else held.
    {
      SweepTrace trace{"b1", round, {}};
      trace.samples.reserve(opts.sweep_samples);
      const double step = 2.0 * kPi / opts.sweep_samples;
      int best = 0;
      for (int i = 0; i < opts.sweep_samples; ++i) {
        SlmProgram p = prog;
        p.b1 = i * step;
        const double value = objective(cfg, p);
        trace.samples.push_back({p.b1, value});
        if (value < trace.samples[best].coincidence) best = i;
      }
      auto f = [&](double b) {
        SlmProgram p = prog;
        p.b1 = b;
        return objective(cfg, p);
      };
      const double center = best * step;  // periodic: brackets may wrap
      const MinimizeResult refined =
          golden_section_minimize(f, center - step, center + step, 1e-7);
      prog.b1 = refined.x;
      result.traces.push_back(std::move(trace));
    }

    // (ii) tied-slope sweep: a1 = -a2 over the configured bracket.
    double round_objective;
    {
      SweepTrace trace{"a1", round, {}};
      trace.samples.reserve(opts.sweep_samples);
      const double step =
          (opts.slope_max - opts.slope_min) / (opts.sweep_samples - 1);
      int best = 0;
      for (int i = 0; i < opts.sweep_samples; ++i) {
        SlmProgram p = prog;
        p.a1 = opts.slope_min + i * step;
        p.a2 = -p.a1;
        const double value = objective(cfg, p);
        trace.samples.push_back({p.a1, value});
        if (value < trace.samples[best].coincidence) best = i;
      }
      auto f = [&](double a) {
        SlmProgram p = prog;
        p.a1 = a;
        p.a2 = -a;
        return objective(cfg, p);
      };
      const double center = opts.slope_min + best * step;
      const double lo = std::max(opts.slope_min, center - step);
      const double hi = std::min(opts.slope_max, center + step);
      const MinimizeResult refined = golden_section_minimize(f, lo, hi, 1e-8);
      prog.a1 = refined.x;
      prog.a2 = -refined.x;
      round_objective = refined.value;
      result.traces.push_back(std::move(trace));
    }

    result.rounds = round;
    if (std::fabs(previous - round_objective) < opts.objective_tol) {
      result.converged = true;
      previous = round_objective;
      break;
    }
    previous = round_objective;
  }

  result.program = prog;
  result.objective = previous;
  return result;
}

}  // namespace spdcsim
