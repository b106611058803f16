#include "spdcsim/calibrate.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "spdcsim/coherence.hpp"
#include "spdcsim/errors.hpp"
#include "spdcsim/slm.hpp"

namespace spdcsim {

namespace {

double coherence_abs(const SourceConfig& cfg, Stage stage) {
  return std::abs(synthesize_coherence(cfg, analytic_optimum(cfg), stage).c);
}

// Bisection for a monotonically decreasing map; brackets must straddle.
double solve_decreasing(const std::function<double(double)>& f, double lo,
                        double hi, double target, const std::string& what) {
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (target > f_lo + 1e-12 || target < f_hi - 1e-12)
    throw ConfigError("calibration target for " + what + " (" +
                      std::to_string(target) + ") is outside the reachable range [" +
                      std::to_string(f_hi) + ", " + std::to_string(f_lo) + "]");
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

CalibrationResult calibrate_visibility_chain(const SourceConfig& base,
                                             const VisibilityTargets& t) {
  if (!(t.none > 0 && t.none <= t.temporal && t.temporal <= t.full && t.full <= 1.0))
    throw ConfigError("visibility targets must satisfy 0 < none <= temporal <= full <= 1");

  SourceConfig cfg = base;
  cfg.mu_spatial = 1.0;
  cfg.alpha_L = 0.0;
  cfg.validate();

  // kappa_L sets the angular coherence deficit V_temporal / V_full. The
  // full-stage value (pixel-quantization residual) feeds back weakly through
  // the changed weight, so iterate the pair of solves.
  double full_stage = 1.0;
  for (int pass = 0; pass < 3; ++pass) {
    const double target_ang = t.temporal * full_stage / t.full;
    cfg.kappa_L = solve_decreasing(
        [&](double k) {
          SourceConfig probe = cfg;
          probe.kappa_L = k;
          return coherence_abs(probe, Stage::temporal);
        },
        0.0, 2.0e4, target_ang, "kappa_L (V_temporal/V_full)");
    full_stage = coherence_abs(cfg, Stage::full);
  }
  cfg.mu_spatial = t.full / full_stage;
  if (cfg.mu_spatial > 1.0)
    throw ConfigError("calibrated mu_spatial exceeds 1; targets unreachable");

  // alpha_L sets the pump dephasing V_none / V_temporal; only the product
  // alpha_L * pump_fwhm matters and the FWHM is held at its configured value.
  const double v_temporal_now = coherence_abs(cfg, Stage::temporal);
  cfg.alpha_L = solve_decreasing(
      [&](double a) {
        SourceConfig probe = cfg;
        probe.alpha_L = a;
        return coherence_abs(probe, Stage::none) / v_temporal_now;
      },
      0.0, 1000.0 / cfg.pump_fwhm, t.none / t.temporal, "alpha_L (V_none/V_temporal)");

  CalibrationResult result;
  result.calibrated = cfg;
  result.v_none = coherence_abs(cfg, Stage::none);
  result.v_temporal = coherence_abs(cfg, Stage::temporal);
  result.v_full = coherence_abs(cfg, Stage::full);
  return result;
}

}  // namespace spdcsim
