#pragma once

#include "spdcsim/source_config.hpp"

namespace spdcsim {

struct VisibilityTargets {
  double none = 0.423;
  double temporal = 0.616;
  double full = 0.886;
};

struct CalibrationResult {
  SourceConfig calibrated;
  double v_none = 0.0;
  double v_temporal = 0.0;
  double v_full = 0.0;
};

/// Fits the three free knobs to the visibility chain. The chain factorizes,
/// so three 1-D bisections solve the joint problem:
///   kappa_L     from v_temporal / v_full   (angular coherence deficit)
///   alpha_L     from v_none / v_temporal   (pump group-delay dephasing,
///                                           pump_fwhm held fixed: only the
///                                           product alpha_L * fwhm enters)
///   mu_spatial  from v_full                (global scalar)
/// Throws ConfigError when a target ratio is outside the reachable range.
CalibrationResult calibrate_visibility_chain(const SourceConfig& base,
                                             const VisibilityTargets& targets = {});

}  // namespace spdcsim
