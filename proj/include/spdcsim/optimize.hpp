#pragma once

#include <string>
#include <vector>

#include "spdcsim/slm.hpp"
#include "spdcsim/source_config.hpp"

namespace spdcsim {

struct OptimizeOptions {
  int sweep_samples = 128;      // uniform samples per 1-D sweep
  double slope_min = -0.15;     // rad/pixel bracket for the tied slope
  double slope_max = 0.15;
  int max_rounds = 10;
  double objective_tol = 1e-8;  // round-to-round change that counts as converged
};

struct SweepSample {
  double parameter = 0.0;
  double coincidence = 0.0;  // probability per pair at (45 deg, -45 deg)
};

struct SweepTrace {
  std::string parameter;  // "b1" or "a1"
  int round = 0;
  std::vector<SweepSample> samples;
};

struct OptimizeResult {
  SlmProgram program;
  double objective = 0.0;
  bool converged = false;
  int rounds = 0;
  std::vector<SweepTrace> traces;
};

/// Replays the alignment procedure: with analyzers at (45 deg, -45 deg),
/// alternate (i) a b1 sweep over [0, 2*pi) with b2 = 0 and (ii) a sweep of
/// the tied slope a1 = -a2 over the configured bracket, each followed by
/// golden-section refinement around the best sample, until the objective
/// stops moving or max_rounds is hit. Non-convergence is reported through
/// `converged` with the best program so far.
OptimizeResult optimize_program(const SourceConfig& cfg, const SlmProgram& initial,
                                const OptimizeOptions& opts = {});

}  // namespace spdcsim
