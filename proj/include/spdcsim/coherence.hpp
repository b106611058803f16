#pragma once

#include <complex>
#include <string>

#include "spdcsim/density_matrix.hpp"
#include "spdcsim/slm.hpp"
#include "spdcsim/source_config.hpp"

namespace spdcsim {

/// Compensation stage of the purification chain.
///   none      raw source, every phase term active, mask flat
///   temporal  pump group-delay term removed (precompensation crystals)
///   full      temporal plus the SLM phase program
enum class Stage { none, temporal, full };

std::string to_string(Stage stage);
Stage stage_from_string(const std::string& name);

struct CoherenceResult {
  std::complex<double> c;  // normalized coherence 2<VV|rho|HH>, mu_spatial included
  double norm = 0.0;       // weight integral (denominator)
  Stage stage = Stage::none;
};

/// Reduces the pair-state integral over (theta, theta', omega_p) to the
/// polarization coherence C = <exp(i*(pair phase - mask phases))> under the
/// weight |f|^2 * |A|^2 * (pair filter transmission), then scales by
/// mu_spatial. With the compensating program and an extra zeta, C rotates to
/// e^{i zeta} |C| and the output state approaches (|HH> + e^{i zeta}|VV>)/sqrt2.
///
/// `analysis_phase` is a uniform extra mask offset: at stage full it adds to
/// b1; at the earlier stages it is the only mask term applied (flat analyzer
/// program). Fringe sweeps drive it through 2*pi.
///
/// Throws ConfigError on an empty quadrature grid and NumericalError if
/// |C| exceeds 1 beyond rounding.
CoherenceResult synthesize_coherence(const SourceConfig& cfg,
                                     const SlmProgram& slm, Stage stage,
                                     double analysis_phase = 0.0);

/// rho = 1/2 (|HH><HH| + |VV><VV| + C |HH><VV| + h.c.) with C from
/// synthesize_coherence. The result is validated against the density-matrix
/// invariants before it is returned.
PolarizationDensityMatrix synthesize_state(const SourceConfig& cfg,
                                           const SlmProgram& slm, Stage stage,
                                           double analysis_phase = 0.0);

/// Fringe visibility (P_max - P_min)/(P_max + P_min) of the coincidence
/// probability at analyzer angles (45 deg, -45 deg) as the uniform program
/// offset sweeps through 2*pi. Cross-checked against |C| to 1e-6; a
/// disagreement raises NumericalError.
double visibility(const SourceConfig& cfg, const SlmProgram& slm, Stage stage);

}  // namespace spdcsim
