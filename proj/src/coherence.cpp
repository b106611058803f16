#include "spdcsim/coherence.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "spdcsim/errors.hpp"
#include "spdcsim/math_util.hpp"
#include "spdcsim/physics.hpp"

namespace spdcsim {

namespace {

constexpr double kPi = 3.141592653589793238;

// Pump grid spans +-4 FWHM so the truncated tail mass is negligible.
constexpr double kPumpSpanFwhm = 4.0;

struct Grid1D {
  std::vector<double> nodes;
  double step = 0.0;
};

Grid1D midpoint_grid(double lo, double hi, int n) {
  Grid1D g;
  if (n <= 0 || !(hi > lo)) return g;
  g.step = (hi - lo) / n;
  g.nodes.resize(n);
  for (int i = 0; i < n; ++i) g.nodes[i] = lo + (i + 0.5) * g.step;
  return g;
}

}  // namespace

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::none: return "none";
    case Stage::temporal: return "temporal";
    case Stage::full: return "full";
  }
  return "none";
}

Stage stage_from_string(const std::string& name) {
  if (name == "none") return Stage::none;
  if (name == "temporal") return Stage::temporal;
  if (name == "full") return Stage::full;
  throw ConfigError("unknown stage: '" + name + "'");
}

CoherenceResult synthesize_coherence(const SourceConfig& cfg,
                                     const SlmProgram& slm, Stage stage,
                                     double analysis_phase) {
  const double hw = 0.5 * cfg.slit_acceptance;
  const Grid1D th = midpoint_grid(-hw, hw, cfg.quad_theta_points);
  const Grid1D thp = midpoint_grid(-hw, hw, cfg.quad_theta_points);
  const double pump_hw = kPumpSpanFwhm * cfg.pump_fwhm;
  const Grid1D pump = midpoint_grid(-pump_hw, pump_hw, cfg.quad_pump_points);
  if (th.nodes.empty() || pump.nodes.empty())
    throw ConfigError("empty quadrature grid (check quad_* and slit_acceptance)");

  // The pump axis separates exactly: the weight is a product and the phase a
  // sum of per-axis terms, so the triple tensor-product midpoint rule reduces
  // to a 1-D pump factor times a 2-D angular sum.
  std::complex<double> pump_acc(0.0, 0.0);
  double pump_norm = 0.0;
  for (double w : pump.nodes) {
    const double a2 = pump_spectral_density(w, cfg);
    pump_norm += a2;
    if (stage == Stage::none) {
      const double ph = cfg.alpha_L * w;
      pump_acc += a2 * std::complex<double>(std::cos(ph), std::sin(ph));
    } else {
      pump_acc += a2;
    }
  }
  const std::complex<double> pump_factor = pump_acc / pump_norm;

  const FilterModel filter = FilterModel::from_kind(cfg.purification_filter);
  const double filter_center = filter.center_detuning_nm();
  const double coupling = cfg.beta_L_over_gamma;

  // C is the pair (VV) phase relative to the mask (HH) phase:
  // <exp(i*(phi_pair - mask_s - mask_i - analysis))>. The integrand phase
  // splits as (-mask_s - k*theta) + (-mask_i + k*theta') + (phi0 - analysis);
  // only the weight couples the two angular axes.
  const int n = static_cast<int>(th.nodes.size());
  std::vector<std::complex<double>> ph_s(n), ph_i(n);
  const bool apply_program = stage == Stage::full;
  for (int i = 0; i < n; ++i) {
    const double mask_s =
        apply_program ? program_phase(slm, Arm::signal, th.nodes[i], cfg) : 0.0;
    const double mask_i =
        apply_program ? program_phase(slm, Arm::idler, thp.nodes[i], cfg) : 0.0;
    const double a = -mask_s - coupling * th.nodes[i];
    const double b = -mask_i + coupling * thp.nodes[i];
    ph_s[i] = {std::cos(a), std::sin(a)};
    ph_i[i] = {std::cos(b), std::sin(b)};
  }

  std::complex<double> ang_acc(0.0, 0.0);
  double ang_norm = 0.0;
  for (int i = 0; i < n; ++i) {
    const double theta = th.nodes[i];
    std::complex<double> row(0.0, 0.0);
    double row_norm = 0.0;
    for (int j = 0; j < n; ++j) {
      const double u = theta + thp.nodes[j];
      const double f = sinc(cfg.kappa_L * (u - cfg.gamma * filter_center));
      const double w = f * f * filter.pair_transmission(u / cfg.gamma);
      row += w * ph_i[j];
      row_norm += w;
    }
    ang_acc += ph_s[i] * row;
    ang_norm += row_norm;
  }
  if (!(ang_norm > 0.0))
    throw ConfigError("coherence weight integrates to zero (filter kills the slit window?)");

  const double const_phase = cfg.phi0 - analysis_phase;
  const std::complex<double> rot(std::cos(const_phase), std::sin(const_phase));

  CoherenceResult result;
  result.stage = stage;
  result.c = cfg.mu_spatial * pump_factor * rot * (ang_acc / ang_norm);
  result.norm = pump_norm * pump.step * ang_norm * th.step * thp.step;
  if (std::abs(result.c) > 1.0 + 1e-9)
    throw NumericalError("coherence magnitude " + std::to_string(std::abs(result.c)) +
                         " exceeds 1: internal consistency failure");
  return result;
}

PolarizationDensityMatrix synthesize_state(const SourceConfig& cfg,
                                           const SlmProgram& slm, Stage stage,
                                           double analysis_phase) {
  const CoherenceResult r = synthesize_coherence(cfg, slm, stage, analysis_phase);
  PolarizationDensityMatrix rho = PolarizationDensityMatrix::from_coherence(r.c);
  rho.require_valid();
  return rho;
}

double visibility(const SourceConfig& cfg, const SlmProgram& slm, Stage stage) {
  auto probability = [&](double phase) {
    const PolarizationDensityMatrix rho =
        synthesize_state(cfg, slm, stage, phase);
    return coincidence_probability(rho, kPi / 4.0, -kPi / 4.0);
  };

  const int sweep = 96;
  const double step = 2.0 * kPi / sweep;
  int i_max = 0, i_min = 0;
  std::vector<double> p(sweep);
  for (int i = 0; i < sweep; ++i) {
    p[i] = probability(i * step);
    if (p[i] > p[i_max]) i_max = i;
    if (p[i] < p[i_min]) i_min = i;
  }

  // Refine both fringe extrema inside their neighbor brackets.
  auto refine = [&](int idx, double sign) {
    const double center = idx * step;
    auto f = [&](double x) { return sign * probability(x); };
    return sign * golden_section_minimize(f, center - step, center + step, 1e-10).value;
  };
  const double p_max = refine(i_max, -1.0);
  const double p_min = refine(i_min, 1.0);

  const double denom = p_max + p_min;
  const double v = denom > 0.0 ? (p_max - p_min) / denom : 0.0;

  const double c_abs = std::abs(synthesize_coherence(cfg, slm, stage).c);
  if (std::fabs(v - c_abs) > 1e-6)
    throw NumericalError("fringe visibility " + std::to_string(v) +
                         " disagrees with |C| = " + std::to_string(c_abs));
  return v;
}

}  // namespace spdcsim
