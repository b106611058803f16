#include "spdcsim/cli.hpp"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "spdcsim/calibrate.hpp"
#include "spdcsim/coherence.hpp"
#include "spdcsim/errors.hpp"
#include "spdcsim/io.hpp"
#include "spdcsim/optimize.hpp"
#include "spdcsim/rng.hpp"
#include "spdcsim/scans.hpp"
#include "spdcsim/tomography.hpp"

namespace spdcsim {

namespace {

constexpr double kPi = 3.141592653589793238;

Config load_config_base(const RunManifest& m) {
  return m.config_path.empty() ? Config{} : load_config_file(m.config_path);
}

void finish_config(Config& cfg, const RunManifest& m) {
  for (const auto& kv : m.overrides) apply_override(cfg, kv);
  cfg.source.validate();
}

std::string out_path(const RunManifest& m, const std::string& name) {
  std::filesystem::create_directories(m.out_dir);
  return (std::filesystem::path(m.out_dir) / name).string();
}

void write_scan_csv(const RunManifest& m, const std::string& name,
                    const Scan& scan, const std::string& x_column,
                    std::vector<std::string> comments) {
  std::vector<std::vector<double>> rows;
  rows.reserve(scan.size());
  for (const auto& p : scan) rows.push_back({p.x, p.rate});
  write_csv(out_path(m, name), comments, {x_column, "rate"}, rows);
}

}  // namespace

Config load_effective_config(const RunManifest& m) {
  Config cfg = load_config_base(m);
  finish_config(cfg, m);
  return cfg;
}

int cmd_angular(const RunManifest& m, const std::string& preset) {
  Config cfg = load_config_base(m);
  cfg.source.slit_acceptance = 1.2e-3;  // scan slit, overridable via --set
  finish_config(cfg, m);
  const SourceConfig& src = cfg.source;
  const std::string hash = config_hash(src);

  struct Panel {
    std::string file;
    bool coincidences;
    FilterKind filter;
    double offset;
    double lo, hi;
    int points;
  };
  std::vector<Panel> panels;
  if (preset == "2a")
    panels.push_back({"angular_2a.csv", true, FilterKind::bandpass_10nm, 0.0,
                      -6e-3, 6e-3, 241});
  else if (preset == "2b")
    panels.push_back({"angular_2b.csv", true, FilterKind::double_longpass_qe, 0.0,
                      -6e-3, 6e-3, 241});
  else if (preset == "2c")
    panels.push_back({"angular_2c.csv", false, FilterKind::bandpass_10nm, 0.0,
                      -10e-3, 10e-3, 201});
  else if (preset == "2d")
    panels.push_back({"angular_2d.csv", false, FilterKind::double_longpass_qe, 0.0,
                      -10e-3, 10e-3, 201});
  else if (preset == "2e") {
    panels.push_back({"angular_2e_plus.csv", true, FilterKind::bandpass_10nm,
                      1.8e-3, -6e-3, 6e-3, 241});
    panels.push_back({"angular_2e_minus.csv", true, FilterKind::bandpass_10nm,
                      -1.8e-3, -6e-3, 6e-3, 241});
  } else {
    throw ConfigError("unknown angular preset '" + preset +
                      "' (expected one of 2a, 2b, 2c, 2d, 2e)");
  }

  for (const auto& p : panels) {
    const FilterModel filter = FilterModel::from_kind(p.filter);
    const Scan scan =
        p.coincidences
            ? angular_coincidence_scan(src, filter, p.offset, p.lo, p.hi, p.points)
            : angular_singles_scan(src, filter, p.lo, p.hi, p.points);
    write_scan_csv(m, p.file, scan, "theta_prime_rad",
                   {"config_hash=" + hash, "preset=" + preset,
                    "filter=" + to_string(p.filter),
                    "kind=" + std::string(p.coincidences ? "coincidences" : "singles"),
                    "theta_offset_rad=" + format_double(p.offset, 17)});
  }
  return kExitOk;
}

int cmd_optimize(const RunManifest& m) {
  const Config cfg = load_effective_config(m);
  const SourceConfig& src = cfg.source;
  const std::string hash = config_hash(src);
  const double window_scale = src.pair_rate_hz * 30.0;  // expected counts / 30 s

  SlmProgram zero;  // flat program; centers are filled in by the optimizer
  const OptimizeResult result = optimize_program(src, zero, cfg.optimize);

  std::vector<std::vector<double>> rows_b, rows_a;
  for (const auto& trace : result.traces) {
    auto& rows = trace.parameter == "b1" ? rows_b : rows_a;
    for (const auto& s : trace.samples)
      rows.push_back({static_cast<double>(trace.round), s.parameter,
                      s.coincidence * window_scale});
  }
  write_csv(out_path(m, "trace_b1.csv"), {"config_hash=" + hash},
            {"round", "b1_rad", "coincidences_30s"}, rows_b);
  write_csv(out_path(m, "trace_a.csv"), {"config_hash=" + hash},
            {"round", "a1_rad_per_pixel", "coincidences_30s"}, rows_a);

  const SlmProgram& p = result.program;
  write_json_file(out_path(m, "optimum.json"),
                  {{"config_hash", hash},
                   {"converged", result.converged},
                   {"rounds", result.rounds},
                   {"objective_probability", result.objective},
                   {"objective_counts_30s", result.objective * window_scale},
                   {"program",
                    {{"a1", p.a1},
                     {"b1", p.b1},
                     {"xc1", p.xc1},
                     {"a2", p.a2},
                     {"b2", p.b2},
                     {"xc2", p.xc2},
                     {"zeta", p.zeta}}}});
  return kExitOk;
}

int cmd_visibility(const RunManifest& m) {
  const Config cfg = load_effective_config(m);
  const SourceConfig& src = cfg.source;
  const SlmProgram slm = analytic_optimum(src);

  nlohmann::json stages, coherence;
  for (Stage stage : {Stage::none, Stage::temporal, Stage::full}) {
    const CoherenceResult r = synthesize_coherence(src, slm, stage);
    const double v = visibility(src, slm, stage);
    stages[to_string(stage)] = v;
    coherence[to_string(stage)] = {{"re", r.c.real()},
                                   {"im", r.c.imag()},
                                   {"abs", std::abs(r.c)},
                                   {"norm", r.norm}};
  }
  write_json_file(out_path(m, "visibility.json"),
                  {{"config_hash", config_hash(src)},
                   {"stages", stages},
                   {"coherence", coherence}});
  return kExitOk;
}

int cmd_tomography(const RunManifest& m, const std::string& target,
                   double pairs, int resamples) {
  const Config cfg = load_effective_config(m);
  const SourceConfig& src = cfg.source;
  const std::string hash = config_hash(src);

  double zeta;
  if (target == "phi+") zeta = 0.0;
  else if (target == "phi-") zeta = kPi;
  else if (target == "phi-pi2") zeta = kPi / 2.0;
  else throw ConfigError("unknown tomography target '" + target +
                         "' (expected phi+, phi-, phi-pi2)");
  if (!(pairs > 0)) throw ConfigError("--pairs must be > 0");
  const int n_resamples = resamples > 0 ? resamples : cfg.bootstrap_resamples;

  const Eigen::Vector4cd target_state = phi_state(zeta);
  const SlmProgram slm = bell_state_program(src, zeta);
  const PolarizationDensityMatrix rho_true =
      synthesize_state(src, slm, Stage::full);

  TomographyDataset data =
      simulate_counts(rho_true, default_setting_set(), pairs, m.seed);
  data.total_exposure_s = pairs / src.pair_rate_hz;
  save_dataset_csv(data, out_path(m, "dataset.csv"), hash);

  ReconstructionResult rec =
      mle_reconstruct(data, cfg.tomo, target_state, m.seed);
  const BootstrapResult boot = bootstrap_error(
      data, target_state, n_resamples, derive_seed(m.seed, 0xb007), cfg.tomo);
  rec.fidelity_error = boot.fidelity_std;

  nlohmann::json j = density_matrix_to_json(rec.rho, "full", hash);
  j["target"] = target;
  j["zeta"] = zeta;
  j["pairs"] = pairs;
  j["seed"] = m.seed;
  j["true_coherence"] = {{"re", (2.0 * rho_true(0, 3)).real()},
                         {"im", (2.0 * rho_true(0, 3)).imag()},
                         {"abs", std::abs(2.0 * rho_true(0, 3))}};
  j["fidelity"] = *rec.fidelity_vs_target;
  j["fidelity_error"] = *rec.fidelity_error;
  j["log_likelihood"] = rec.log_likelihood;
  j["mle_converged"] = rec.converged;
  j["mle_gradient_norm"] = rec.gradient_norm;
  j["bootstrap_resamples"] = boot.resamples;
  j["bootstrap_failures"] = boot.failures;
  write_json_file(out_path(m, "tomography.json"), j);
  return kExitOk;
}

int cmd_spectrum(const RunManifest& m) {
  const Config cfg = load_effective_config(m);
  const SourceConfig& src = cfg.source;
  const std::string hash = config_hash(src);
  const Scan scan = collected_spectrum(src);
  write_scan_csv(m, "spectrum.csv", scan, "omega_s_nm",
                 {"config_hash=" + hash,
                  "filter=" + to_string(src.purification_filter)});
  write_json_file(out_path(m, "spectrum.json"),
                  {{"config_hash", hash},
                   {"full_width_nm", scan_full_width(scan)},
                   {"points", scan.size()}});
  return kExitOk;
}

int cmd_state(const RunManifest& m, const std::string& stage_name, double zeta) {
  const Config cfg = load_effective_config(m);
  const SourceConfig& src = cfg.source;
  const Stage stage = stage_from_string(stage_name);
  const SlmProgram slm = bell_state_program(src, zeta);
  const CoherenceResult r = synthesize_coherence(src, slm, stage);
  const PolarizationDensityMatrix rho = synthesize_state(src, slm, stage);

  nlohmann::json j = density_matrix_to_json(rho, to_string(stage), config_hash(src));
  j["zeta"] = zeta;
  j["coherence"] = {{"re", r.c.real()},
                    {"im", r.c.imag()},
                    {"abs", std::abs(r.c)},
                    {"norm", r.norm}};
  write_json_file(out_path(m, "state.json"), j);
  return kExitOk;
}

int cmd_sweep(const RunManifest& m, const std::string& key, double lo, double hi,
              int points) {
  if (points < 2) throw ConfigError("--points must be >= 2");
  if (!(hi >= lo)) throw ConfigError("sweep range is empty");
  const Config base = load_effective_config(m);

  std::vector<std::vector<double>> rows;
  rows.reserve(points);
  const double step = points > 1 ? (hi - lo) / (points - 1) : 0.0;
  for (int i = 0; i < points; ++i) {
    const double value = lo + i * step;
    Config cfg = base;
    set_config_key(cfg.source, key, format_double(value, 17));
    cfg.source.validate();
    const SlmProgram slm = analytic_optimum(cfg.source);
    rows.push_back(
        {value,
         std::abs(synthesize_coherence(cfg.source, slm, Stage::none).c),
         std::abs(synthesize_coherence(cfg.source, slm, Stage::temporal).c),
         std::abs(synthesize_coherence(cfg.source, slm, Stage::full).c)});
  }
  write_csv(out_path(m, "sweep_" + key + ".csv"),
            {"config_hash=" + config_hash(base.source)},
            {key, "c_abs_none", "c_abs_temporal", "c_abs_full"}, rows);
  return kExitOk;
}

int cmd_calibrate(const RunManifest& m, double v_none, double v_temporal,
                  double v_full, const std::string& out_config) {
  Config cfg = load_effective_config(m);
  const VisibilityTargets targets{v_none, v_temporal, v_full};
  const CalibrationResult result =
      calibrate_visibility_chain(cfg.source, targets);

  cfg.source = result.calibrated;
  const std::string cfg_path =
      out_config.empty() ? out_path(m, "calibrated.cfg") : out_config;
  save_config_file(cfg, cfg_path);

  write_json_file(out_path(m, "calibration.json"),
                  {{"config_hash", config_hash(cfg.source)},
                   {"config_file", cfg_path},
                   {"targets",
                    {{"none", targets.none},
                     {"temporal", targets.temporal},
                     {"full", targets.full}}},
                   {"achieved",
                    {{"none", result.v_none},
                     {"temporal", result.v_temporal},
                     {"full", result.v_full}}},
                   {"knobs",
                    {{"kappa_L", cfg.source.kappa_L},
                     {"alpha_L", cfg.source.alpha_L},
                     {"pump_fwhm", cfg.source.pump_fwhm},
                     {"mu_spatial", cfg.source.mu_spatial}}}});
  return kExitOk;
}

}  // namespace spdcsim
