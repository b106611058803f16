#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "spdcsim/cli.hpp"
#include "spdcsim/errors.hpp"

namespace {

void add_common(CLI::App* sub, spdcsim::RunManifest& m) {
  sub->add_option("--config", m.config_path, "Config file (flat key=value)")
      ->check(CLI::ExistingFile);
  sub->add_option("--set", m.overrides, "Override KEY=VALUE (repeatable)");
  sub->add_option("--out", m.out_dir, "Output directory");
  sub->add_option("--seed", m.seed, "RNG seed");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace spdcsim;

  CLI::App app{"Two-crystal downconversion source simulator with a programmable "
               "phase-mask compensator"};
  app.require_subcommand(1);

  RunManifest m;

  std::string preset;
  auto* angular = app.add_subcommand(
      "angular", "Angular coincidence/singles distributions (presets 2a-2e)");
  add_common(angular, m);
  angular->add_option("--preset", preset, "Panel preset: 2a, 2b, 2c, 2d or 2e")
      ->required();

  auto* optimize = app.add_subcommand(
      "optimize", "Recover the compensating phase program from coincidence minima");
  add_common(optimize, m);

  auto* vis = app.add_subcommand(
      "visibility", "Fringe visibility for the none/temporal/full stages");
  add_common(vis, m);

  std::string target = "phi+";
  double pairs = 6000.0;
  int resamples = 0;
  auto* tomo = app.add_subcommand(
      "tomography", "Simulate counts, reconstruct the state, bootstrap the error");
  add_common(tomo, m);
  tomo->add_option("--target", target, "Target state: phi+, phi-, phi-pi2");
  tomo->add_option("--pairs", pairs, "Total pairs over the acquisition");
  tomo->add_option("--resamples", resamples,
                   "Bootstrap resamples (0 = config value)");

  auto* spectrum = app.add_subcommand(
      "spectrum", "Collected signal spectrum through the slits and filters");
  add_common(spectrum, m);

  std::string stage = "full";
  double zeta = 0.0;
  auto* state = app.add_subcommand("state", "Synthesized polarization density matrix");
  add_common(state, m);
  state->add_option("--stage", stage, "Compensation stage: none, temporal, full");
  state->add_option("--zeta", zeta, "Extra constant phase on b1 (rad)");

  std::string key;
  double lo = 0.0, hi = 0.0;
  int points = 0;
  auto* sweep = app.add_subcommand("sweep", "Sweep one config key, report |C| per stage");
  add_common(sweep, m);
  sweep->add_option("--key", key, "Config key to sweep")->required();
  sweep->add_option("--from", lo, "Start value")->required();
  sweep->add_option("--to", hi, "End value")->required();
  sweep->add_option("--points", points, "Number of samples")->required();

  double v_none = 0.423, v_temporal = 0.616, v_full = 0.886;
  std::string out_config;
  auto* calibrate = app.add_subcommand(
      "calibrate", "Fit mu_spatial, alpha_L and kappa_L to a visibility chain");
  add_common(calibrate, m);
  calibrate->add_option("--v-none", v_none, "Uncompensated visibility target");
  calibrate->add_option("--v-temporal", v_temporal, "After-delay-compensation target");
  calibrate->add_option("--v-full", v_full, "After-mask-compensation target");
  calibrate->add_option("--write-config", out_config, "Calibrated config destination");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (angular->parsed()) return cmd_angular(m, preset);
    if (optimize->parsed()) return cmd_optimize(m);
    if (vis->parsed()) return cmd_visibility(m);
    if (tomo->parsed()) return cmd_tomography(m, target, pairs, resamples);
    if (spectrum->parsed()) return cmd_spectrum(m);
    if (state->parsed()) return cmd_state(m, stage, zeta);
    if (sweep->parsed()) return cmd_sweep(m, key, lo, hi, points);
    if (calibrate->parsed())
      return cmd_calibrate(m, v_none, v_temporal, v_full, out_config);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
