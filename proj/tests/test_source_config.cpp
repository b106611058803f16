#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "spdcsim/config.hpp"
#include "spdcsim/errors.hpp"
#include "spdcsim/source_config.hpp"

using namespace spdcsim;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << text;
  return path.string();
}

}  // namespace

TEST_CASE("defaults are valid and match the bench geometry") {
  SourceConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.mask_width_mm() == doctest::Approx(64.0));
  CHECK(cfg.radians_per_pixel() == doctest::Approx(2e-4));
  CHECK(cfg.theta0_signal == doctest::Approx(52.36e-3).epsilon(1e-4));
  CHECK(cfg.theta0_idler == -cfg.theta0_signal);
}

TEST_CASE("validate rejects broken configs") {
  auto broken = [](auto&& mutate) {
    SourceConfig cfg;
    mutate(cfg);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  };
  broken([](SourceConfig& c) { c.gamma = -1.0; });
  broken([](SourceConfig& c) { c.mu_spatial = 1.5; });
  broken([](SourceConfig& c) { c.mu_spatial = -0.1; });
  broken([](SourceConfig& c) { c.pump_fwhm = 0.0; });
  broken([](SourceConfig& c) { c.slit_acceptance = 0.0; });
  broken([](SourceConfig& c) { c.theta0_idler = c.theta0_signal; });
  broken([](SourceConfig& c) { c.pixel_count = 0; });
  broken([](SourceConfig& c) { c.quad_theta_points = 0; });
}

TEST_CASE("key=value setters") {
  SourceConfig cfg;
  set_config_key(cfg, "kappa_L", "1024.5");
  CHECK(cfg.kappa_L == doctest::Approx(1024.5));
  set_config_key(cfg, "slm_pixelated", "false");
  CHECK_FALSE(cfg.slm_pixelated);
  set_config_key(cfg, "purification_filter", "ideal");
  CHECK(cfg.purification_filter == FilterKind::ideal);
  set_config_key(cfg, "pixel_count", "320");
  CHECK(cfg.pixel_count == 320);

  CHECK_THROWS_AS(set_config_key(cfg, "nope", "1"), ConfigError);
  CHECK_THROWS_AS(set_config_key(cfg, "gamma", "abc"), ConfigError);
  CHECK_THROWS_AS(set_config_key(cfg, "pixel_count", "1.5"), ConfigError);
  CHECK_THROWS_AS(set_config_key(cfg, "slm_pixelated", "maybe"), ConfigError);
}

TEST_CASE("canonical text round-trips and hashes are sensitive") {
  SourceConfig cfg;
  cfg.kappa_L = 999.25;
  cfg.phi0 = 0.85;
  const std::string path = write_temp("spdcsim_cfg_roundtrip.cfg",
                                      source_config_text(cfg));
  SourceConfig loaded;
  for (const auto& [k, v] : read_key_value_file(path))
    set_config_key(loaded, k, v);
  CHECK(config_hash(loaded) == config_hash(cfg));

  SourceConfig other = cfg;
  other.alpha_L = 1e-9;
  CHECK(config_hash(other) != config_hash(cfg));
}

TEST_CASE("config file parsing errors") {
  CHECK_THROWS_AS(read_key_value_file("/nonexistent/path.cfg"), ConfigError);
  const std::string no_eq = write_temp("spdcsim_bad1.cfg", "gamma 1.0\n");
  CHECK_THROWS_AS(read_key_value_file(no_eq), ConfigError);
  const std::string dup = write_temp("spdcsim_bad2.cfg", "gamma=1\ngamma=2\n");
  CHECK_THROWS_AS(read_key_value_file(dup), ConfigError);
  const std::string comments = write_temp(
      "spdcsim_ok.cfg", "# a comment\n\n  gamma = 2e-4  # trailing\n");
  const auto pairs = read_key_value_file(comments);
  CHECK(pairs.at("gamma") == "2e-4");
}

TEST_CASE("full run config with knobs") {
  const std::string path = write_temp("spdcsim_run.cfg",
                                      "phi0 = 0.85\n"
                                      "opt_sweep_samples = 64\n"
                                      "tomo_restarts = 5\n"
                                      "bootstrap_resamples = 42\n");
  Config cfg = load_config_file(path);
  CHECK(cfg.source.phi0 == doctest::Approx(0.85));
  CHECK(cfg.optimize.sweep_samples == 64);
  CHECK(cfg.tomo.restarts == 5);
  CHECK(cfg.bootstrap_resamples == 42);

  apply_override(cfg, "mu_spatial=0.9");
  CHECK(cfg.source.mu_spatial == doctest::Approx(0.9));
  apply_override(cfg, "opt_max_rounds=3");
  CHECK(cfg.optimize.max_rounds == 3);
  CHECK_THROWS_AS(apply_override(cfg, "no-equals-sign"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "bogus=1"), ConfigError);

  // Round-trip the whole run config.
  const std::string again = write_temp("spdcsim_run2.cfg", config_text(cfg));
  const Config loaded = load_config_file(again);
  CHECK(config_text(loaded) == config_text(cfg));
}
