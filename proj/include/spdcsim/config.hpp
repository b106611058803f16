#pragma once

#include <string>

#include "spdcsim/optimize.hpp"
#include "spdcsim/source_config.hpp"
#include "spdcsim/tomography.hpp"

namespace spdcsim {

/// Everything a run needs: the source model plus optimizer/tomography knobs.
/// All of it lives in one flat key=value file; keys match the SourceConfig
/// field names exactly, with opt_*/tomo_* prefixes for the rest.
struct Config {
  SourceConfig source;
  OptimizeOptions optimize;
  MleOptions tomo;
  int bootstrap_resamples = 100;
};

Config load_config_file(const std::string& path);

/// Applies one KEY=VALUE override. Throws ConfigError on unknown keys.
void apply_override(Config& cfg, const std::string& key_value);

/// Full canonical serialization of a Config (round-trips through
/// load_config_file).
std::string config_text(const Config& cfg);
void save_config_file(const Config& cfg, const std::string& path);

}  // namespace spdcsim
