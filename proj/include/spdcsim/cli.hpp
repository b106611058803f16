#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spdcsim/config.hpp"

namespace spdcsim {

inline constexpr std::uint64_t kDefaultSeed = 810405;

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Parsed command-line state common to all subcommands.
struct RunManifest {
  std::string config_path;             // empty = built-in defaults
  std::vector<std::string> overrides;  // KEY=VALUE, applied in order
  std::string out_dir = "out";
  std::uint64_t seed = kDefaultSeed;
};

/// Loads the config file (if any), applies overrides, validates.
Config load_effective_config(const RunManifest& m);

int cmd_angular(const RunManifest& m, const std::string& preset);
int cmd_optimize(const RunManifest& m);
int cmd_visibility(const RunManifest& m);
int cmd_tomography(const RunManifest& m, const std::string& target,
                   double pairs, int resamples);
int cmd_spectrum(const RunManifest& m);
int cmd_state(const RunManifest& m, const std::string& stage, double zeta);
int cmd_sweep(const RunManifest& m, const std::string& key, double lo,
              double hi, int points);
int cmd_calibrate(const RunManifest& m, double v_none, double v_temporal,
                  double v_full, const std::string& out_config);

}  // namespace spdcsim
