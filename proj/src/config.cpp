#include "spdcsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spdcsim/errors.hpp"
#include "spdcsim/io.hpp"

namespace spdcsim {

namespace {

bool set_run_knob(Config& cfg, const std::string& key, const std::string& value) {
  auto as_double = [&](const std::string& v) {
    try {
      std::size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("junk");
      return d;
    } catch (const std::exception&) {
      throw ConfigError("cannot parse value '" + v + "' for key '" + key + "'");
    }
  };
  auto as_int = [&](const std::string& v) {
    const double d = as_double(v);
    const int i = static_cast<int>(std::llround(d));
    if (std::fabs(d - i) > 1e-9)
      throw ConfigError("key '" + key + "' expects an integer");
    return i;
  };

  if (key == "opt_sweep_samples") cfg.optimize.sweep_samples = as_int(value);
  else if (key == "opt_slope_min") cfg.optimize.slope_min = as_double(value);
  else if (key == "opt_slope_max") cfg.optimize.slope_max = as_double(value);
  else if (key == "opt_max_rounds") cfg.optimize.max_rounds = as_int(value);
  else if (key == "opt_objective_tol") cfg.optimize.objective_tol = as_double(value);
  else if (key == "tomo_restarts") cfg.tomo.restarts = as_int(value);
  else if (key == "tomo_grad_tol") cfg.tomo.grad_tol = as_double(value);
  else if (key == "tomo_max_iterations") cfg.tomo.max_iterations = as_int(value);
  else if (key == "bootstrap_resamples") cfg.bootstrap_resamples = as_int(value);
  else return false;
  return true;
}

}  // namespace

Config load_config_file(const std::string& path) {
  Config cfg;
  for (const auto& [key, value] : read_key_value_file(path)) {
    if (set_run_knob(cfg, key, value)) continue;
    set_config_key(cfg.source, key, value);  // throws on unknown keys
  }
  cfg.source.validate();
  return cfg;
}

void apply_override(Config& cfg, const std::string& key_value) {
  const auto eq = key_value.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like KEY=VALUE, got '" + key_value + "'");
  const std::string key = key_value.substr(0, eq);
  const std::string value = key_value.substr(eq + 1);
  if (set_run_knob(cfg, key, value)) return;
  set_config_key(cfg.source, key, value);
}

std::string config_text(const Config& cfg) {
  std::ostringstream os;
  os << source_config_text(cfg.source);
  os << "bootstrap_resamples=" << cfg.bootstrap_resamples << '\n'
     << "opt_max_rounds=" << cfg.optimize.max_rounds << '\n'
     << "opt_objective_tol=" << format_double(cfg.optimize.objective_tol, 17) << '\n'
     << "opt_slope_max=" << format_double(cfg.optimize.slope_max, 17) << '\n'
     << "opt_slope_min=" << format_double(cfg.optimize.slope_min, 17) << '\n'
     << "opt_sweep_samples=" << cfg.optimize.sweep_samples << '\n'
     << "tomo_grad_tol=" << format_double(cfg.tomo.grad_tol, 17) << '\n'
     << "tomo_max_iterations=" << cfg.tomo.max_iterations << '\n'
     << "tomo_restarts=" << cfg.tomo.restarts << '\n';
  return os.str();
}

void save_config_file(const Config& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << config_text(cfg);
}

}  // namespace spdcsim
