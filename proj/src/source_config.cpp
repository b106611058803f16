#include "spdcsim/source_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "spdcsim/errors.hpp"
#include "spdcsim/math_util.hpp"

namespace spdcsim {

void SourceConfig::validate() const {
  std::vector<std::string> problems;
  auto bad = [&problems](const std::string& msg) { problems.push_back(msg); };

  if (!(crystal_length_L > 0)) bad("crystal_length_L must be > 0");
  if (!(distance_D > 0)) bad("distance_D must be > 0");
  if (!(pixel_pitch_d > 0)) bad("pixel_pitch_d must be > 0");
  if (pixel_count <= 0) bad("pixel_count must be > 0");
  if (!(gamma > 0)) bad("gamma must be > 0 (rad/nm convention)");
  if (!(pump_fwhm > 0)) bad("pump_fwhm must be > 0");
  if (!(mu_spatial >= 0.0 && mu_spatial <= 1.0)) bad("mu_spatial must be in [0, 1]");
  if (!(kappa_L >= 0)) bad("kappa_L must be >= 0");
  if (!(slit_acceptance > 0)) bad("slit_acceptance must be > 0");
  if (std::fabs(theta0_idler + theta0_signal) > 1e-12)
    bad("theta0_idler must equal -theta0_signal");
  if (quad_theta_points <= 0) bad("quad_theta_points must be > 0");
  if (quad_pump_points <= 0) bad("quad_pump_points must be > 0");
  if (!(pair_rate_hz > 0)) bad("pair_rate_hz must be > 0");

  if (!problems.empty()) {
    std::string msg = "invalid source config:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string source_config_text(const SourceConfig& c) {
  // Sorted keys, full precision: this is the hashed canonical form.
  std::ostringstream os;
  os << "alpha_L=" << fmt(c.alpha_L) << '\n'
     << "beta_L_over_gamma=" << fmt(c.beta_L_over_gamma) << '\n'
     << "crystal_length_L=" << fmt(c.crystal_length_L) << '\n'
     << "distance_D=" << fmt(c.distance_D) << '\n'
     << "gamma=" << fmt(c.gamma) << '\n'
     << "kappa_L=" << fmt(c.kappa_L) << '\n'
     << "mu_spatial=" << fmt(c.mu_spatial) << '\n'
     << "pair_rate_hz=" << fmt(c.pair_rate_hz) << '\n'
     << "phi0=" << fmt(c.phi0) << '\n'
     << "pixel_count=" << c.pixel_count << '\n'
     << "pixel_pitch_d=" << fmt(c.pixel_pitch_d) << '\n'
     << "pump_fwhm=" << fmt(c.pump_fwhm) << '\n'
     << "purification_filter=" << to_string(c.purification_filter) << '\n'
     << "quad_pump_points=" << c.quad_pump_points << '\n'
     << "quad_theta_points=" << c.quad_theta_points << '\n'
     << "slit_acceptance=" << fmt(c.slit_acceptance) << '\n'
     << "slm_pixelated=" << (c.slm_pixelated ? "true" : "false") << '\n'
     << "theta0_idler=" << fmt(c.theta0_idler) << '\n'
     << "theta0_signal=" << fmt(c.theta0_signal) << '\n';
  return os.str();
}

std::string config_hash(const SourceConfig& cfg) {
  return fnv1a64_hex(source_config_text(cfg));
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse value '" + value + "' for key '" + key + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  const int i = static_cast<int>(std::llround(v));
  if (std::fabs(v - i) > 1e-9)
    throw ConfigError("key '" + key + "' expects an integer, got '" + value + "'");
  return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("key '" + key + "' expects true/false, got '" + value + "'");
}

}  // namespace

void set_config_key(SourceConfig& c, const std::string& key, const std::string& value) {
  if (key == "crystal_length_L") c.crystal_length_L = parse_double(key, value);
  else if (key == "distance_D") c.distance_D = parse_double(key, value);
  else if (key == "pixel_pitch_d") c.pixel_pitch_d = parse_double(key, value);
  else if (key == "pixel_count") c.pixel_count = parse_int(key, value);
  else if (key == "theta0_signal") c.theta0_signal = parse_double(key, value);
  else if (key == "theta0_idler") c.theta0_idler = parse_double(key, value);
  else if (key == "gamma") c.gamma = parse_double(key, value);
  else if (key == "beta_L_over_gamma") c.beta_L_over_gamma = parse_double(key, value);
  else if (key == "alpha_L") c.alpha_L = parse_double(key, value);
  else if (key == "phi0") c.phi0 = parse_double(key, value);
  else if (key == "pump_fwhm") c.pump_fwhm = parse_double(key, value);
  else if (key == "mu_spatial") c.mu_spatial = parse_double(key, value);
  else if (key == "kappa_L") c.kappa_L = parse_double(key, value);
  else if (key == "slit_acceptance") c.slit_acceptance = parse_double(key, value);
  else if (key == "quad_theta_points") c.quad_theta_points = parse_int(key, value);
  else if (key == "quad_pump_points") c.quad_pump_points = parse_int(key, value);
  else if (key == "slm_pixelated") c.slm_pixelated = parse_bool(key, value);
  else if (key == "purification_filter") c.purification_filter = filter_kind_from_string(value);
  else if (key == "pair_rate_hz") c.pair_rate_hz = parse_double(key, value);
  else throw ConfigError("unknown config key: '" + key + "'");
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  std::map<std::string, std::string> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r\n");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r\n");
      return s.substr(a, b - a + 1);
    };
    if (strip(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    if (pairs.count(key))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    pairs[key] = value;
  }
  return pairs;
}

}  // namespace spdcsim
