#pragma once

#include <map>
#include <string>

#include "spdcsim/filters.hpp"

namespace spdcsim {

/// Physical constants of the two-crystal source plus the numerical knobs the
/// forward model needs. Units are fixed per field: lengths in mm, angles in
/// rad, spectral detunings in nm (wavelength shifts from the central
/// frequencies).
struct SourceConfig {
  // Geometry.
  double crystal_length_L = 1.0;    // mm
  double distance_D = 500.0;        // mm, crystals -> phase mask
  double pixel_pitch_d = 0.1;       // mm per SLM pixel
  int pixel_count = 640;
  double theta0_signal = 3.0 * 0.017453292519943295;   // rad (+3 deg)
  double theta0_idler = -3.0 * 0.017453292519943295;   // rad (-3 deg)

  // First-order phase model.
  double gamma = 1.294e-4;           // d(theta')/d(omega_s), rad/nm
  double beta_L_over_gamma = -250.0; // (beta/gamma)*L, rad/rad
  double alpha_L = 0.0;              // residual group delay, rad/nm of pump detuning
  double phi0 = 0.0;                 // constant phase offset, rad

  // Pump and spatial coherence.
  double pump_fwhm = 0.6;            // nm
  double mu_spatial = 1.0;           // scalar spatial-coherence factor in [0, 1]

  // Phase matching: sinc(kappa_L * transverse mismatch), 1/rad.
  double kappa_L = 3141.592653589793;  // first zero at 1 mrad by default

  // Collection.
  double slit_acceptance = 6.5e-3;   // full angular acceptance per arm, rad

  // Numerical and plumbing knobs.
  int quad_theta_points = 101;       // nodes per angular axis
  int quad_pump_points = 41;         // nodes on the pump axis
  bool slm_pixelated = true;         // quantize mask phases per pixel
  FilterKind purification_filter = FilterKind::double_longpass_qe;
  double pair_rate_hz = 100.0;       // coincidence rate without analyzers

  double mask_width_mm() const { return pixel_pitch_d * pixel_count; }
  double radians_per_pixel() const { return pixel_pitch_d / distance_D; }

  /// Throws ConfigError when any invariant is violated.
  void validate() const;
};

/// Canonical key=value serialization (sorted keys, full precision).
std::string source_config_text(const SourceConfig& cfg);

/// FNV-1a hash of the canonical serialization; stamped on every output file.
std::string config_hash(const SourceConfig& cfg);

/// Applies `key=value` to a config field. Throws ConfigError on unknown keys
/// or unparsable values.
void set_config_key(SourceConfig& cfg, const std::string& key, const std::string& value);

/// Reads one flat key=value file ('#' comments, blank lines allowed).
/// Returns raw pairs so callers can route extra (non-source) keys.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

}  // namespace spdcsim
