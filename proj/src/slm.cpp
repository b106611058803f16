#include "spdcsim/slm.hpp"

#include <cmath>
#include <string>

#include "spdcsim/errors.hpp"

namespace spdcsim {

double pixel_to_angle(double x, double xc, const SourceConfig& cfg) {
  return (x - xc) * cfg.radians_per_pixel();
}

double angle_to_pixel(double theta, double xc, const SourceConfig& cfg) {
  return xc + theta / cfg.radians_per_pixel();
}

CenterPixels default_center_pixels(const SourceConfig& cfg) {
  const double mid = 0.5 * (cfg.pixel_count - 1);
  const double span = cfg.theta0_signal / cfg.radians_per_pixel();
  return {mid + span, mid - span};
}

std::pair<double, double> mask_angle_range(Arm arm, const SourceConfig& cfg) {
  const CenterPixels xc = default_center_pixels(cfg);
  const double c = arm == Arm::signal ? xc.signal : xc.idler;
  // Pixel k covers [k-1/2, k+1/2); the mask spans pixels 0..count-1.
  return {pixel_to_angle(-0.5, c, cfg),
          pixel_to_angle(cfg.pixel_count - 0.5, c, cfg)};
}

double program_phase(const SlmProgram& slm, Arm arm, double theta,
                     const SourceConfig& cfg) {
  const bool idler = arm == Arm::idler;
  const double a = idler ? slm.a1 : slm.a2;
  // zeta selects the output state's relative phase: the mask phase (carried
  // by |HH>) is dialed back by zeta so the |VV> component advances by +zeta.
  const double b = idler ? slm.b1 - slm.zeta : slm.b2;
  const double xc = idler ? slm.xc1 : slm.xc2;

  const double xi = angle_to_pixel(theta, xc, cfg);
  if (xi < -0.5 || xi >= cfg.pixel_count - 0.5)
    throw MaskExtentError("angle " + std::to_string(theta) +
                          " rad falls off the phase mask (pixel " +
                          std::to_string(xi) + ")");
  if (cfg.slm_pixelated) {
    const double k = std::floor(xi + 0.5);  // pixel the photon lands on
    return a * (k - xc) + b;
  }
  return a * (xi - xc) + b;
}

SlmProgram analytic_optimum(const SourceConfig& cfg) {
  const CenterPixels xc = default_center_pixels(cfg);
  SlmProgram slm;
  slm.a1 = cfg.beta_L_over_gamma * cfg.pixel_pitch_d / cfg.distance_D;
  slm.a2 = -slm.a1;
  slm.b1 = cfg.phi0;
  slm.b2 = 0.0;
  slm.xc1 = xc.idler;
  slm.xc2 = xc.signal;
  slm.zeta = 0.0;
  return slm;
}

SlmProgram bell_state_program(const SourceConfig& cfg, double zeta) {
  SlmProgram slm = analytic_optimum(cfg);
  slm.zeta = zeta;
  return slm;
}

}  // namespace spdcsim
