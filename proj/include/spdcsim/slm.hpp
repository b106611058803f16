#pragma once

#include <utility>

#include "spdcsim/source_config.hpp"

namespace spdcsim {

enum class Arm { signal, idler };

/// Linear per-arm phase programs loaded on the mask. Arm 1 is the idler,
/// arm 2 the signal, matching the alignment convention. Offsets are stored
/// unwrapped; reduction mod 2*pi happens only when the phase is applied.
struct SlmProgram {
  double a1 = 0.0;    // idler slope, rad/pixel
  double b1 = 0.0;    // idler offset, rad
  double xc1 = 0.0;   // idler center pixel
  double a2 = 0.0;    // signal slope, rad/pixel
  double b2 = 0.0;    // signal offset, rad
  double xc2 = 0.0;   // signal center pixel
  double zeta = 0.0;  // extra idler-arm constant selecting the output state, rad
};

/// Angle detuning of pixel x relative to the arm's center pixel xc.
double pixel_to_angle(double x, double xc, const SourceConfig& cfg);

/// Continuous pixel coordinate hit by a photon at angle detuning theta.
double angle_to_pixel(double theta, double xc, const SourceConfig& cfg);

/// Center pixels for both arms with the mask centered on the pump axis.
struct CenterPixels {
  double signal = 0.0;
  double idler = 0.0;
};
CenterPixels default_center_pixels(const SourceConfig& cfg);

/// Angle-detuning interval covered by the mask for one arm (default centers).
std::pair<double, double> mask_angle_range(Arm arm, const SourceConfig& cfg);

/// Phase the mask applies to a photon at angle detuning theta on the given
/// arm. With cfg.slm_pixelated the phase is constant across each pixel
/// (evaluated at the pixel the photon lands on); otherwise it is the ideal
/// linear ramp a*(D/d)*theta + b. Throws MaskExtentError when theta falls
/// off the mask.
double program_phase(const SlmProgram& slm, Arm arm, double theta,
                     const SourceConfig& cfg);

/// The closed-form compensating program: a1 = -a2 = (beta/gamma)L * d/D,
/// b1 + b2 = phi0 (split b1 = phi0, b2 = 0), zeta = 0.
SlmProgram analytic_optimum(const SourceConfig& cfg);

/// Analytic optimum with an extra constant zeta on the idler offset;
/// zeta in {0, pi, pi/2} targets the Phi+, Phi- and Phi_{pi/2} states.
SlmProgram bell_state_program(const SourceConfig& cfg, double zeta);

}  // namespace spdcsim
