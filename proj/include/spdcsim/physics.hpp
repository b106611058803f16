#pragma once

#include "spdcsim/source_config.hpp"

namespace spdcsim {

/// One point of the emission space. Angles are detunings (rad) from the
/// central signal/idler angles; omega_p is the pump wavelength detuning (nm).
struct AngularPoint {
  double theta = 0.0;
  double theta_prime = 0.0;
  double omega_p = 0.0;
};

/// Signal detuning (nm) fixed by transverse-momentum conservation,
/// theta' = -theta + gamma * omega_s.
double signal_detuning_from_angles(double theta, double theta_prime,
                                   const SourceConfig& cfg);

/// First-order phase between the |HH> and |VV> pair amplitudes:
/// phi0 + alpha_L*omega_p - (beta/gamma)L*theta + (beta/gamma)L*theta'.
double spdc_phase(const AngularPoint& p, const SourceConfig& cfg);

/// Longitudinal phase-matching amplitude sinc(u) with
/// u = kappa_L * (theta + theta' - gamma*omega_s). The caller chooses omega_s:
/// scans and the coherence integral pin it to the filter's spectral center,
/// while on the conservation surface (omega_s = (theta+theta')/gamma) the
/// mismatch vanishes and the amplitude is 1.
double phase_matching_amplitude(double theta, double theta_prime,
                                double omega_s, const SourceConfig& cfg);

/// On-surface overload: always 1 by construction.
double phase_matching_amplitude(const AngularPoint& p, const SourceConfig& cfg);

/// Normalized Gaussian pump spectral intensity |A(omega_p)|^2 with the
/// configured FWHM. Throws ConfigError when the FWHM is not positive.
double pump_spectral_density(double omega_p, const SourceConfig& cfg);

}  // namespace spdcsim
