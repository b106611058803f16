#include "spdcsim/physics.hpp"

#include <cmath>

#include "spdcsim/errors.hpp"
#include "spdcsim/math_util.hpp"

namespace spdcsim {

double signal_detuning_from_angles(double theta, double theta_prime,
                                   const SourceConfig& cfg) {
  return (theta + theta_prime) / cfg.gamma;
}

double spdc_phase(const AngularPoint& p, const SourceConfig& cfg) {
  return cfg.phi0 + cfg.alpha_L * p.omega_p -
         cfg.beta_L_over_gamma * p.theta + cfg.beta_L_over_gamma * p.theta_prime;
}

double phase_matching_amplitude(double theta, double theta_prime,
                                double omega_s, const SourceConfig& cfg) {
  const double u = cfg.kappa_L * (theta + theta_prime - cfg.gamma * omega_s);
  return sinc(u);
}

double phase_matching_amplitude(const AngularPoint& p, const SourceConfig& cfg) {
  const double omega_s = signal_detuning_from_angles(p.theta, p.theta_prime, cfg);
  return phase_matching_amplitude(p.theta, p.theta_prime, omega_s, cfg);
}

double pump_spectral_density(double omega_p, const SourceConfig& cfg) {
  if (!(cfg.pump_fwhm > 0)) throw ConfigError("pump_fwhm must be > 0");
  static const double four_ln2 = 4.0 * std::log(2.0);
  static const double peak_factor =
      2.0 * std::sqrt(std::log(2.0) / 3.141592653589793238);
  const double x = omega_p / cfg.pump_fwhm;
  return peak_factor / cfg.pump_fwhm * std::exp(-four_ln2 * x * x);
}

}  // namespace spdcsim
