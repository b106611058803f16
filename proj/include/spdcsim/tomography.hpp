#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spdcsim/density_matrix.hpp"

namespace spdcsim {

/// Waveplate/polarizer settings for one projective measurement, per arm:
/// quarter-wave angle, half-wave angle, polarizer transmission axis (rad).
/// Angles are normalized into [0, pi).
struct MeasurementSetting {
  double q1 = 0.0, h1 = 0.0, p1 = 0.0;
  double q2 = 0.0, h2 = 0.0, p2 = 0.0;

  static MeasurementSetting from_radians(double q1, double h1, double p1,
                                         double q2, double h2, double p2);
};

struct TomographyDataset {
  std::vector<MeasurementSetting> settings;
  std::vector<std::uint64_t> counts;
  double total_pairs = 0.0;      // pairs emitted over the acquisition
  double total_exposure_s = 0.0;
};

/// Jones matrices, fast axis at `angle` from horizontal.
/// Conventions are fixed here and pinned by tests: quarter-wave retardance
/// pi/2 (diag(1, i) at zero), half-wave retardance pi (diag(1, -1) at zero).
Eigen::Matrix2cd quarter_wave(double angle);
Eigen::Matrix2cd half_wave(double angle);

/// Two-qubit analyzer state for a setting: per arm, the polarizer axis state
/// propagated through the quarter- then half-wave plate; the projector is the
/// rank-1 outer product of the tensor product.
Eigen::Vector4cd projector_state(const MeasurementSetting& s);

/// Detection probability of the setting on rho.
double setting_probability(const PolarizationDensityMatrix& rho,
                           const MeasurementSetting& s);

/// The standard 16-projector product set {H, V, D, R} x {H, V, D, R},
/// realized through waveplate angles.
std::vector<MeasurementSetting> default_setting_set();

/// Smallest singular value of the 16x16 operator Gram matrix; zero means the
/// settings cannot determine a two-qubit state.
double gram_min_singular_value(const std::vector<MeasurementSetting>& settings);

/// Expected count per setting is total_pairs * <P_i>. Poisson-sampled unless
/// `noiseless` (then rounded to the nearest integer). Deterministic for a
/// fixed seed.
TomographyDataset simulate_counts(const PolarizationDensityMatrix& rho,
                                  const std::vector<MeasurementSetting>& settings,
                                  double total_pairs, std::uint64_t seed,
                                  bool noiseless = false);

struct MleOptions {
  int restarts = 3;          // deterministic start + (restarts-1) random ones
  double grad_tol = 1e-8;    // on the per-pair normalized log-likelihood
  int max_iterations = 2000;
};

struct ReconstructionResult {
  PolarizationDensityMatrix rho;
  double log_likelihood = 0.0;  // full Poisson log-pmf at the optimum
  std::optional<double> fidelity_vs_target;
  std::optional<double> fidelity_error;  // bootstrap std, filled by callers
  bool converged = false;
  double gradient_norm = 0.0;
  int iterations = 0;
};

/// Maximum-likelihood reconstruction: rho = T^dagger T / tr(T^dagger T) with
/// T lower triangular (16 real parameters), Poisson likelihood ascended by
/// L-BFGS with analytic gradients and random restarts. Throws ConfigError on
/// fewer than 16 settings or a singular Gram matrix; non-convergence is
/// reported in the result.
ReconstructionResult mle_reconstruct(const TomographyDataset& data,
                                     const MleOptions& opts = {},
                                     const std::optional<Eigen::Vector4cd>& target = std::nullopt,
                                     std::uint64_t seed = 0);

/// Full Poisson log-pmf of the dataset under rho (with lgamma terms), for
/// likelihood comparisons.
double log_likelihood(const PolarizationDensityMatrix& rho,
                      const TomographyDataset& data);

struct BootstrapResult {
  double fidelity_std = 0.0;
  int failures = 0;
  int resamples = 0;
};

/// Parametric bootstrap: resample counts ~ Poisson(n_i), re-run the MLE,
/// return the std of the fidelity vs `target` across resamples. Resamples run
/// in parallel with per-resample RNG streams; more than 10% reconstruction
/// failures raises NumericalError.
BootstrapResult bootstrap_error(const TomographyDataset& data,
                                const Eigen::Vector4cd& target, int resamples,
                                std::uint64_t seed, const MleOptions& opts = {});

/// CSV round-trip (angles in degrees, counts; metadata in '#' comments).
void save_dataset_csv(const TomographyDataset& data, const std::string& path,
                      const std::string& cfg_hash = "");
TomographyDataset load_dataset_csv(const std::string& path);

}  // namespace spdcsim
