#include "spdcsim/tomography.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "spdcsim/errors.hpp"
#include "spdcsim/io.hpp"
#include "spdcsim/rng.hpp"

namespace spdcsim {

namespace {

constexpr double kPi = 3.141592653589793238;

double wrap_half_turn(double angle) {
  double a = std::fmod(angle, kPi);
  if (a < 0.0) a += kPi;
  return a;
}

Eigen::Matrix2cd rotation(double t) {
  Eigen::Matrix2cd r;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

Eigen::Matrix2cd retarder(double angle, std::complex<double> slow_phase) {
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = slow_phase;
  return rotation(angle) * d * rotation(-angle);
}

}  // namespace

MeasurementSetting MeasurementSetting::from_radians(double q1, double h1, double p1,
                                                    double q2, double h2, double p2) {
  MeasurementSetting s;
  s.q1 = wrap_half_turn(q1);
  s.h1 = wrap_half_turn(h1);
  s.p1 = wrap_half_turn(p1);
  s.q2 = wrap_half_turn(q2);
  s.h2 = wrap_half_turn(h2);
  s.p2 = wrap_half_turn(p2);
  return s;
}

Eigen::Matrix2cd quarter_wave(double angle) {
  return retarder(angle, std::complex<double>(0.0, 1.0));
}

Eigen::Matrix2cd half_wave(double angle) {
  return retarder(angle, std::complex<double>(-1.0, 0.0));
}

Eigen::Vector4cd projector_state(const MeasurementSetting& s) {
  auto arm = [](double q, double h, double p) -> Eigen::Vector2cd {
    Eigen::Vector2cd pol(std::cos(p), std::sin(p));
    return half_wave(h) * (quarter_wave(q) * pol);
  };
  const Eigen::Vector2cd v1 = arm(s.q1, s.h1, s.p1);
  const Eigen::Vector2cd v2 = arm(s.q2, s.h2, s.p2);
  Eigen::Vector4cd v;
  v << v1(0) * v2(0), v1(0) * v2(1), v1(1) * v2(0), v1(1) * v2(1);
  return v;
}

double setting_probability(const PolarizationDensityMatrix& rho,
                           const MeasurementSetting& s) {
  const Eigen::Vector4cd v = projector_state(s);
  return std::max(0.0, v.dot(rho.matrix() * v).real());
}

std::vector<MeasurementSetting> default_setting_set() {
  // Per-arm realizations of H, V, D and the circular state (1, i)/sqrt(2).
  struct ArmSetting { double q, h, p; };
  const ArmSetting arm[4] = {
      {0.0, 0.0, 0.0},          // H
      {0.0, 0.0, kPi / 2.0},    // V
      {0.0, kPi / 8.0, 0.0},    // D
      {kPi / 4.0, 0.0, 0.0},    // R
  };
  std::vector<MeasurementSetting> settings;
  settings.reserve(16);
  for (const auto& a1 : arm)
    for (const auto& a2 : arm)
      settings.push_back(MeasurementSetting::from_radians(a1.q, a1.h, a1.p,
                                                          a2.q, a2.h, a2.p));
  return settings;
}

double gram_min_singular_value(const std::vector<MeasurementSetting>& settings) {
  const int n = static_cast<int>(settings.size());
  std::vector<Eigen::Vector4cd> states(n);
  for (int i = 0; i < n; ++i) states[i] = projector_state(settings[i]);
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram(i, j) = std::norm(states[i].dot(states[j]));  // tr(Pi Pj)
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  return svd.singularValues().minCoeff();
}

TomographyDataset simulate_counts(const PolarizationDensityMatrix& rho,
                                  const std::vector<MeasurementSetting>& settings,
                                  double total_pairs, std::uint64_t seed,
                                  bool noiseless) {
  if (!(total_pairs > 0)) throw ConfigError("total_pairs must be > 0");
  TomographyDataset data;
  data.settings = settings;
  data.total_pairs = total_pairs;
  data.counts.reserve(settings.size());
  std::mt19937_64 rng(derive_seed(seed, 0));
  for (const auto& s : settings) {
    const double expected = total_pairs * setting_probability(rho, s);
    data.counts.push_back(noiseless
                              ? static_cast<std::uint64_t>(std::llround(expected))
                              : poisson_sample(rng, expected));
  }
  return data;
}

// ---------------------------------------------------------------------------
// Maximum-likelihood reconstruction on the Cholesky-like parameterization
// rho(t) = T^dagger T / tr(T^dagger T), T lower triangular, 16 real numbers.
// ---------------------------------------------------------------------------

namespace {

using Params = Eigen::Matrix<double, 16, 1>;

// Lower-triangular slots for the 12 off-diagonal parameters, as (row, col).
constexpr int kOffDiag[6][2] = {{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}};

Eigen::Matrix4cd build_t(const Params& t) {
  Eigen::Matrix4cd T = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) T(i, i) = t(i);
  for (int k = 0; k < 6; ++k)
    T(kOffDiag[k][0], kOffDiag[k][1]) = {t(4 + 2 * k), t(5 + 2 * k)};
  return T;
}

struct Likelihood {
  // Normalized counts (n_i / N) and projector states.
  std::vector<Eigen::Vector4cd> states;
  std::vector<double> fractions;

  // Negative normalized log-likelihood sum_i (p_i - c_i ln p_i) and gradient.
  double evaluate(const Params& t, Params& grad) const {
    const Eigen::Matrix4cd T = build_t(t);
    const Eigen::Matrix4cd S = T.adjoint() * T;
    const double tau = S.trace().real();
    if (!(tau > 1e-300)) {
      grad.setZero();
      return 1e300;
    }

    double f = 0.0;
    Eigen::Matrix4cd b = Eigen::Matrix4cd::Zero();
    double s_sum = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const Eigen::Vector4cd& v = states[i];
      const double p = std::max(v.dot(S * v).real() / tau, 1e-15);
      f += p - fractions[i] * std::log(p);
      const double g = fractions[i] / p - 1.0;
      b.noalias() += g * (v * v.adjoint());
      s_sum += g * p;
    }

    // d(logL) = 2 Re tr(dT W), W = (B - s I) T^dagger / tau.
    const Eigen::Matrix4cd w =
        (b - s_sum * Eigen::Matrix4cd::Identity()) * T.adjoint() / tau;
    for (int i = 0; i < 4; ++i) grad(i) = -2.0 * w(i, i).real();
    for (int k = 0; k < 6; ++k) {
      const std::complex<double> wkj = w(kOffDiag[k][1], kOffDiag[k][0]);
      grad(4 + 2 * k) = -2.0 * wkj.real();
      grad(5 + 2 * k) = 2.0 * wkj.imag();
    }
    return f;
  }
};

struct LbfgsOutcome {
  Params x;
  double f = 0.0;
  double grad_norm = 0.0;
  bool converged = false;
  int iterations = 0;
};

LbfgsOutcome lbfgs_minimize(const Likelihood& like, Params x, double grad_tol,
                            int max_iterations) {
  constexpr int kHistory = 10;
  std::vector<Params> s_hist, y_hist;
  std::vector<double> rho_hist;

  Params g;
  double f = like.evaluate(x, g);

  LbfgsOutcome out;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    const double gnorm = g.norm();
    if (gnorm <= grad_tol) {
      out.converged = true;
      break;
    }

    // Two-loop recursion.
    Params q = g;
    const int m = static_cast<int>(s_hist.size());
    std::vector<double> alpha(m);
    for (int i = m - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    if (m > 0) {
      const double gamma =
          s_hist[m - 1].dot(y_hist[m - 1]) / y_hist[m - 1].squaredNorm();
      q *= gamma;
    }
    for (int i = 0; i < m; ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(q);
      q += (alpha[i] - beta) * s_hist[i];
    }
    Params dir = -q;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      dir = -g;
      slope = -gnorm * gnorm;
    }

    // Backtracking Armijo line search.
    double step = 1.0;
    Params x_new;
    Params g_new;
    double f_new = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + step * dir;
      f_new = like.evaluate(x_new, g_new);
      if (f_new <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // stagnated at numerical precision

    const Params s_vec = x_new - x;
    const Params y_vec = g_new - g;
    const double sy = s_vec.dot(y_vec);
    if (sy > 1e-14 * s_vec.norm() * y_vec.norm()) {
      s_hist.push_back(s_vec);
      y_hist.push_back(y_vec);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > kHistory) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho_hist.erase(rho_hist.begin());
      }
    }
    x = x_new;
    f = f_new;
    g = g_new;
  }

  out.x = x;
  out.f = f;
  out.grad_norm = g.norm();
  out.iterations = iter;
  return out;
}

}  // namespace

ReconstructionResult mle_reconstruct(const TomographyDataset& data,
                                     const MleOptions& opts,
                                     const std::optional<Eigen::Vector4cd>& target,
                                     std::uint64_t seed) {
  if (data.settings.size() < 16)
    throw ConfigError("tomography needs at least 16 settings, got " +
                      std::to_string(data.settings.size()));
  if (data.settings.size() != data.counts.size())
    throw ConfigError("settings/counts length mismatch");
  if (!(data.total_pairs > 0)) throw ConfigError("dataset total_pairs must be > 0");
  if (gram_min_singular_value(data.settings) < 1e-8)
    throw ConfigError("degenerate tomography settings: projector Gram matrix is singular");

  Likelihood like;
  like.states.reserve(data.settings.size());
  like.fractions.reserve(data.settings.size());
  for (std::size_t i = 0; i < data.settings.size(); ++i) {
    like.states.push_back(projector_state(data.settings[i]));
    like.fractions.push_back(static_cast<double>(data.counts[i]) / data.total_pairs);
  }

  LbfgsOutcome best;
  bool have_best = false;
  int total_iterations = 0;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    Params x0;
    if (r == 0) {
      x0.setZero();
      for (int i = 0; i < 4; ++i) x0(i) = 0.5;  // maximally mixed start
    } else {
      std::mt19937_64 rng(derive_seed(seed, 100 + static_cast<std::uint64_t>(r)));
      for (int i = 0; i < 16; ++i) x0(i) = 0.4 * normal01(rng);
      for (int i = 0; i < 4; ++i) x0(i) = 0.25 + std::fabs(x0(i));
      x0.normalize();
    }
    LbfgsOutcome run = lbfgs_minimize(like, x0, opts.grad_tol, opts.max_iterations);
    total_iterations += run.iterations;
    if (!have_best || run.f < best.f ||
        (run.f == best.f && run.converged && !best.converged)) {
      best = run;
      have_best = true;
    }
  }

  const Eigen::Matrix4cd T = build_t(best.x);
  Eigen::Matrix4cd S = T.adjoint() * T;
  S /= S.trace().real();
  S = 0.5 * (S + S.adjoint().eval());

  ReconstructionResult result;
  result.rho = PolarizationDensityMatrix(S);
  result.rho.require_valid();
  result.log_likelihood = log_likelihood(result.rho, data);
  result.converged = best.converged;
  result.gradient_norm = best.grad_norm;
  result.iterations = total_iterations;
  if (target) result.fidelity_vs_target = fidelity(result.rho, *target);
  return result;
}

double log_likelihood(const PolarizationDensityMatrix& rho,
                      const TomographyDataset& data) {
  double ll = 0.0;
  for (std::size_t i = 0; i < data.settings.size(); ++i) {
    const double p = std::max(setting_probability(rho, data.settings[i]), 1e-15);
    const double mu = data.total_pairs * p;
    const double n = static_cast<double>(data.counts[i]);
    ll += n * std::log(mu) - mu - std::lgamma(n + 1.0);
  }
  return ll;
}

BootstrapResult bootstrap_error(const TomographyDataset& data,
                                const Eigen::Vector4cd& target, int resamples,
                                std::uint64_t seed, const MleOptions& opts) {
  if (resamples < 2) throw ConfigError("bootstrap needs at least 2 resamples");

  std::vector<double> fidelities(resamples, 0.0);
  std::vector<char> ok(resamples, 0);

  // Work items are self-seeded, so the outcome does not depend on which
  // thread picks them up.
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int r = next.fetch_add(1); r < resamples; r = next.fetch_add(1)) {
      TomographyDataset boot = data;
      std::mt19937_64 rng(derive_seed(seed, 17 + static_cast<std::uint64_t>(r)));
      for (auto& n : boot.counts)
        n = poisson_sample(rng, static_cast<double>(n));
      try {
        const ReconstructionResult rec = mle_reconstruct(
            boot, opts, target, derive_seed(seed, 7000 + static_cast<std::uint64_t>(r)));
        if (rec.converged) {
          fidelities[r] = *rec.fidelity_vs_target;
          ok[r] = 1;
        }
      } catch (const std::exception&) {
        // counted as a failure below
      }
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const int n_threads = std::clamp<int>(hw == 0 ? 1 : static_cast<int>(hw), 1, 8);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  BootstrapResult result;
  result.resamples = resamples;
  double mean = 0.0;
  int n_ok = 0;
  for (int r = 0; r < resamples; ++r) {
    if (ok[r]) {
      mean += fidelities[r];
      ++n_ok;
    }
  }
  result.failures = resamples - n_ok;
  if (result.failures * 10 > resamples)
    throw NumericalError("bootstrap: " + std::to_string(result.failures) + " of " +
                         std::to_string(resamples) + " reconstructions failed");
  mean /= n_ok;
  double var = 0.0;
  for (int r = 0; r < resamples; ++r)
    if (ok[r]) var += (fidelities[r] - mean) * (fidelities[r] - mean);
  result.fidelity_std = std::sqrt(var / (n_ok - 1));
  return result;
}

void save_dataset_csv(const TomographyDataset& data, const std::string& path,
                      const std::string& cfg_hash) {
  std::vector<std::string> comments;
  if (!cfg_hash.empty()) comments.push_back("config_hash=" + cfg_hash);
  comments.push_back("total_pairs=" + format_double(data.total_pairs, 17));
  comments.push_back("total_exposure_s=" + format_double(data.total_exposure_s, 17));
  std::vector<std::vector<double>> rows;
  rows.reserve(data.settings.size());
  constexpr double deg = 180.0 / kPi;
  for (std::size_t i = 0; i < data.settings.size(); ++i) {
    const auto& s = data.settings[i];
    rows.push_back({s.q1 * deg, s.h1 * deg, s.p1 * deg, s.q2 * deg, s.h2 * deg,
                    s.p2 * deg, static_cast<double>(data.counts[i])});
  }
  write_csv(path, comments,
            {"q1_deg", "h1_deg", "p1_deg", "q2_deg", "h2_deg", "p2_deg", "counts"},
            rows, 15);
}

TomographyDataset load_dataset_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  TomographyDataset data;
  for (const auto& c : table.comments) {
    const auto eq = c.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = c.substr(0, eq);
    const std::string value = c.substr(eq + 1);
    if (key == "total_pairs") data.total_pairs = std::stod(value);
    if (key == "total_exposure_s") data.total_exposure_s = std::stod(value);
  }
  constexpr double rad = kPi / 180.0;
  for (const auto& row : table.rows) {
    if (row.size() != 7)
      throw ConfigError(path + ": dataset rows need 7 columns");
    data.settings.push_back(MeasurementSetting::from_radians(
        row[0] * rad, row[1] * rad, row[2] * rad, row[3] * rad, row[4] * rad,
        row[5] * rad));
    if (row[6] < 0.0) throw ConfigError(path + ": negative count");
    data.counts.push_back(static_cast<std::uint64_t>(std::llround(row[6])));
  }
  return data;
}

}  // namespace spdcsim
