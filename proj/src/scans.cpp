#include "spdcsim/scans.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "spdcsim/errors.hpp"
#include "spdcsim/math_util.hpp"
#include "spdcsim/slm.hpp"

namespace spdcsim {

namespace {

// Inner resolutions for the slit averages and the partner-arm integral.
constexpr int kSlitNodes = 48;
constexpr int kPartnerNodes = 4096;

std::vector<double> window_nodes(double center, double halfwidth, int n) {
  if (!(halfwidth > 0.0)) return {center};
  std::vector<double> nodes(n);
  const double step = 2.0 * halfwidth / n;
  for (int i = 0; i < n; ++i) nodes[i] = center - halfwidth + (i + 0.5) * step;
  return nodes;
}

void check_scan_args(const SourceConfig& cfg, double lo, double hi, int points) {
  if (points < 2) throw ConfigError("scan needs at least 2 points");
  if (!(hi > lo)) throw ConfigError("scan range is empty");
  const auto [mask_lo, mask_hi] = mask_angle_range(Arm::idler, cfg);
  if (lo < mask_lo || hi > mask_hi)
    throw ConfigError("scan range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] rad exceeds the mask extent [" + std::to_string(mask_lo) +
                      ", " + std::to_string(mask_hi) + "]");
}

void normalize_peak(Scan& scan) {
  double peak = 0.0;
  for (const auto& p : scan) peak = std::max(peak, p.rate);
  if (peak > 0.0)
    for (auto& p : scan) p.rate /= peak;
}

}  // namespace

Scan angular_coincidence_scan(const SourceConfig& cfg, const FilterModel& filter,
                              double theta_offset, double lo, double hi,
                              int points) {
  check_scan_args(cfg, lo, hi, points);
  const double hw = 0.5 * cfg.slit_acceptance;
  const auto [sig_lo, sig_hi] = mask_angle_range(Arm::signal, cfg);
  if (theta_offset - hw < sig_lo || theta_offset + hw > sig_hi)
    throw ConfigError("signal slit at offset " + std::to_string(theta_offset) +
                      " rad exceeds the mask extent");

  const std::vector<double> sig = window_nodes(theta_offset, hw, kSlitNodes);
  const double c0 = filter.center_detuning_nm();

  Scan scan(points);
  const double step = (hi - lo) / (points - 1);
  for (int k = 0; k < points; ++k) {
    const double center = lo + k * step;
    const std::vector<double> idl = window_nodes(center, hw, kSlitNodes);
    double acc = 0.0;
    for (double theta : sig) {
      for (double theta_p : idl) {
        const double u = theta + theta_p;
        const double f = sinc(cfg.kappa_L * (u - cfg.gamma * c0));
        acc += f * f * filter.pair_transmission(u / cfg.gamma);
      }
    }
    scan[k] = {center, acc / (sig.size() * idl.size())};
  }
  normalize_peak(scan);
  return scan;
}

Scan angular_singles_scan(const SourceConfig& cfg, const FilterModel& filter,
                          double lo, double hi, int points) {
  check_scan_args(cfg, lo, hi, points);
  const double hw = 0.5 * cfg.slit_acceptance;
  // "Much wider than the slit": the partner integration covers the whole
  // signal-side mask.
  const auto [sig_lo, sig_hi] = mask_angle_range(Arm::signal, cfg);
  const std::vector<double> partner =
      window_nodes(0.5 * (sig_lo + sig_hi), 0.5 * (sig_hi - sig_lo), kPartnerNodes);
  const double c0 = filter.center_detuning_nm();

  Scan scan(points);
  const double step = (hi - lo) / (points - 1);
  for (int k = 0; k < points; ++k) {
    const double center = lo + k * step;
    const std::vector<double> idl = window_nodes(center, hw, kSlitNodes);
    double acc = 0.0;
    for (double theta_p : idl) {
      double inner = 0.0;
      for (double theta : partner) {
        const double u = theta + theta_p;
        const double f = sinc(cfg.kappa_L * (u - cfg.gamma * c0));
        // Filter to the first power, at the scanned (idler) photon's detuning.
        inner += f * f * filter.arm_transmission(-u / cfg.gamma);
      }
      acc += inner;
    }
    scan[k] = {center, acc / (partner.size() * idl.size())};
  }
  normalize_peak(scan);
  return scan;
}

Scan collected_spectrum(const SourceConfig& cfg) {
  const int n = cfg.quad_theta_points;
  if (n <= 0) throw ConfigError("quad_theta_points must be > 0");
  const double hw = 0.5 * cfg.slit_acceptance;
  const double step = 2.0 * hw / n;
  const FilterModel filter = FilterModel::from_kind(cfg.purification_filter);
  const double c0 = filter.center_detuning_nm();

  // theta + theta' on the tensor midpoint grid takes 2n-1 evenly spaced
  // values with triangular multiplicity; the marginal needs no double loop.
  Scan scan(2 * n - 1);
  for (int k = 0; k < 2 * n - 1; ++k) {
    const double u = (k - (n - 1)) * step;
    const double mult = n - std::abs(k - (n - 1));
    const double f = sinc(cfg.kappa_L * (u - cfg.gamma * c0));
    scan[k] = {u / cfg.gamma, mult * f * f * filter.pair_transmission(u / cfg.gamma)};
  }
  normalize_peak(scan);
  return scan;
}

double scan_peak_center(const Scan& scan) {
  if (scan.empty()) throw ConfigError("empty scan");
  std::size_t i_max = 0;
  for (std::size_t i = 1; i < scan.size(); ++i)
    if (scan[i].rate > scan[i_max].rate) i_max = i;
  const double half = 0.5 * scan[i_max].rate;

  auto cross = [&](std::size_t from, int dir) {
    std::size_t i = from;
    while (true) {
      const std::size_t next = i + dir;
      if (next >= scan.size()) return scan[i].x;  // hit the edge
      if (scan[next].rate < half) {
        const double t = (scan[i].rate - half) / (scan[i].rate - scan[next].rate);
        return scan[i].x + t * (scan[next].x - scan[i].x);
      }
      i = next;
    }
  };
  const double left = cross(i_max, -1);
  const double right = cross(i_max, +1);
  return 0.5 * (left + right);
}

double scan_full_width(const Scan& scan, double frac) {
  if (scan.empty()) throw ConfigError("empty scan");
  double peak = 0.0;
  for (const auto& p : scan) peak = std::max(peak, p.rate);
  const double cut = frac * peak;
  double lo = 0.0, hi = 0.0;
  bool seen = false;
  for (const auto& p : scan) {
    if (p.rate > cut) {
      if (!seen) lo = p.x;
      hi = p.x;
      seen = true;
    }
  }
  return seen ? hi - lo : 0.0;
}

}  // namespace spdcsim
