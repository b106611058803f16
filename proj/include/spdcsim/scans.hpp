#pragma once

#include <vector>

#include "spdcsim/filters.hpp"
#include "spdcsim/source_config.hpp"

namespace spdcsim {

struct ScanPoint {
  double x = 0.0;     // scan variable (rad for angular scans, nm for spectra)
  double rate = 0.0;  // normalized to unit peak
};
using Scan = std::vector<ScanPoint>;

/// Coincidence rate vs idler slit center (detuning from the central idler
/// angle). The signal slit sits at theta_offset; both slits are
/// cfg.slit_acceptance wide and the output is their rectangular-window
/// average, i.e. already slit-convolved. Weight: pair filter transmission
/// times |f|^2 with the mismatch measured against the filter center.
Scan angular_coincidence_scan(const SourceConfig& cfg, const FilterModel& filter,
                              double theta_offset, double lo, double hi,
                              int points);

/// Single-count rate on the idler arm: the partner integration spans the
/// whole signal-side mask (the "much wider than the slit" limit) and the
/// filter enters to the first power, evaluated at the idler's own detuning.
Scan angular_singles_scan(const SourceConfig& cfg, const FilterModel& filter,
                          double lo, double hi, int points);

/// Marginal distribution of omega_s = (theta+theta')/gamma over both slit
/// acceptances with filter and |f|^2 weights, unit peak.
Scan collected_spectrum(const SourceConfig& cfg);

/// Peak center as the midpoint of the half-maximum crossings (linear
/// interpolation); robust for flat-topped peaks.
double scan_peak_center(const Scan& scan);

/// Width of the region with rate above frac * peak.
double scan_full_width(const Scan& scan, double frac = 1e-6);

}  // namespace spdcsim
