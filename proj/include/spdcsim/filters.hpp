#pragma once

#include <string>
#include <utility>
#include <vector>

namespace spdcsim {

/// Degenerate signal/idler wavelength for a 405 nm pump.
inline constexpr double kDegenerateWavelengthNm = 810.0;

enum class FilterKind { ideal, bandpass_10nm, double_longpass_qe };

std::string to_string(FilterKind kind);
FilterKind filter_kind_from_string(const std::string& name);

/// Spectral filter stack sitting in front of each detector.
///
/// Transmissions are expressed against wavelength detunings from degeneracy
/// (nm). `arm_transmission` is what one photon of the pair sees given its own
/// detuning; `pair_transmission` is the product over the pair, with the signal
/// at +omega_s and the idler at -omega_s.
///
/// bandpass_10nm      ideal rectangle, full width `width_nm` around `center_nm`.
/// double_longpass_qe two stacked longpass filters (logistic cut-on at
///                    `cuton_nm`, 2 nm transition) times the detector quantum
///                    efficiency (flat 1.0 unless a table is supplied).
class FilterModel {
 public:
  static FilterModel ideal();
  static FilterModel bandpass(double center_nm = kDegenerateWavelengthNm,
                              double width_nm = 10.0);
  static FilterModel double_longpass(double cuton_nm = 715.0);
  static FilterModel from_kind(FilterKind kind);

  FilterKind kind() const { return kind_; }
  double center_nm() const { return center_nm_; }
  double width_nm() const { return width_nm_; }
  double cuton_nm() const { return cuton_nm_; }

  double arm_transmission(double omega_arm_nm) const;
  double pair_transmission(double omega_s_nm) const;

  /// Passband center as a signal-detuning offset; zero for the stock filters.
  double center_detuning_nm() const;

  /// Detector quantum efficiency vs detuning, linearly interpolated and
  /// clamped at the table ends. Entries are clipped into [0, 1].
  void set_qe_table(std::vector<std::pair<double, double>> detuning_to_efficiency);

 private:
  explicit FilterModel(FilterKind kind) : kind_(kind) {}

  double qe(double omega_arm_nm) const;

  FilterKind kind_ = FilterKind::ideal;
  double center_nm_ = kDegenerateWavelengthNm;
  double width_nm_ = 10.0;
  double cuton_nm_ = 715.0;
  double transition_nm_ = 2.0;
  std::vector<std::pair<double, double>> qe_;  // sorted by detuning; empty = flat 1
};

}  // namespace spdcsim
