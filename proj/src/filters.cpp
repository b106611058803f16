#include "spdcsim/filters.hpp"

#include <algorithm>
#include <cmath>

#include "spdcsim/errors.hpp"

namespace spdcsim {

std::string to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::ideal: return "ideal";
    case FilterKind::bandpass_10nm: return "bandpass_10nm";
    case FilterKind::double_longpass_qe: return "double_longpass_qe";
  }
  return "ideal";
}

FilterKind filter_kind_from_string(const std::string& name) {
  if (name == "ideal") return FilterKind::ideal;
  if (name == "bandpass_10nm") return FilterKind::bandpass_10nm;
  if (name == "double_longpass_qe") return FilterKind::double_longpass_qe;
  throw ConfigError("unknown filter kind: '" + name + "'");
}

FilterModel FilterModel::ideal() { return FilterModel(FilterKind::ideal); }

FilterModel FilterModel::bandpass(double center_nm, double width_nm) {
  FilterModel f(FilterKind::bandpass_10nm);
  f.center_nm_ = center_nm;
  f.width_nm_ = width_nm;
  return f;
}

FilterModel FilterModel::double_longpass(double cuton_nm) {
  FilterModel f(FilterKind::double_longpass_qe);
  f.cuton_nm_ = cuton_nm;
  return f;
}

FilterModel FilterModel::from_kind(FilterKind kind) {
  switch (kind) {
    case FilterKind::ideal: return ideal();
    case FilterKind::bandpass_10nm: return bandpass();
    case FilterKind::double_longpass_qe: return double_longpass();
  }
  return ideal();
}

void FilterModel::set_qe_table(std::vector<std::pair<double, double>> table) {
  std::sort(table.begin(), table.end());
  for (auto& [detuning, eff] : table) eff = std::clamp(eff, 0.0, 1.0);
  qe_ = std::move(table);
}

double FilterModel::qe(double omega_arm_nm) const {
  if (qe_.empty()) return 1.0;
  if (omega_arm_nm <= qe_.front().first) return qe_.front().second;
  if (omega_arm_nm >= qe_.back().first) return qe_.back().second;
  auto hi = std::upper_bound(qe_.begin(), qe_.end(),
                             std::make_pair(omega_arm_nm, 2.0));
  auto lo = hi - 1;
  const double t = (omega_arm_nm - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

double FilterModel::arm_transmission(double omega_arm_nm) const {
  switch (kind_) {
    case FilterKind::ideal:
      return 1.0;
    case FilterKind::bandpass_10nm: {
      const double off = omega_arm_nm - (center_nm_ - kDegenerateWavelengthNm);
      return std::fabs(off) <= 0.5 * width_nm_ ? 1.0 : 0.0;
    }
    case FilterKind::double_longpass_qe: {
      const double lambda = kDegenerateWavelengthNm + omega_arm_nm;
      // Logistic cut-on, ~12%..88% transition over transition_nm_.
      const double scale = transition_nm_ / 4.0;
      const double step = 1.0 / (1.0 + std::exp(-(lambda - cuton_nm_) / scale));
      return step * step * qe(omega_arm_nm);
    }
  }
  return 1.0;
}

double FilterModel::pair_transmission(double omega_s_nm) const {
  if (kind_ == FilterKind::ideal) return 1.0;
  return arm_transmission(omega_s_nm) * arm_transmission(-omega_s_nm);
}

double FilterModel::center_detuning_nm() const {
  if (kind_ == FilterKind::bandpass_10nm)
    return center_nm_ - kDegenerateWavelengthNm;
  return 0.0;
}

}  // namespace spdcsim
