#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "spdcsim/density_matrix.hpp"

namespace spdcsim {

/// Fixed-format double, stable across runs (used everywhere we write files).
std::string format_double(double v, int precision = 12);

/// Writes a CSV with '#' comment lines, one header line and numeric rows.
void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows, int precision = 12);

struct CsvTable {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::string& path);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

/// 4x4 nested arrays of [re, im] pairs plus metadata.
nlohmann::json density_matrix_to_json(const PolarizationDensityMatrix& rho,
                                      const std::string& stage,
                                      const std::string& cfg_hash);
PolarizationDensityMatrix density_matrix_from_json(const nlohmann::json& j);

}  // namespace spdcsim
