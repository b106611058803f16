#include "spdcsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "spdcsim/errors.hpp"

namespace spdcsim {

std::string format_double(double v, int precision) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows, int precision) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  for (const auto& c : comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "");
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << format_double(row[i], precision) << (i + 1 < row.size() ? "," : "");
    out << '\n';
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  CsvTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string c = line.substr(1);
      if (!c.empty() && c[0] == ' ') c.erase(0, 1);
      table.comments.push_back(c);
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header_seen) {
      table.header = cells;
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      try {
        row.push_back(std::stod(c));
      } catch (const std::exception&) {
        throw ConfigError(path + ": cannot parse numeric cell '" + c + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

nlohmann::json density_matrix_to_json(const PolarizationDensityMatrix& rho,
                                      const std::string& stage,
                                      const std::string& cfg_hash) {
  nlohmann::json matrix = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 4; ++j)
      row.push_back({rho(i, j).real(), rho(i, j).imag()});
    matrix.push_back(row);
  }
  return {{"basis", {"HH", "HV", "VH", "VV"}},
          {"stage", stage},
          {"config_hash", cfg_hash},
          {"matrix", matrix}};
}

PolarizationDensityMatrix density_matrix_from_json(const nlohmann::json& j) {
  const auto& matrix = j.at("matrix");
  if (matrix.size() != 4) throw ConfigError("density matrix JSON needs 4 rows");
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i) {
    const auto& row = matrix.at(i);
    if (row.size() != 4) throw ConfigError("density matrix JSON needs 4 columns");
    for (int k = 0; k < 4; ++k) {
      const auto& cell = row.at(k);
      m(i, k) = {cell.at(0).get<double>(), cell.at(1).get<double>()};
    }
  }
  return PolarizationDensityMatrix(m);
}

}  // namespace spdcsim
