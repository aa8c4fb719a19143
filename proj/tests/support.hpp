#pragma once

#include <complex>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing_support {

using cplx = std::complex<double>;

inline std::string fixture_path(const std::string& name) { return std::string(BLOWUP_FIXTURE_DIR) + "/" + name; }

/// Rows of a numeric CSV, header skipped.
inline std::vector<std::vector<double>> read_numeric_csv(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

/// named_values.csv: "name",re,im
inline const std::map<std::string, cplx>& named_values() {
  static const std::map<std::string, cplx> table = [] {
    std::ifstream in(fixture_path("named_values.csv"));
    if (!in) throw std::runtime_error("missing fixture named_values.csv");
    std::map<std::string, cplx> m;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto close = line.find('"', 1);
      if (line.empty() || line[0] != '"' || close == std::string::npos) continue;
      const std::string name = line.substr(1, close - 1);
      std::stringstream ss(line.substr(close + 2));
      std::string re, im;
      std::getline(ss, re, ',');
      std::getline(ss, im, ',');
      m[name] = {std::stod(re), std::stod(im)};
    }
    return m;
  }();
  return table;
}

inline cplx named(const std::string& key) {
  const auto it = named_values().find(key);
  if (it == named_values().end()) throw std::runtime_error("no fixture value " + key);
  return it->second;
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing_support
