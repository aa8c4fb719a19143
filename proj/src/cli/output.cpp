#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "blowup/cli.hpp"

namespace blowup::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Table::Table(Format format, std::vector<std::string> columns) : format_(format), columns_(std::move(columns)) {
  if (format_ == Format::csv) {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i) text_ += ',';
      text_ += columns_[i];
    }
    text_ += '\n';
  }
}

void Table::add(const std::vector<Cell>& row) {
  if (format_ == Format::csv) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text_ += ',';
      std::visit(
          [this](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) text_ += format_double(v);
            else if constexpr (std::is_same_v<T, long long>) text_ += std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>) text_ += v ? "true" : "false";
            else text_ += v;
          },
          row[i]);
    }
    text_ += '\n';
    return;
  }
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < row.size() && i < columns_.size(); ++i) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            if (std::isfinite(v)) obj[columns_[i]] = v;
            else obj[columns_[i]] = format_double(v);
          } else {
            obj[columns_[i]] = v;
          }
        },
        row[i]);
  }
  text_ += obj.dump();
  text_ += '\n';
}

bool write_output(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
  if (path == "-") {
    out << text;
    out.flush();
    if (!out) {
      err << "error: failed writing to stdout\n";
      return false;
    }
    return true;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    err << "error: cannot open " << path << " for writing\n";
    return false;
  }
  f << text;
  f.close();
  if (!f) {
    err << "error: failed writing " << path << "\n";
    return false;
  }
  return true;
}

}  // namespace blowup::cli
