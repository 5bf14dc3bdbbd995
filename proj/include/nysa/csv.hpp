#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nysa/types.hpp"

namespace nysa {

/// Shortest round-trip decimal representation of a double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline bool parse_cell(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  char* end = nullptr;
  out = std::strtod(cell.c_str(), &end);
  return end == cell.c_str() + cell.size();
}

}  // namespace detail

/// Numeric matrix from CSV: one point per row, comma separated. A header
/// row is auto-detected (any non-numeric cell in the first row) and
/// skipped. `drop_column` removes one column (0-based) before returning,
/// e.g. a label column; pass -1 to keep all columns.
inline Matrix read_csv_matrix(const std::string& path, int drop_column = -1) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t width = 0;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv_line(line);
    std::vector<double> row(cells.size());
    bool ok = true;
    for (std::size_t j = 0; j < cells.size(); ++j)
      if (!detail::parse_cell(cells[j], row[j])) {
        ok = false;
        break;
      }
    if (!ok) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw data_error(path + ":" + std::to_string(lineno) +
                       ": non-numeric cell");
    }
    first = false;
    if (width == 0)
      width = row.size();
    else if (row.size() != width)
      throw data_error(path + ":" + std::to_string(lineno) +
                       ": expected " + std::to_string(width) + " columns, got " +
                       std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw data_error(path + ": no data rows");
  if (drop_column >= static_cast<int>(width))
    throw config_error("drop_column out of range for " + path);

  const std::size_t keep = drop_column >= 0 ? width - 1 : width;
  if (keep == 0) throw data_error(path + ": no feature columns left");
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(keep));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Index c = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (static_cast<int>(j) == drop_column) continue;
      out(static_cast<Index>(i), c++) = rows[i][j];
    }
  }
  return out;
}

/// Row-major CSV dump in full-precision scientific notation.
inline void write_matrix_csv(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write file: " + path);
  char buf[40];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17e", m(i, j));
      out << buf << (j + 1 < m.cols() ? "," : "");
    }
    out << '\n';
  }
}

}  // namespace nysa
