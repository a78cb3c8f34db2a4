#pragma once

// Generator-vector table: CSV with header `s,n,z1,...,zs,alpha,p_alpha`,
// preceded by optional `#` comment lines.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "glt/lattice.hpp"

namespace glt {

struct TableRow {
  GeneratingVector gv;
  double alpha;
  double p_alpha;
};

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

inline std::string table_header(std::size_t s) {
  std::string h = "s,n";
  for (std::size_t k = 1; k <= s; ++k) h += ",z" + std::to_string(k);
  return h + ",alpha,p_alpha";
}

inline std::string format_table_row(const TableRow& row) {
  std::string line = std::to_string(row.gv.dim()) + "," + std::to_string(row.gv.n());
  for (auto zk : row.gv.z()) line += "," + std::to_string(zk);
  return line + "," + format_double(row.alpha) + "," + format_double(row.p_alpha);
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument(std::string("table: cannot parse ") + what + " from '" + text + "'");
  return value;
}

}  // namespace detail

/// Parse a table; comment lines and the header are skipped.
inline std::vector<TableRow> read_table(std::istream& in) {
  std::vector<TableRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line.rfind("s,", 0) == 0) continue;
    const auto f = detail::split_csv(line);
    if (f.size() < 5) throw std::invalid_argument("table: line " + std::to_string(lineno) + " too short");
    const auto s = detail::parse_number<std::size_t>(f[0], "s");
    if (f.size() != s + 4)
      throw std::invalid_argument("table: line " + std::to_string(lineno) + " has " + std::to_string(f.size()) +
                                  " fields, expected " + std::to_string(s + 4));
    const auto n = detail::parse_number<std::int64_t>(f[1], "n");
    std::vector<std::int64_t> z(s);
    for (std::size_t k = 0; k < s; ++k) z[k] = detail::parse_number<std::int64_t>(f[2 + k], "z");
    rows.push_back({GeneratingVector(n, std::move(z)), detail::parse_number<double>(f[s + 2], "alpha"),
                    detail::parse_number<double>(f[s + 3], "p_alpha")});
  }
  return rows;
}

/// Write comment lines, header and rows. All rows must share one dimension.
inline void write_table(std::ostream& out, const std::vector<TableRow>& rows,
                        const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  if (rows.empty()) return;
  const std::size_t s = rows.front().gv.dim();
  out << table_header(s) << '\n';
  for (const auto& r : rows) {
    if (r.gv.dim() != s) throw std::invalid_argument("table: mixed dimensions in one table");
    out << format_table_row(r) << '\n';
  }
}

/// Adds rows whose (s, n, alpha) is not yet present and orders the result
/// by (s, n, alpha). Returns the number of rows added.
inline std::size_t merge_table_rows(std::vector<TableRow>& table, const std::vector<TableRow>& added) {
  std::size_t count = 0;
  for (const auto& r : added) {
    const bool present = std::any_of(table.begin(), table.end(), [&](const TableRow& t) {
      return t.gv.dim() == r.gv.dim() && t.gv.n() == r.gv.n() && t.alpha == r.alpha;
    });
    if (!present) {
      table.push_back(r);
      ++count;
    }
  }
  std::stable_sort(table.begin(), table.end(), [](const TableRow& a, const TableRow& b) {
    if (a.gv.dim() != b.gv.dim()) return a.gv.dim() < b.gv.dim();
    if (a.gv.n() != b.gv.n()) return a.gv.n() < b.gv.n();
    return a.alpha < b.alpha;
  });
  return count;
}

}  // namespace glt
