#pragma once

#include "dynwalk/chain/types.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace dynwalk {

using Cell = std::variant<std::string, std::int64_t, double, bool>;

/// Shortest round-trip decimal form; "inf", "-inf" and "nan" for non-finite values.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string format_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<bool>(c) ? "true" : "false";
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// A result table with fixed columns. CSV and JSON renderings hold the same rows.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<Cell> row) {
    if (row.size() != columns_.size())
      throw InvalidInput(detail::concat("table: row has ", row.size(), " cells, expected ", columns_.size()));
    rows_.push_back(std::move(row));
  }

  [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
  [[nodiscard]] const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  [[nodiscard]] bool empty() const { return rows_.empty(); }

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << detail::csv_quote(columns_[i]);
    os << '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << detail::csv_quote(format_cell(r[i]));
      os << '\n';
    }
  }

  [[nodiscard]] std::string csv() const {
    std::ostringstream ss;
    write_csv(ss);
    return ss.str();
  }

  /// Array of row objects. Non-finite numbers become the strings "inf", "-inf", "nan".
  [[nodiscard]] nlohmann::ordered_json json() const {
    auto out = nlohmann::ordered_json::array();
    for (const auto& r : rows_) {
      nlohmann::ordered_json o = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < r.size(); ++i) {
        const auto& c = r[i];
        if (const auto* s = std::get_if<std::string>(&c))
          o[columns_[i]] = *s;
        else if (const auto* n = std::get_if<std::int64_t>(&c))
          o[columns_[i]] = *n;
        else if (const auto* d = std::get_if<double>(&c))
          o[columns_[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(format_number(*d));
        else
          o[columns_[i]] = std::get<bool>(c);
      }
      out.push_back(std::move(o));
    }
    return out;
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(detail::concat("cannot write ", path));
  out << content;
  if (!out) throw Error(detail::concat("write failed for ", path));
}

}  // namespace dynwalk
