#include "cli/reference_tables.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "reference_tables_data.hpp"

namespace heunqdot::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string table_for(std::int32_t l) {
  if (l == 0) return "table1";
  if (l == 1) return "table2";
  return {};
}

}  // namespace

ReferenceTables ReferenceTables::parse(std::string_view text) {
  ReferenceTables out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::runtime_error("reference data line " + std::to_string(line_no) + ": missing '='");
    }
    const std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    std::replace(value.begin(), value.end(), ',', '.');

    double parsed = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (key.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
      throw std::runtime_error("reference data line " + std::to_string(line_no) + ": bad entry");
    }
    if (!out.values_.emplace(key, parsed).second) {
      throw std::runtime_error("reference data line " + std::to_string(line_no) + ": duplicate key " + key);
    }
  }
  return out;
}

const ReferenceTables& ReferenceTables::embedded() {
  static const ReferenceTables tables = parse(kReferenceTablesText);
  return tables;
}

double ReferenceTables::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw std::out_of_range("unknown reference constant " + key);
  return it->second;
}

std::optional<double> ReferenceTables::find(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::vector<double> ReferenceTables::roots(std::int32_t l, std::int32_t n) const {
  std::vector<double> out;
  const std::string table = table_for(l);
  if (table.empty()) return out;
  for (int i = 1;; ++i) {
    auto v = find(table + ".n" + std::to_string(n) + ".root" + std::to_string(i));
    if (!v) break;
    out.push_back(*v);
  }
  return out;
}

bool ReferenceTables::asymptotic(std::int32_t l, std::int32_t n) const {
  const std::string table = table_for(l);
  if (table.empty()) return false;
  return find(table + ".n" + std::to_string(n) + ".asymptotic").value_or(0.0) != 0.0;
}

}  // namespace heunqdot::cli
