#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <variant>
#include <vector>

namespace heunqdot::cli {

/// A missing value is written as an empty CSV field and JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Column-ordered rows shared by the CSV and JSON writers.
struct RecordTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  bool operator==(const RecordTable&) const = default;
};

struct Meta {
  std::string command;
  std::string convention;
  double precision = 0.0;
};

inline constexpr const char* kVersion = "0.1.0";

/// Doubles as %.6e; strings are quoted only when they contain a comma or quote.
std::string to_csv(const RecordTable& table);
/// {"meta": {...}, "rows": [{column: value, ...}]} with insertion-ordered keys.
nlohmann::ordered_json to_json(const RecordTable& table, const Meta& meta);
/// Inverse of to_json for the rows part. Integers stay integers, other numbers are doubles.
RecordTable rows_from_json(const nlohmann::ordered_json& doc);

std::string format_double(double v);

/// Writes `content` to `path`, creating parent directories. Throws std::runtime_error on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace heunqdot::cli
