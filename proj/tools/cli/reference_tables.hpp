#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace heunqdot::cli {

/// Published constants keyed as "table.row.col". Immutable after parsing.
class ReferenceTables {
 public:
  /// Parses `key = value # comment` lines; blank and comment-only lines are skipped.
  /// A decimal comma in the value is read as a decimal point. Throws std::runtime_error
  /// on a malformed line or duplicate key.
  static ReferenceTables parse(std::string_view text);
  /// The copy compiled into the binary.
  static const ReferenceTables& embedded();

  [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }
  /// Throws std::out_of_range for an unknown key.
  [[nodiscard]] double get(const std::string& key) const;
  [[nodiscard]] std::optional<double> find(const std::string& key) const;
  [[nodiscard]] const std::map<std::string, double>& values() const { return values_; }

  /// Listed nonzero roots of table1 (l = 0) or table2 (l = 1), ascending.
  [[nodiscard]] std::vector<double> roots(std::int32_t l, std::int32_t n) const;
  [[nodiscard]] bool asymptotic(std::int32_t l, std::int32_t n) const;

 private:
  std::map<std::string, double> values_;
};

}  // namespace heunqdot::cli
