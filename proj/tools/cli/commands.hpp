#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cli/records.hpp"
#include "cli/reference_tables.hpp"
#include "heunqdot/termination.hpp"
#include "heunqdot/wavefunction.hpp"

namespace heunqdot::cli {

enum class Command { Roots, Spectrum, Wavefunction, Moments, Validate, Tables, Report };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view s);

/// Inclusive integer range written "a..b" or "a"; b < a is the empty range.
struct IntRange {
  std::int32_t first = 0;
  std::int32_t last = -1;

  [[nodiscard]] bool empty() const { return last < first; }
  [[nodiscard]] std::vector<std::int32_t> values() const;
  static std::optional<IntRange> parse(std::string_view text);
};

struct RunSpec {
  Command command = Command::Roots;
  IntRange n_range{2, 5};
  IntRange l_range{0, 1};
  std::optional<double> omega_override;
  Convention convention = Convention::TableConsistent;
  OutputFormat format = OutputFormat::Csv;
  std::filesystem::path out_dir = ".";
  std::vector<std::int32_t> moment_orders{1, 2};
  RadialGrid grid{0.0, 30.0, 1000};
  double precision = 1e-14;
};

/// Parses "r0:r1:steps".
std::optional<RadialGrid> parse_grid(std::string_view text);
/// Parses "1,2,3".
std::optional<std::vector<std::int32_t>> parse_int_list(std::string_view text);

/// Applies `key = value` lines (n, l, convention, format, out, omega, grid, k, precision)
/// onto `spec`. Throws std::runtime_error naming the offending line.
void apply_config(std::string_view text, RunSpec& spec);

/// Throws std::invalid_argument if the spec breaks an invariant (omega_override <= 0, bad grid, ...).
void validate_spec(const RunSpec& spec);

// Record builders, one per command. Rows are ordered by (n, l, t).
RecordTable roots_table(const RunSpec& spec);
RecordTable spectrum_table(const RunSpec& spec);
RecordTable moments_table(const RunSpec& spec);
RecordTable validate_table(const RunSpec& spec);
RecordTable tables_table(const RunSpec& spec, const ReferenceTables& ref = ReferenceTables::embedded());

struct WavefunctionFile {
  std::string stem;  // e.g. "wavefunction_n2_l0_root1"
  RecordTable table;
};

/// One table per (n, l, root), or per (n, l) when omega is overridden. (n, l) pairs
/// without a root are listed in `missing`.
struct WavefunctionOutput {
  std::vector<WavefunctionFile> files;
  std::vector<std::pair<std::int32_t, std::int32_t>> missing;
};
WavefunctionOutput wavefunction_tables(const RunSpec& spec);

struct Report {
  nlohmann::ordered_json json;
  std::string text;
};
Report build_report(const RunSpec& spec, const ReferenceTables& ref = ReferenceTables::embedded());

/// Runs one command, writing its files under spec.out_dir. Returns the process exit code:
/// reference mismatches are report content and still exit 0.
int run(const RunSpec& spec, std::ostream& log);

/// Reference-state definition shared by the table 4/5 reproductions: the smallest
/// positive root of (n, l) under the convention.
std::optional<double> reference_root(std::int32_t n, std::int32_t l, Convention convention);

}  // namespace heunqdot::cli
