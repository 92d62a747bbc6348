#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "heunqdot/model.hpp"
#include "heunqdot/oracle.hpp"

namespace heunqdot::cli {

namespace {

// Relative agreement to 4 significant figures: |x - ref| <= 5e-4 |ref|.
constexpr double kSigFigTolerance = 5e-4;
// Absolute agreement to 4 decimal places.
constexpr double kDecimalTolerance = 5e-5;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<std::int32_t> parse_int(std::string_view s) {
  s = trim(s);
  std::int32_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string key(std::int32_t n, std::int32_t l) { return "n" + std::to_string(n) + "l" + std::to_string(l); }

std::vector<double> positive_roots(std::int32_t n, std::int32_t l, Convention convention, double precision) {
  std::vector<double> out;
  for (const auto& r : solve_termination(n, l, convention, precision).roots.roots) out.push_back(r.t_star);
  return out;
}

std::string state_label(std::int32_t n, std::int32_t l) {
  return "(" + std::to_string(n) + "," + std::to_string(l) + ")";
}

Cell opt_cell(std::optional<double> v) {
  if (!v) return std::monostate{};
  return *v;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Roots:
      return "roots";
    case Command::Spectrum:
      return "spectrum";
    case Command::Wavefunction:
      return "wavefunction";
    case Command::Moments:
      return "moments";
    case Command::Validate:
      return "validate";
    case Command::Tables:
      return "tables";
    case Command::Report:
      return "report";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view s) {
  for (Command c : {Command::Roots, Command::Spectrum, Command::Wavefunction, Command::Moments,
                    Command::Validate, Command::Tables, Command::Report}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::vector<std::int32_t> IntRange::values() const {
  std::vector<std::int32_t> out;
  for (std::int32_t v = first; v <= last; ++v) out.push_back(v);
  return out;
}

std::optional<IntRange> IntRange::parse(std::string_view text) {
  text = trim(text);
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    auto v = parse_int(text);
    if (!v) return std::nullopt;
    return IntRange{*v, *v};
  }
  auto a = parse_int(text.substr(0, dots));
  auto b = parse_int(text.substr(dots + 2));
  if (!a || !b) return std::nullopt;
  return IntRange{*a, *b};
}

std::optional<RadialGrid> parse_grid(std::string_view text) {
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) return std::nullopt;
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) return std::nullopt;
  auto r0 = parse_double(text.substr(0, c1));
  auto r1 = parse_double(text.substr(c1 + 1, c2 - c1 - 1));
  auto steps = parse_int(text.substr(c2 + 1));
  if (!r0 || !r1 || !steps) return std::nullopt;
  return RadialGrid{*r0, *r1, *steps};
}

std::optional<std::vector<std::int32_t>> parse_int_list(std::string_view text) {
  std::vector<std::int32_t> out;
  while (true) {
    const auto comma = text.find(',');
    auto v = parse_int(text.substr(0, comma));
    if (!v) return std::nullopt;
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

void apply_config(std::string_view text, RunSpec& spec) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto fail = [&](const std::string& why) {
      throw std::runtime_error("config line " + std::to_string(line_no) + ": " + why);
    };
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("missing '='");
    const std::string_view k = trim(line.substr(0, eq));
    const std::string_view v = trim(line.substr(eq + 1));

    if (k == "n" || k == "l") {
      auto r = IntRange::parse(v);
      if (!r) fail("bad range");
      (k == "n" ? spec.n_range : spec.l_range) = *r;
    } else if (k == "convention") {
      auto c = parse_convention(v);
      if (!c) fail("unknown convention");
      spec.convention = *c;
    } else if (k == "format") {
      if (v == "csv") {
        spec.format = OutputFormat::Csv;
      } else if (v == "json") {
        spec.format = OutputFormat::Json;
      } else {
        fail("unknown format");
      }
    } else if (k == "out") {
      spec.out_dir = std::string(v);
    } else if (k == "omega") {
      auto d = parse_double(v);
      if (!d) fail("bad omega");
      spec.omega_override = *d;
    } else if (k == "grid") {
      auto g = parse_grid(v);
      if (!g) fail("bad grid");
      spec.grid = *g;
    } else if (k == "k") {
      auto ks = parse_int_list(v);
      if (!ks) fail("bad moment list");
      spec.moment_orders = *ks;
    } else if (k == "precision") {
      auto d = parse_double(v);
      if (!d) fail("bad precision");
      spec.precision = *d;
    } else {
      fail("unknown key '" + std::string(k) + "'");
    }
  }
}

void validate_spec(const RunSpec& spec) {
  if (spec.omega_override && !(*spec.omega_override > 0.0)) {
    throw std::invalid_argument("omega override must be positive");
  }
  if (!spec.n_range.empty() && spec.n_range.first < 1) throw std::invalid_argument("n must be >= 1");
  if (!spec.l_range.empty() && spec.l_range.first < 0) throw std::invalid_argument("l must be >= 0");
  if (spec.grid.steps < 2 || !(spec.grid.r1 > spec.grid.r0) || spec.grid.r0 < 0.0) {
    throw std::invalid_argument("grid must satisfy 0 <= r0 < r1 with at least 2 points");
  }
  if (!(spec.precision >= 1e-14 && spec.precision <= 1e-6)) {
    throw std::invalid_argument("precision must lie in [1e-14, 1e-6]");
  }
  for (auto k : spec.moment_orders) {
    if (k < 0) throw std::invalid_argument("moment orders must be non-negative");
  }
}

std::optional<double> reference_root(std::int32_t n, std::int32_t l, Convention convention) {
  auto roots = positive_roots(n, l, convention, 1e-14);
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

RecordTable roots_table(const RunSpec& spec) {
  RecordTable t{{"n", "l", "convention", "t_star", "omega", "eta", "effective_degree"}, {}};
  for (auto n : spec.n_range.values()) {
    for (auto l : spec.l_range.values()) {
      const TerminationResult res = solve_termination(n, l, spec.convention, spec.precision);
      for (const auto& r : res.roots.roots) {
        const CoefficientChain chain = coefficient_chain(res.system, r.t_star);
        t.add({std::int64_t{n}, std::int64_t{l}, std::string(to_string(spec.convention)), r.t_star, r.omega,
               energy_relative(n, l, r.omega), std::int64_t{chain.effective_degree}});
      }
    }
  }
  return t;
}

namespace {

// (t, label) pairs at which a command evaluates (n, l): each root, or the override.
std::vector<std::pair<double, std::string>> evaluation_points(const RunSpec& spec, std::int32_t n, std::int32_t l) {
  std::vector<std::pair<double, std::string>> out;
  if (spec.omega_override) {
    out.emplace_back(1.0 / std::sqrt(*spec.omega_override), "omega");
    return out;
  }
  int i = 0;
  for (double t : positive_roots(n, l, spec.convention, spec.precision)) {
    out.emplace_back(t, "root" + std::to_string(++i));
  }
  return out;
}

}  // namespace

RecordTable spectrum_table(const RunSpec& spec) {
  RecordTable t{{"n", "l", "t_star", "omega", "Omega", "eta", "eps_cm", "e_total"}, {}};
  for (auto n : spec.n_range.values()) {
    for (auto l : spec.l_range.values()) {
      for (const auto& [ts, label] : evaluation_points(spec, n, l)) {
        const double omega = 1.0 / (ts * ts);
        const SystemConfig cfg = SystemConfig::from_relative_omega(omega);
        const double eta = energy_relative(n, l, omega);
        const double eps = energy_center_of_mass(0, cfg);
        t.add({std::int64_t{n}, std::int64_t{l}, ts, omega, cfg.trap_frequency_Omega, eta, eps,
               total_energy(eps, eta)});
      }
    }
  }
  return t;
}

RecordTable moments_table(const RunSpec& spec) {
  RecordTable t{{"n", "l", "reading", "t_star", "omega", "normalization", "k", "moment"}, {}};
  for (auto n : spec.n_range.values()) {
    for (auto l : spec.l_range.values()) {
      const TerminationSystem sys = build_gamma_factors(n, l, spec.convention);
      for (const auto& [ts, label] : evaluation_points(spec, n, l)) {
        const RadialState st = make_state(sys, ts);
        for (auto k : spec.moment_orders) {
          t.add({std::int64_t{n}, std::int64_t{l}, label, ts, st.solution.omega, st.normalization,
                 std::int64_t{k}, moment(st, k)});
        }
      }
    }
  }
  return t;
}

RecordTable validate_table(const RunSpec& spec) {
  RecordTable t{{"n", "l", "convention", "t_star", "eta_analytic", "eta_oracle", "oracle_nodes", "abs_delta",
                 "residual", "effective_degree", "classification"},
                {}};
  for (auto n : spec.n_range.values()) {
    for (auto l : spec.l_range.values()) {
      for (const auto& [ts, label] : evaluation_points(spec, n, l)) {
        const ValidationRecord v = validate_root(n, l, ts, spec.convention);
        t.add({std::int64_t{n}, std::int64_t{l}, std::string(to_string(spec.convention)), ts, v.eta_analytic,
               v.eta_oracle, std::int64_t{v.oracle_nodes}, v.abs_delta, v.residual,
               std::int64_t{v.effective_degree}, std::string(to_string(v.classification))});
      }
    }
  }
  return t;
}

WavefunctionOutput wavefunction_tables(const RunSpec& spec) {
  WavefunctionOutput out;
  for (auto n : spec.n_range.values()) {
    for (auto l : spec.l_range.values()) {
      const auto points = evaluation_points(spec, n, l);
      if (points.empty()) {
        out.missing.emplace_back(n, l);
        continue;
      }
      const TerminationSystem sys = build_gamma_factors(n, l, spec.convention);
      for (const auto& [ts, label] : points) {
        const RadialState st = make_state(sys, ts);
        WavefunctionFile f{"wavefunction_n" + std::to_string(n) + "_l" + std::to_string(l) + "_" + label,
                           RecordTable{{"r", "u", "R"}, {}}};
        for (std::int32_t i = 0; i < spec.grid.steps; ++i) {
          const double r = spec.grid.at(i);
          f.table.add({r, st.normalized_u(r), st.R(r)});
        }
        out.files.push_back(std::move(f));
      }
    }
  }
  return out;
}

RecordTable tables_table(const RunSpec& spec, const ReferenceTables& ref) {
  RecordTable t{{"table_id", "row_key", "paper_value", "computed_value", "abs_delta", "classification"}, {}};
  auto add = [&](const std::string& table, const std::string& row, std::optional<double> paper,
                 std::optional<double> computed, const std::string& cls) {
    std::optional<double> delta;
    if (paper && computed) delta = std::fabs(*paper - *computed);
    t.add({table, row, opt_cell(paper), opt_cell(computed), opt_cell(delta), cls});
  };
  const double omega_fixed = ref.get("claims.omega_fixed");

  // Root tables.
  for (auto l : spec.l_range.values()) {
    if (l > 1) continue;
    const std::string table = l == 0 ? "table1" : "table2";
    for (auto n : spec.n_range.values()) {
      const auto listed = ref.roots(l, n);
      const bool asym = ref.asymptotic(l, n);
      if (listed.empty() && !asym) continue;
      const auto computed = positive_roots(n, l, spec.convention, spec.precision);
      const std::string nk = "n" + std::to_string(n);
      if (asym) add(table, nk + ".asymptotic", 0.0, std::nullopt, "FLAG_ONLY");
      std::vector<bool> used(computed.size(), false);
      for (std::size_t i = 0; i < listed.size(); ++i) {
        std::optional<double> best;
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < computed.size(); ++j) {
          if (!best || std::fabs(computed[j] - listed[i]) < std::fabs(*best - listed[i])) {
            best = computed[j];
            best_j = j;
          }
        }
        if (best) used[best_j] = true;
        const bool match = best && std::fabs(*best - listed[i]) <= kSigFigTolerance * std::fabs(listed[i]);
        add(table, nk + ".root" + std::to_string(i + 1), listed[i], best, match ? "MATCH" : "MISMATCH");
      }
      int extra = 0;
      for (std::size_t j = 0; j < computed.size(); ++j) {
        if (!used[j]) add(table, nk + ".unlisted" + std::to_string(++extra), std::nullopt, computed[j], "UNLISTED");
      }
      for (int i = 1;; ++i) {
        auto v = ref.find(table + "." + nk + ".cmp" + std::to_string(i));
        if (!v) break;
        add(table, nk + ".cmp" + std::to_string(i), v, std::nullopt, "DISPLAY_ONLY");
      }
    }
  }

  // Energies (l = 0).
  if (!spec.l_range.empty() && spec.l_range.first <= 0 && spec.l_range.last >= 0) {
    for (auto n : spec.n_range.values()) {
      const std::string nk = "n" + std::to_string(n);
      auto paper_eta = ref.find("table3." + nk + ".eta");
      if (!paper_eta) continue;
      add("table3", nk + ".eps_hf", ref.find("table3." + nk + ".eps_hf"), std::nullopt, "DISPLAY_ONLY");
      add("table3", nk + ".eps_int", ref.find("table3." + nk + ".eps_int"), std::nullopt, "DISPLAY_ONLY");
      std::optional<double> eta;
      if (auto t0 = reference_root(n, 0, spec.convention)) eta = energy_relative(n, 0, 1.0 / (*t0 * *t0));
      const bool match = eta && std::fabs(*eta - *paper_eta) < kDecimalTolerance;
      add("table3", nk + ".eta", paper_eta, eta, match ? "MATCH" : "MISMATCH");
    }
  }

  // Normalization and <r>, under both frequency readings.
  for (const auto& [table, col] : {std::pair{"table4", "norm"}, std::pair{"table5", "r_mean"}}) {
    for (auto n : spec.n_range.values()) {
      for (auto l : spec.l_range.values()) {
        auto paper = ref.find(std::string(table) + "." + key(n, l) + "." + col);
        if (!paper) continue;
        const TerminationSystem sys = build_gamma_factors(n, l, spec.convention);
        auto value = [&](double t) {
          const RadialState st = make_state(sys, t);
          return std::string(col) == "norm" ? st.normalization : moment(st, 1);
        };
        std::optional<double> at_root;
        if (auto t0 = reference_root(n, l, spec.convention)) at_root = value(*t0);
        add(table, key(n, l) + ".root", paper, at_root, "ATTEMPT");
        add(table, key(n, l) + ".fixed", paper, value(1.0 / std::sqrt(omega_fixed)), "ATTEMPT");
      }
    }
  }
  return t;
}

namespace {

nlohmann::ordered_json validation_json(const ValidationRecord& v) {
  return {{"eta_analytic", v.eta_analytic}, {"eta_oracle", v.eta_oracle},
          {"oracle_nodes", v.oracle_nodes}, {"abs_delta", v.abs_delta},
          {"residual", v.residual},         {"classification", std::string(to_string(v.classification))}};
}

nlohmann::ordered_json convention_json(std::int32_t n, std::int32_t l, Convention c, double precision,
                                       std::vector<ValidationRecord>& sink) {
  const TerminationResult res = solve_termination(n, l, c, precision);
  nlohmann::ordered_json j;
  j["d_n"] = res.sequence.last().to_string();
  j["clearing_power"] = res.cleared.clearing_power;
  j["negative_roots"] = res.roots.negative_roots;
  j["complex_roots"] = res.roots.complex_roots;
  j["zero_roots"] = res.roots.zero_roots;
  j["warnings"] = res.roots.warnings;
  auto roots = nlohmann::ordered_json::array();
  for (const auto& r : res.roots.roots) {
    const RadialState st = make_state(res.system, r.t_star);
    const ValidationRecord v = validate_root(n, l, r.t_star, c);
    sink.push_back(v);
    roots.push_back({{"t_star", r.t_star},
                     {"omega", r.omega},
                     {"eta", energy_relative(n, l, r.omega)},
                     {"refinement_width", r.refinement_width},
                     {"effective_degree", st.solution.effective_degree},
                     {"A_chain", st.solution.A_chain},
                     {"normalization", st.normalization},
                     {"r_mean", moment(st, 1)},
                     {"validation", validation_json(v)}});
  }
  j["roots"] = std::move(roots);
  return j;
}

// Printed closed form of A_3 for comparison with the recurrence.
double printed_a3(std::int32_t l, double t) {
  const double h = t / 2.0;
  return -h * h * h + 4.0 * t + 6.0 * (2 * l + 1);
}

}  // namespace

Report build_report(const RunSpec& spec, const ReferenceTables& ref) {
  nlohmann::ordered_json doc;
  doc["meta"] = {{"version", kVersion},
                 {"command", "report"},
                 {"convention", std::string(to_string(spec.convention))},
                 {"precision", spec.precision}};

  std::vector<ValidationRecord> table_records;
  std::vector<ValidationRecord> literal_records;
  auto entries = nlohmann::ordered_json::array();
  std::int64_t asymptotic_flags = 0;
  for (auto n : spec.n_range.values()) {
    for (auto l : spec.l_range.values()) {
      nlohmann::ordered_json e;
      e["n"] = n;
      e["l"] = l;
      e["asymptotic_flag"] = asymptotic_solution_listed(n, l);
      if (asymptotic_solution_listed(n, l)) ++asymptotic_flags;
      e["table_consistent"] = convention_json(n, l, Convention::TableConsistent, spec.precision, table_records);
      e["recurrence_literal"] = convention_json(n, l, Convention::RecurrenceLiteral, spec.precision, literal_records);

      // Root shift between the conventions, paired in ascending order.
      auto shifts = nlohmann::ordered_json::array();
      const auto& a = e["table_consistent"]["roots"];
      const auto& b = e["recurrence_literal"]["roots"];
      for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        shifts.push_back(b[i]["t_star"].get<double>() - a[i]["t_star"].get<double>());
      }
      e["convention_differences"] = {{"same_d_n", e["table_consistent"]["d_n"] == e["recurrence_literal"]["d_n"]},
                                     {"root_count_table", a.size()},
                                     {"root_count_literal", b.size()},
                                     {"paired_root_shift", shifts}};
      entries.push_back(std::move(e));
    }
  }

  auto count = [](const std::vector<ValidationRecord>& v, Classification c) {
    return static_cast<std::int64_t>(std::count_if(v.begin(), v.end(), [c](const auto& r) { return r.classification == c; }));
  };
  doc["summary"] = {{"pairs", entries.size()},
                    {"finite_roots_table", table_records.size()},
                    {"finite_roots_literal", literal_records.size()},
                    {"asymptotic_flags", asymptotic_flags},
                    {"confirmed", count(table_records, Classification::Confirmed)},
                    {"near", count(table_records, Classification::Near)},
                    {"discrepant", count(table_records, Classification::Discrepant)}};
  doc["entries"] = std::move(entries);

  // Table 4/5 reproductions under both readings.
  const RecordTable tables = tables_table(spec, ref);
  auto repro = nlohmann::ordered_json::object();
  for (const auto& row : tables.rows) {
    const auto& table = std::get<std::string>(row[0]);
    if (table != "table4" && table != "table5") continue;
    auto cell = [](const Cell& c) -> nlohmann::ordered_json {
      if (std::holds_alternative<double>(c)) return std::get<double>(c);
      return nullptr;
    };
    repro[table].push_back({{"row_key", std::get<std::string>(row[1])},
                            {"paper_value", cell(row[2])},
                            {"computed_value", cell(row[3])},
                            {"abs_delta", cell(row[4])}});
  }
  doc["reproductions"] = std::move(repro);

  // <r> sanity bracket: reference states (smallest root) under both readings, plus every root.
  constexpr double kLow = 1.0;
  constexpr double kHigh = 50.0;
  bool reference_inside = true;
  auto reference_states = nlohmann::ordered_json::array();
  auto all_roots = nlohmann::ordered_json::array();
  const double t_fixed = 1.0 / std::sqrt(ref.get("claims.omega_fixed"));
  for (auto n : spec.n_range.values()) {
    for (auto l : spec.l_range.values()) {
      const TerminationSystem sys = build_gamma_factors(n, l, spec.convention);
      const auto roots = positive_roots(n, l, spec.convention, spec.precision);
      for (double t : roots) {
        const double rm = moment(make_state(sys, t), 1);
        all_roots.push_back({{"n", n}, {"l", l}, {"t_star", t}, {"r_mean", rm}, {"inside", rm >= kLow && rm <= kHigh}});
      }
      if (!ref.has("table5." + key(n, l) + ".r_mean") || roots.empty()) continue;
      const double at_root = moment(make_state(sys, roots.front()), 1);
      const double at_fixed = moment(make_state(sys, t_fixed), 1);
      const bool inside = at_root >= kLow && at_root <= kHigh && at_fixed >= kLow && at_fixed <= kHigh;
      reference_inside = reference_inside && inside;
      reference_states.push_back(
          {{"n", n}, {"l", l}, {"r_mean_root", at_root}, {"r_mean_fixed", at_fixed}, {"inside", inside}});
    }
  }
  doc["r_mean_bracket"] = {{"low", kLow},
                           {"high", kHigh},
                           {"quoted_low", ref.get("claims.r_mean.low")},
                           {"quoted_high", ref.get("claims.r_mean.high")},
                           {"reference_states_inside", reference_inside},
                           {"reference_states", reference_states},
                           {"all_roots", all_roots}};

  // Open questions, with the numbers that bear on them.
  auto open = nlohmann::ordered_json::array();
  {
    auto chain_vs_det = nlohmann::ordered_json::array();
    for (auto n : spec.n_range.values()) {
      for (auto l : spec.l_range.values()) {
        const TerminationSystem sys = build_gamma_factors(n, l, Convention::TableConsistent);
        const auto chain = coefficient_chain_symbolic(sys);
        const auto d = determinant_sequence(sys).last();
        const bool identical = chain.back() == (n % 2 == 0 ? d : d * Rational(-1));
        chain_vs_det.push_back({{"n", n}, {"l", l}, {"A_n_equals_signed_d_n", identical}});
      }
    }
    open.push_back({{"id", "termination_object"},
                    {"question", "Roots are zeros of d_n; the coefficient chain then has A_n = 0 and the "
                                 "polynomial drops to degree n-1. Which object is the intended solution is open; "
                                 "both are emitted and the oracle classifies each root."},
                    {"data", chain_vs_det}});
  }
  {
    auto a3 = nlohmann::ordered_json::array();
    for (auto n : spec.n_range.values()) {
      if (n < 3) continue;
      for (auto l : spec.l_range.values()) {
        const TerminationSystem sys = build_gamma_factors(n, l, Convention::TableConsistent);
        const auto chain = coefficient_chain_symbolic(sys);
        a3.push_back({{"n", n},
                      {"l", l},
                      {"chain_A3", chain[3].to_string()},
                      {"printed_A3_at_t1", printed_a3(l, 1.0)},
                      {"chain_A3_at_t1", to_double(chain[3](Rational(1)))}});
      }
    }
    open.push_back({{"id", "printed_A3"},
                    {"question", "The printed closed form of A_3 (-(t/2)^3 + 4t + 6(2l+1)) does not match the "
                                 "recurrence for any n; the recurrence value is used."},
                    {"data", a3}});
  }
  open.push_back({{"id", "asymptotic_listing"},
                  {"question", "t = 0 entries are listed for n = 2, 3, 5 but not n = 4; no cleared determinant "
                               "vanishes at t = 0, so these stay metadata flags."}});
  open.push_back({{"id", "cm_energy"},
                  {"question", "Center-of-mass energy is taken as omega_R (n_R + 1); the eigenvalue equation "
                               "is written with 2 eps, so eps versus 2 eps is ambiguous."}});
  open.push_back({{"id", "table4_decimal_comma"},
                  {"question", "The (5,1) normalization is printed as 0,00139954 and read as 0.00139954."}});
  doc["open_questions"] = std::move(open);

  // Text rendering.
  std::ostringstream os;
  os << "heunqdot validation report (version " << kVersion << ", convention " << to_string(spec.convention) << ")\n\n";
  os << "Roots and oracle classification\n";
  for (const auto& e : doc["entries"]) {
    const auto n = e["n"].get<std::int32_t>();
    const auto l = e["l"].get<std::int32_t>();
    os << "  " << state_label(n, l) << (e["asymptotic_flag"].get<bool>() ? "  [t = 0 listed]" : "") << '\n';
    for (const char* conv : {"table_consistent", "recurrence_literal"}) {
      os << "    " << conv << ": d_n = " << e[conv]["d_n"].get<std::string>() << '\n';
      for (const auto& r : e[conv]["roots"]) {
        os << "      t* = " << format_double(r["t_star"].get<double>())
           << "  eta = " << format_double(r["eta"].get<double>())
           << "  oracle = " << format_double(r["validation"]["eta_oracle"].get<double>())
           << "  deg = " << r["effective_degree"].get<std::int32_t>()
           << "  residual = " << format_double(r["validation"]["residual"].get<double>()) << "  "
           << r["validation"]["classification"].get<std::string>() << '\n';
      }
    }
  }
  os << "\nReproductions (table, row, published, computed, |delta|)\n";
  for (const auto& [table, rows] : doc["reproductions"].items()) {
    for (const auto& r : rows) {
      os << "  " << table << "  " << r["row_key"].get<std::string>() << "  "
         << (r["paper_value"].is_null() ? "-" : format_double(r["paper_value"].get<double>())) << "  "
         << (r["computed_value"].is_null() ? "-" : format_double(r["computed_value"].get<double>())) << "  "
         << (r["abs_delta"].is_null() ? "-" : format_double(r["abs_delta"].get<double>())) << '\n';
    }
  }
  os << "\n<r> bracket [" << kLow << ", " << kHigh << "] Bohr for reference states: "
     << (reference_inside ? "inside" : "OUTSIDE") << '\n';
  for (const auto& r : doc["r_mean_bracket"]["all_roots"]) {
    os << "  " << state_label(r["n"].get<std::int32_t>(), r["l"].get<std::int32_t>())
       << "  t* = " << format_double(r["t_star"].get<double>())
       << "  <r> = " << format_double(r["r_mean"].get<double>()) << (r["inside"].get<bool>() ? "" : "  (outside)")
       << '\n';
  }
  os << "\nOpen questions\n";
  for (const auto& q : doc["open_questions"]) {
    os << "  - " << q["id"].get<std::string>() << ": " << q["question"].get<std::string>() << '\n';
  }
  const auto& s = doc["summary"];
  os << "\nSummary: " << s["finite_roots_table"].get<std::int64_t>() << " finite roots, "
     << s["confirmed"].get<std::int64_t>() << " confirmed, " << s["near"].get<std::int64_t>() << " near, "
     << s["discrepant"].get<std::int64_t>() << " discrepant, " << s["asymptotic_flags"].get<std::int64_t>()
     << " asymptotic flags\n";

  return Report{std::move(doc), os.str()};
}

int run(const RunSpec& spec, std::ostream& log) {
  validate_spec(spec);
  const Meta meta{std::string(to_string(spec.command)), std::string(to_string(spec.convention)), spec.precision};
  auto emit = [&](const std::string& stem, const RecordTable& table) {
    const bool json = spec.format == OutputFormat::Json;
    const auto path = spec.out_dir / (stem + (json ? ".json" : ".csv"));
    write_file(path, json ? to_json(table, meta).dump(2) + "\n" : to_csv(table));
    log << "wrote " << path.string() << '\n';
  };

  switch (spec.command) {
    case Command::Roots:
      emit("roots", roots_table(spec));
      break;
    case Command::Spectrum:
      emit("spectrum", spectrum_table(spec));
      break;
    case Command::Moments:
      emit("moments", moments_table(spec));
      break;
    case Command::Validate:
      emit("validate", validate_table(spec));
      break;
    case Command::Tables:
      emit("tables", tables_table(spec));
      break;
    case Command::Wavefunction: {
      const WavefunctionOutput out = wavefunction_tables(spec);
      for (const auto& [n, l] : out.missing) log << "no roots for (n, l) = " << state_label(n, l) << '\n';
      for (const auto& f : out.files) emit(f.stem, f.table);
      break;
    }
    case Command::Report: {
      const Report r = build_report(spec);
      write_file(spec.out_dir / "report.json", r.json.dump(2) + "\n");
      write_file(spec.out_dir / "report.txt", r.text);
      log << "wrote " << (spec.out_dir / "report.json").string() << " and report.txt\n";
      break;
    }
  }
  return 0;
}

}  // namespace heunqdot::cli
