// heunqdot: quasi-exactly-solvable states of the two-electron 2D quantum dot.
//
//   heunqdot roots --n 2..5 --l 0..1 [--convention table|literal] [--format csv|json] [--out DIR]
//   heunqdot spectrum | wavefunction --grid r0:r1:steps | moments --k 1,2 | validate | tables | report
//
// Settings resolve as: command-line flag > HEUNQDOT_OUT_DIR (output directory only)
// > --config file (key = value lines) > built-in defaults.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cli/commands.hpp"

namespace {

struct Flags {
  std::optional<std::string> n, l, convention, format, out, config, grid, k;
  std::optional<double> omega, precision;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--n", f.n, "state label range, e.g. 2..5");
  sub->add_option("--l", f.l, "angular momentum range, e.g. 0..1");
  sub->add_option("--convention", f.convention, "gamma-factor convention: table | literal");
  sub->add_option("--format", f.format, "csv | json");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--config", f.config, "key = value configuration file");
  sub->add_option("--omega", f.omega, "evaluate at this relative frequency (Ha) instead of at the roots");
  sub->add_option("--precision", f.precision, "root bracket width in t");
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

heunqdot::cli::RunSpec resolve(heunqdot::cli::Command cmd, const Flags& f) {
  using namespace heunqdot::cli;
  RunSpec spec;
  spec.command = cmd;
  if (f.config) apply_config(read_file(*f.config), spec);
  if (const char* env = std::getenv("HEUNQDOT_OUT_DIR"); env && *env) spec.out_dir = env;

  std::ostringstream cli_config;
  if (f.n) cli_config << "n = " << *f.n << '\n';
  if (f.l) cli_config << "l = " << *f.l << '\n';
  if (f.convention) cli_config << "convention = " << *f.convention << '\n';
  if (f.format) cli_config << "format = " << *f.format << '\n';
  if (f.grid) cli_config << "grid = " << *f.grid << '\n';
  if (f.k) cli_config << "k = " << *f.k << '\n';
  apply_config(cli_config.str(), spec);
  if (f.out) spec.out_dir = *f.out;
  if (f.omega) spec.omega_override = *f.omega;
  if (f.precision) spec.precision = *f.precision;
  return spec;
}

const char* describe(heunqdot::cli::Command c) {
  using heunqdot::cli::Command;
  switch (c) {
    case Command::Roots:
      return "positive roots t* = 1/sqrt(omega) of the termination determinant";
    case Command::Spectrum:
      return "relative, center-of-mass and total energies at each root";
    case Command::Wavefunction:
      return "u(r) and R(r) samples, one file per root";
    case Command::Moments:
      return "normalization and <r^k> per root under both omega readings";
    case Command::Validate:
      return "compare each root with the numerical eigensolver";
    case Command::Tables:
      return "recompute the reference tables side by side";
    case Command::Report:
      return "full validation report (JSON and text)";
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace heunqdot::cli;
  CLI::App app{"heunqdot: polynomial (quasi-exact) states of two electrons in a 2D harmonic trap"};
  app.require_subcommand(1);

  Flags flags;
  std::optional<Command> chosen;
  for (Command c : {Command::Roots, Command::Spectrum, Command::Wavefunction, Command::Moments, Command::Validate,
                    Command::Tables, Command::Report}) {
    auto* sub = app.add_subcommand(std::string(to_string(c)), describe(c));
    add_common(sub, flags);
    if (c == Command::Wavefunction) sub->add_option("--grid", flags.grid, "r0:r1:steps (default 0:30:1000)");
    if (c == Command::Moments) sub->add_option("--k", flags.k, "moment orders, e.g. 1,2");
    sub->callback([&chosen, c] { chosen = c; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const RunSpec spec = resolve(*chosen, flags);
    return run(spec, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "heunqdot: " << e.what() << '\n';
    return 2;
  }
}
