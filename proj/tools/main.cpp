// entrob: robustness of multi-qubit entanglement under local depolarization.
//
//   entrob table1 [--tol T]
//   entrob ghz-curve --n N [--tol T]
//   entrob analyze (--state NAME | --state-expr TEXT) [--d D]
//   entrob squeeze --n N [--mu MU|scan] [--s S]
//   entrob measure-ghz --n N --p P
//   entrob random-measure (--state NAME | --state-expr TEXT) [--target Q] [--samples K] [--seed S]
//
// Common flags: --format csv|json, --out PATH.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace entrob;
using namespace entrob::cli;

struct Options {
  std::string state;
  std::string state_expr;
  bool no_normalize = false;
  double d = 0.0;
  int n = 4;
  double p = 0.5;
  std::string mu = "scan";
  double s = 1.0;
  double tol = kDefaultSearchTolerance;
  std::uint64_t seed = 0;
  int target = 0;
  std::size_t samples = kDefaultMeasurementSamples;
  std::string format = "csv";
  std::string out;
};

struct Selected {
  StateVector psi;
  std::string label;
};

Selected resolve_state(const Options& o) {
  if (!o.state.empty() && !o.state_expr.empty()) {
    throw CLI::ValidationError("--state and --state-expr are mutually exclusive");
  }
  if (!o.state_expr.empty()) return {parse_ket(o.state_expr, !o.no_normalize), o.state_expr};
  if (o.state.empty()) throw CLI::ValidationError("one of --state or --state-expr is required");
  return {named_state(o.state), o.state};
}

void add_state_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--state", o.state, "named state: G3 G4 W3 W4 X4 B4 S4 SINGLET");
  cmd->add_option("--state-expr", o.state_expr, "ket expression, e.g. \"(|000>+|111>)/sqrt(2)\"");
  cmd->add_flag("--no-normalize", o.no_normalize, "require --state-expr to be normalized already");
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robustness of multi-qubit entanglement under local depolarizing noise", "entrob"};
  app.require_subcommand(1);
  Options o;

  auto* table1 = app.add_subcommand("table1", "critical depolarization of the 3- and 4-qubit reference states");
  table1->add_option("--tol", o.tol, "bisection bracket width")->check(CLI::PositiveNumber);
  add_output_flags(table1, o);

  auto* curve = app.add_subcommand("ghz-curve", "GHZ critical scaling factor for n = 2..N");
  curve->add_option("--n", o.n, "largest n")->required();
  curve->add_option("--tol", o.tol, "bisection bracket width")->check(CLI::PositiveNumber);
  add_output_flags(curve, o);

  auto* analyze = app.add_subcommand("analyze", "per-cut PT spectrum, Schmidt rank and entropy after depolarization");
  add_state_flags(analyze, o);
  analyze->add_option("--d", o.d, "depolarization applied to every qubit")->check(CLI::Range(0.0, 1.0));
  add_output_flags(analyze, o);

  auto* squeeze = app.add_subcommand("squeeze", "one-axis-twisted spin squeezing and its depolarization bound");
  squeeze->add_option("--n", o.n, "qubit count (<= 10)")->required();
  squeeze->add_option("--mu", o.mu, "twist angle, or 'scan' for the grid minimum");
  squeeze->add_option("--s", o.s, "scaling factor s = 1 - d");
  add_output_flags(squeeze, o);

  auto* measure = app.add_subcommand("measure-ghz", "GHZ state after probabilistic computational-basis measurement");
  measure->add_option("--n", o.n, "qubit count")->required();
  measure->add_option("--p", o.p, "measurement probability per qubit")->required();
  add_output_flags(measure, o);

  auto* random = app.add_subcommand("random-measure", "random-basis measurement versus depolarization with d = 2/3");
  add_state_flags(random, o);
  random->add_option("--target", o.target, "measured qubit");
  random->add_option("--samples", o.samples, "number of random directions")->check(CLI::PositiveNumber);
  random->add_option("--seed", o.seed, "generator seed");
  add_output_flags(random, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Table table;
    if (*table1) {
      table = cmd_table1(o.tol);
    } else if (*curve) {
      table = cmd_ghz_curve(o.n, o.tol);
    } else if (*analyze) {
      const auto sel = resolve_state(o);
      table = cmd_analyze(sel.psi, sel.label, o.d);
    } else if (*squeeze) {
      std::optional<double> mu;
      if (o.mu != "scan") {
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(o.mu.data(), o.mu.data() + o.mu.size(), value);
        if (ec != std::errc() || ptr != o.mu.data() + o.mu.size()) {
          throw CLI::ValidationError("--mu must be a number or 'scan'");
        }
        mu = value;
      }
      table = cmd_squeeze(o.n, mu, o.s);
    } else if (*measure) {
      table = cmd_measure_ghz(o.n, o.p);
    } else if (*random) {
      const auto sel = resolve_state(o);
      table = cmd_random_measure(sel.psi, sel.label, o.target, o.samples, o.seed);
    }

    const Format fmt = o.format == "json" ? Format::Json : Format::Csv;
    if (o.out.empty()) {
      write_table(std::cout, table, fmt);
    } else {
      std::ofstream file(o.out);
      if (!file) {
        std::cerr << "error: cannot open " << o.out << '\n';
        return kExitUsage;
      }
      write_table(file, table, fmt);
    }
    for (const auto& line : table.diagnostics) std::cerr << line << '\n';
    return table.exit_code;
  } catch (const entrob::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
