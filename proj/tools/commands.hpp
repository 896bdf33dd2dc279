#ifndef ENTROB_TOOLS_COMMANDS_HPP
#define ENTROB_TOOLS_COMMANDS_HPP

// Report builders behind the entrob command-line tool. Each command returns
// a Table; rendering to CSV or JSON happens separately so that tests can
// inspect the full-precision values.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "entrob/entrob.hpp"
#include "json.hpp"

namespace entrob::cli {

using Cell = std::variant<std::monostate, double, std::int64_t, std::string, bool>;

struct Table {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  int exit_code = 0;
  std::vector<std::string> diagnostics;  // written to stderr
};

enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

/// Six significant digits, '.' decimal point, independent of locale.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 6);
  return std::string(buf, ptr);
}

/// The printed value as a double, so JSON carries exactly what CSV shows.
inline double printed_value(double x) {
  const std::string s = format_number(x);
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

inline std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double x) const { return format_number(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double x) const {
      if (!std::isfinite(x)) return format_number(x);
      return printed_value(x);
    }
    nlohmann::ordered_json operator()(std::int64_t x) const { return x; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
  };
  return std::visit(Visitor{}, c);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void write_table(std::ostream& os, const Table& t, Format fmt) {
  if (fmt == Format::Csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_escape(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(row[i]));
      os << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["command"] = t.command;
  doc["params"] = t.params;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

inline Cell num(double x) { return x; }
inline Cell integer(std::int64_t x) { return x; }
inline Cell text(std::string s) { return s; }

/// Eigenvalue noise floor for a dim x dim Hermitian matrix of unit-order norm.
inline double eigen_noise_floor(std::size_t dim) {
  return 8.0 * static_cast<double>(dim) * std::numeric_limits<double>::epsilon();
}

struct Table1Entry {
  NamedState state;
  std::vector<int> cut;
  double published;
};

/// Published critical depolarization values, three decimals.
inline const std::vector<Table1Entry>& table1_entries() {
  static const std::vector<Table1Entry> entries{
      {NamedState::G3, {0}, 0.443},    {NamedState::W3, {0}, 0.425},    {NamedState::G4, {0}, 0.423},
      {NamedState::G4, {0, 1}, 0.489}, {NamedState::W4, {0}, 0.423},    {NamedState::W4, {0, 1}, 0.423},
      {NamedState::X4, {0}, 0.416},    {NamedState::X4, {0, 1}, 0.453}, {NamedState::B4, {0}, 0.468},
      {NamedState::B4, {0, 1}, 0.450},
  };
  return entries;
}

inline constexpr double kTable1Tolerance = 1e-3;

inline Table cmd_table1(double tol) {
  Table t;
  t.command = "table1";
  t.params["tol"] = printed_value(tol);
  t.columns = {"state", "cut_type", "cut", "d_crit", "published", "abs_diff", "match"};
  bool all_ok = true;
  for (const auto& e : table1_entries()) {
    const auto psi = named_state(e.state);
    const QubitSubset cut(psi.n_qubits(), e.cut);
    const double d = dcrit_cut(psi, cut, tol);
    const double diff = std::abs(d - e.published);
    const bool ok = diff <= kTable1Tolerance;
    all_ok = all_ok && ok;
    if (!ok) {
      t.diagnostics.push_back("mismatch " + std::string(to_string(e.state)) + " " + cut.cut_type() + ": computed " +
                              format_number(d) + ", published " + format_number(e.published));
    }
    t.rows.push_back({text(std::string(to_string(e.state))), text(cut.cut_type()), text(cut.to_string()), num(d),
                      num(e.published), num(diff), ok});
  }
  t.exit_code = all_ok ? kExitOk : kExitMismatch;
  return t;
}

inline constexpr int kGhzCurveMax = 64;
inline constexpr int kGhzNumericMax = 8;

inline Table cmd_ghz_curve(int n_max, double tol) {
  if (n_max < 2 || n_max > kGhzCurveMax) {
    throw Error(ErrorKind::SizeOutOfRange, "n must lie in [2, " + std::to_string(kGhzCurveMax) + "]");
  }
  Table t;
  t.command = "ghz-curve";
  t.params["n"] = n_max;
  t.params["tol"] = printed_value(tol);
  t.columns = {"n", "s_crit", "d_crit", "numeric_d_crit"};
  for (int n = 2; n <= n_max; ++n) {
    const double s = ghz_scrit(n);
    Cell numeric;
    if (n <= kGhzNumericMax) {
      std::vector<int> half;
      for (int q = 0; q < n / 2; ++q) half.push_back(q);
      numeric = dcrit_cut(ghz(n), QubitSubset(n, half), tol);
    }
    t.rows.push_back({text(std::to_string(n)), num(s), num(1.0 - s), numeric});
  }
  const double lim = ghz_scrit_limit();
  t.rows.push_back({text("inf"), num(lim), num(1.0 - lim), Cell{}});
  return t;
}

inline Table cmd_analyze(const StateVector& psi, const std::string& label, double d) {
  const DepolarizationLevel level(d);
  const auto rho = depolarize_all(density_of(psi), level.d());
  Table t;
  t.command = "analyze";
  t.params["state"] = label;
  t.params["d"] = printed_value(d);
  t.columns = {"cut", "cut_type", "min_pt_eigenvalue", "ppt", "schmidt_rank", "entropy"};
  for (const auto& cut : enumerate_cuts(psi.n_qubits())) {
    const auto report = cut_report(rho, cut);
    // Schmidt rank refers to the noiseless pure state; entropy is that of the
    // reduced depolarized state and equals the entanglement entropy at d = 0.
    t.rows.push_back({text(cut.to_string()), text(cut.cut_type()), num(report.min_pt_eigenvalue), report.is_ppt,
                      integer(schmidt_rank(psi, cut)), num(von_neumann_entropy(partial_trace(rho, cut)))});
  }
  return t;
}

inline constexpr int kSqueezeScanPoints = 200;
inline constexpr int kSqueezeNumericMax = 6;

inline Table cmd_squeeze(int n, std::optional<double> mu, double s) {
  require_qubit_count(n, 1, kMaxSqueezingQubits);
  if (!(s > 0.0 && s <= 1.0)) throw Error(ErrorKind::OutOfRange, "s must lie in (0, 1]");
  Table t;
  t.command = "squeeze";
  t.params["n"] = n;
  t.params["mu"] = mu ? nlohmann::ordered_json(printed_value(*mu)) : nlohmann::ordered_json("scan");
  t.params["s"] = printed_value(s);
  t.columns = {"mu", "xi0_sq", "zeta", "xi_s_sq", "xi_s_sq_numeric", "s_crit", "d_crit"};

  const OneAxisTwist twist(n);
  double chosen_mu = 0.0;
  if (mu) {
    chosen_mu = *mu;
  } else {
    const auto best = min_xi_squared(scan_one_axis_twist(n, kSqueezeScanPoints));
    if (!best) throw Error(ErrorKind::MeanSpinVanishes, "no grid point has a well-defined mean spin");
    chosen_mu = best->mu;
  }
  const auto psi = twist.state(chosen_mu);
  const auto moments = spin_moments(psi);
  const auto rep = xi_squared(moments);
  const double xi_s = xi_after_depolarization(rep.xi_squared, rep.zeta, s);
  Cell numeric;
  if (n <= kSqueezeNumericMax) {
    const auto noisy = depolarize_all(density_of(psi), 1.0 - s);
    numeric = xi_squared_in_frame(spin_moments(noisy), rep.frame);
  }
  Cell s_crit;
  Cell d_crit;
  if (rep.xi_squared <= 1.0) {
    const double sc = scrit_squeezed(std::min(rep.zeta, 1.0), rep.xi_squared);
    s_crit = sc;
    d_crit = 1.0 - sc;
  }
  t.rows.push_back({num(chosen_mu), num(rep.xi_squared), num(rep.zeta), num(xi_s), numeric, s_crit, d_crit});
  return t;
}

inline Table cmd_measure_ghz(int n, double p) {
  require_qubit_count(n, 2, kMaxSqueezingQubits);
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::OutOfRange, "p must lie in [0, 1]");
  const auto rho = probabilistic_measure(density_of(ghz(n)), p);
  const double tol = eigen_noise_floor(rho.dim());
  const double predicted = -0.5 * std::pow(1.0 - p, n);
  Table t;
  t.command = "measure-ghz";
  t.params["n"] = n;
  t.params["p"] = printed_value(p);
  t.params["tol"] = printed_value(tol);
  t.columns = {"cut", "cut_type", "min_pt_eigenvalue", "predicted", "npt"};
  bool entangled = false;
  for (const auto& cut : enumerate_cuts(n)) {
    const auto rep = cut_report(rho, cut, tol);
    entangled = entangled || !rep.is_ppt;
    t.rows.push_back({text(cut.to_string()), text(cut.cut_type()), num(rep.min_pt_eigenvalue), num(predicted),
                      !rep.is_ppt});
  }
  t.params["entangled"] = entangled;
  return t;
}

inline constexpr std::size_t kDefaultMeasurementSamples = 100000;

/// Monte-Carlo random-basis measurement of one qubit against depolarization with d = 2/3.
inline Table cmd_random_measure(const StateVector& psi, const std::string& label, int target, std::size_t samples,
                                std::uint64_t seed) {
  const auto rho = density_of(psi);
  const auto sampled = random_measurement_average(rho, target, samples, seed);
  const auto channel = depolarize(rho, QubitSubset(psi.n_qubits(), {target}), DepolarizationLevel(2.0 / 3.0));
  const double dev = max_abs_diff(sampled.matrix(), channel.matrix());
  const double bound = 5.0 / std::sqrt(static_cast<double>(samples));
  Table t;
  t.command = "random-measure";
  t.params["state"] = label;
  t.params["target"] = target;
  t.params["samples"] = static_cast<std::int64_t>(samples);
  t.params["seed"] = seed;
  t.columns = {"max_abs_deviation", "bound", "within_bound"};
  t.rows.push_back({num(dev), num(bound), dev < bound});
  t.exit_code = dev < bound ? kExitOk : kExitMismatch;
  return t;
}

}  // namespace entrob::cli

#endif  // ENTROB_TOOLS_COMMANDS_HPP
