#ifndef ENTROB_ROBUSTNESS_HPP
#define ENTROB_ROBUSTNESS_HPP

// Critical local depolarization.
//
// For GHZ states the depolarized density matrix is diagonal apart from the
// s^n/2 corner coherence, and the diagonal weight on a basis string with k
// zeros is lambda_k. Transposing a k-qubit block pairs the corner coherence
// with a lambda_k diagonal, so the state is NPT across that cut exactly when
// s^n/2 > lambda_k. For other states the threshold is found numerically by
// bisecting the sign of the smallest partial-transpose eigenvalue in d.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "entrob/channels.hpp"
#include "entrob/error.hpp"
#include "entrob/separability.hpp"
#include "entrob/states.hpp"

namespace entrob {

enum class Criterion {
  NptExactGhz,    // PPT across all cuts is equivalent to separability
  NptSufficient,  // PPT only exhausts the criterion
};

inline std::string_view to_string(Criterion c) {
  return c == Criterion::NptExactGhz ? "NPT_EXACT_GHZ" : "NPT_SUFFICIENT";
}

struct CutThreshold {
  QubitSubset cut;
  double d_crit;  // 0 when the cut is already PPT without noise
  bool npt_at_zero;
};

struct RobustnessReport {
  std::string label;
  std::vector<CutThreshold> per_cut;  // enumerate_cuts order
  double overall_d_crit;              // max over per_cut
  double tolerance;
  Criterion criterion;
};

struct GhzCoefficients {
  int n;
  int k;
  double s;
  double lambda_k;
  double offdiag;  // s^n / 2
};

inline constexpr double kDefaultSearchTolerance = 5e-4;
inline constexpr int kMaxBisectionSteps = 40;

namespace detail {

inline void require_ghz_args(int n, int k, double s) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "n must be positive");
  if (k < 0 || k > n) throw Error(ErrorKind::OutOfRange, "k must lie in [0, n]");
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorKind::OutOfRange, "s must lie in [0, 1]");
}

inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// a^p with 0^0 = 1, in log space.
inline double log_pow(double a, int p) {
  if (p == 0) return 0.0;
  return p * std::log(a);
}

inline double log_ghz_lambda(int n, int k, double s) {
  const double la = std::log((1.0 + s) / 2.0);
  const double b = (1.0 - s) / 2.0;
  const double lb_k = k == 0 ? 0.0 : log_pow(b, k);
  const double lb_nk = (n - k) == 0 ? 0.0 : log_pow(b, n - k);
  return std::log(0.5) + log_add(k * la + lb_nk, (n - k) * la + lb_k);
}

// log(s^n/2) - log(lambda_floor(n/2)); positive iff NPT on the balanced cut.
inline double ghz_log_margin(int n, double s) {
  const double lhs = s == 0.0 ? -std::numeric_limits<double>::infinity() : n * std::log(s) - std::log(2.0);
  return lhs - log_ghz_lambda(n, n / 2, s);
}

}  // namespace detail

/// Diagonal weight of a depolarized GHZ_n state on a basis string with k zeros.
inline double ghz_lambda(int n, int k, double s) {
  detail::require_ghz_args(n, k, s);
  const double a = (1.0 + s) / 2.0;
  const double b = (1.0 - s) / 2.0;
  return 0.5 * (std::pow(a, k) * std::pow(b, n - k) + std::pow(a, n - k) * std::pow(b, k));
}

inline GhzCoefficients ghz_coefficients(int n, int k, double s) {
  return {n, k, s, ghz_lambda(n, k, s), 0.5 * std::pow(s, n)};
}

/// s^n/2 > lambda_{floor(n/2)}; the minimal lambda_k sits at the balanced cut.
inline bool ghz_is_entangled(int n, double s) {
  if (n < 2) throw Error(ErrorKind::OutOfRange, "GHZ needs at least 2 qubits");
  detail::require_ghz_args(n, n / 2, s);
  return detail::ghz_log_margin(n, s) > 0.0;
}

/// Critical scaling factor of GHZ_n: closed form for even n, bisection for odd n.
inline double ghz_scrit(int n) {
  if (n < 2) throw Error(ErrorKind::OutOfRange, "GHZ needs at least 2 qubits");
  if (n % 2 == 0) return 1.0 / std::sqrt(std::pow(2.0, 2.0 - 2.0 / n) + 1.0);
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (detail::ghz_log_margin(n, mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double ghz_dcrit(int n) { return 1.0 - ghz_scrit(n); }

/// n -> infinity limit of ghz_scrit: 1/sqrt(5).
inline double ghz_scrit_limit() { return 1.0 / std::sqrt(5.0); }

/// Smallest partial-transpose eigenvalue after depolarizing every qubit by d.
inline double depolarized_min_pt(const DensityMatrix& rho, const QubitSubset& cut, double d) {
  return min_pt_eigenvalue(depolarize_all(rho, d), cut);
}

namespace detail {

inline double search_dcrit(const DensityMatrix& rho, const QubitSubset& cut, double tol) {
  double lo = 0.0;
  double hi = 1.0;
  for (int step = 0; step < kMaxBisectionSteps && hi - lo > tol; ++step) {
    const double mid = 0.5 * (lo + hi);
    (depolarized_min_pt(rho, cut, mid) < 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);

  // The search assumes a single crossing; probe either side of the root.
  const double below = depolarized_min_pt(rho, cut, std::max(0.0, root - 10.0 * tol));
  const double at = depolarized_min_pt(rho, cut, root);
  const double above = depolarized_min_pt(rho, cut, std::min(1.0, root + 10.0 * tol));
  constexpr double kSlack = 1e-12;
  if (below > at + kSlack || at > above + kSlack || above < -tol || below > tol) {
    throw Error(ErrorKind::NonMonotonic, "min PT eigenvalue is not monotone around d = " + std::to_string(root) +
                                             " on cut " + cut.to_string());
  }
  return root;
}

}  // namespace detail

/// Depolarization at which psi becomes PPT across `cut`, to bracket width tol.
inline double dcrit_cut(const StateVector& psi, const QubitSubset& cut, double tol = kDefaultSearchTolerance) {
  if (!(tol > 0.0)) throw Error(ErrorKind::OutOfRange, "tolerance must be positive");
  const auto rho = density_of(psi);
  if (min_pt_eigenvalue(rho, cut) >= -kPptTolerance) {
    throw Error(ErrorKind::NotEntangledAtZero, "state is PPT across " + cut.to_string() + " without noise");
  }
  return detail::search_dcrit(rho, cut, tol);
}

/// True when psi equals GHZ_n up to a global phase.
inline bool is_ghz(const StateVector& psi) {
  if (psi.n_qubits() < 2) return false;
  return std::abs(std::abs(inner(ghz(psi.n_qubits()).amplitudes(), psi.amplitudes())) - 1.0) < 1e-10;
}

/// Runs dcrit_cut on every canonical cut; the overall value is the maximum.
inline RobustnessReport dcrit_state(const StateVector& psi, double tol = kDefaultSearchTolerance,
                                    std::string label = {}) {
  if (!(tol > 0.0)) throw Error(ErrorKind::OutOfRange, "tolerance must be positive");
  const auto rho = density_of(psi);
  RobustnessReport report{std::move(label), {}, 0.0, tol,
                          is_ghz(psi) ? Criterion::NptExactGhz : Criterion::NptSufficient};
  bool any = false;
  for (const auto& cut : enumerate_cuts(psi.n_qubits())) {
    const bool npt = min_pt_eigenvalue(rho, cut) < -kPptTolerance;
    const double d = npt ? detail::search_dcrit(rho, cut, tol) : 0.0;
    any = any || npt;
    report.per_cut.push_back({cut, d, npt});
    report.overall_d_crit = std::max(report.overall_d_crit, d);
  }
  if (!any) throw Error(ErrorKind::NotEntangledAtZero, "state is PPT across every cut without noise");
  return report;
}

}  // namespace entrob

#endif  // ENTROB_ROBUSTNESS_HPP
