#ifndef ENTROB_TESTS_ORACLES_HPP
#define ENTROB_TESTS_ORACLES_HPP

// Brute-force reference computations for tests. Everything here is built
// from explicit Kronecker products and textbook formulas so it shares no
// index arithmetic with the library code it checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "entrob/linalg.hpp"
#include "entrob/states.hpp"

namespace oracle {

using entrob::ComplexMatrix;
using entrob::cplx;
using entrob::CVector;

/// Operator `op` on qubit q of n, identity elsewhere, by explicit kron.
inline ComplexMatrix embed(const ComplexMatrix& op, int q, int n) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int k = 0; k < n; ++k) out = entrob::kron(out, k == q ? op : entrob::pauli::i2());
  return out;
}

/// Kraus form: (1 - 3d/4) rho + d/4 (X rho X + Y rho Y + Z rho Z) on each qubit of `targets`.
inline ComplexMatrix kraus_depolarize(ComplexMatrix rho, int n, const std::vector<int>& targets, double d) {
  const ComplexMatrix paulis[] = {entrob::pauli::x(), entrob::pauli::y(), entrob::pauli::z()};
  for (int q : targets) {
    ComplexMatrix next = rho * cplx{1.0 - 0.75 * d};
    for (const auto& p : paulis) {
      const ComplexMatrix e = embed(p, q, n);
      next += (e * rho * e) * cplx{0.25 * d};
    }
    rho = std::move(next);
  }
  return rho;
}

/// Partial transpose via the Pauli expansion: transposition flips the sign of Y.
inline ComplexMatrix pauli_partial_transpose(const ComplexMatrix& rho, int n, const std::vector<int>& cut) {
  const ComplexMatrix single[] = {entrob::pauli::i2(), entrob::pauli::x(), entrob::pauli::y(), entrob::pauli::z()};
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix out(dim);
  const std::size_t count = std::size_t{1} << (2 * n);
  for (std::size_t idx = 0; idx < count; ++idx) {
    ComplexMatrix p = ComplexMatrix::identity(1);
    double sign = 1.0;
    std::size_t rem = idx;
    std::vector<int> letters(static_cast<std::size_t>(n));
    for (int q = n - 1; q >= 0; --q) {
      letters[static_cast<std::size_t>(q)] = static_cast<int>(rem & 3U);
      rem >>= 2;
    }
    for (int q = 0; q < n; ++q) {
      const int l = letters[static_cast<std::size_t>(q)];
      p = entrob::kron(p, single[l]);
      for (int c : cut)
        if (c == q && l == 2) sign = -sign;
    }
    const cplx coeff = entrob::trace_of_product(rho, p) / static_cast<double>(dim);
    out += p * (coeff * sign);
  }
  return out;
}

/// Characteristic polynomial det(x I - a) by Faddeev-LeVerrier; coefficients
/// from x^n down to x^0.
inline std::vector<cplx> charpoly(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<cplx> c(n + 1);
  c[0] = 1.0;
  ComplexMatrix m(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + ComplexMatrix::identity(n) * c[k - 1];
    c[k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

/// Coefficients of prod (x - r_i), highest power first.
inline std::vector<cplx> poly_from_roots(const std::vector<double>& roots) {
  std::vector<cplx> c{1.0};
  for (double r : roots) {
    std::vector<cplx> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

/// exp(-i theta h) from a truncated Taylor series.
inline ComplexMatrix taylor_evolution(const ComplexMatrix& h, double theta, int terms) {
  const std::size_t n = h.dim();
  ComplexMatrix out = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  const ComplexMatrix step = h * cplx{0.0, -theta};
  for (int k = 1; k < terms; ++k) {
    term = term * step;
    term *= cplx{1.0 / k};
    out += term;
  }
  return out;
}

/// Generic bisection for a sign change of f on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double width) {
  const bool rising = f(lo) < 0.0;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) < 0.0) == rising ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Seeded Haar-like random pure state (normalized complex Gaussian vector).
inline entrob::StateVector random_state(int n, std::mt19937_64& rng, bool real_only = false) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector a(std::size_t{1} << n);
  for (auto& x : a) x = real_only ? cplx{g(rng), 0.0} : cplx{g(rng), g(rng)};
  return entrob::StateVector::normalized(n, std::move(a));
}

/// Seeded random mixed state G G^dagger / tr(G G^dagger).
inline entrob::DensityMatrix random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix gm(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) gm(r, c) = cplx{g(rng), g(rng)};
  ComplexMatrix rho = gm * gm.adjoint();
  rho *= cplx{1.0 / rho.trace().real()};
  // Exact Hermitian symmetrization.
  ComplexMatrix h = rho + rho.adjoint();
  h *= 0.5;
  return {n, std::move(h)};
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix a(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    a(r, r) = g(rng);
    for (std::size_t c = r + 1; c < dim; ++c) {
      a(r, c) = cplx{g(rng), g(rng)};
      a(c, r) = std::conj(a(r, c));
    }
  }
  return a;
}

}  // namespace oracle

#endif  // ENTROB_TESTS_ORACLES_HPP
