#ifndef ENTROB_SQUEEZING_HPP
#define ENTROB_SQUEEZING_HPP

// Spin squeezing of n-qubit states.
//
// All frame-dependent quantities are derived from the first and symmetrized
// second moments of the collective spin, so a state is reduced once to
// SpinMoments and every frame is then evaluated algebraically.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "entrob/error.hpp"
#include "entrob/linalg.hpp"
#include "entrob/states.hpp"

namespace entrob {

using Vec3 = std::array<double, 3>;

inline constexpr int kMaxSqueezingQubits = 10;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double length(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 scaled(const Vec3& a, double k) { return {a[0] * k, a[1] * k, a[2] * k}; }

/// J_axis = 1/2 sum_q (axis . sigma)_q.
inline ComplexMatrix collective_operator(int n, const Vec3& axis) {
  require_qubit_count(n, 1, kMaxSqueezingQubits);
  if (std::abs(length(axis) - 1.0) > 1e-9) throw Error(ErrorKind::BadAxis, "axis is not a unit vector");
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix j(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (int q = 0; q < n; ++q) {
      const unsigned b = qubit_bit(c, q, n);
      // column b of (axis . sigma): diagonal +-nz, off-diagonal nx +- i ny
      j(c, c) += 0.5 * (b ? -axis[2] : axis[2]);
      const cplx off = b ? cplx{axis[0], -axis[1]} : cplx{axis[0], axis[1]};
      j(c ^ qubit_mask(q, n), c) += 0.5 * off;
    }
  }
  return j;
}

struct CollectiveOperators {
  int n;
  ComplexMatrix jx, jy, jz;
};

inline CollectiveOperators collective_operators(int n) {
  return {n, collective_operator(n, {1, 0, 0}), collective_operator(n, {0, 1, 0}), collective_operator(n, {0, 0, 1})};
}

/// <J_a> and Re<J_a J_b> in the lab frame.
struct SpinMoments {
  int n;
  Vec3 mean;
  std::array<Vec3, 3> second;

  double mean_along(const Vec3& u) const { return dot(u, mean); }
  /// <J_u J_v + J_v J_u> / 2
  double second_along(const Vec3& u, const Vec3& v) const {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        acc += u[static_cast<std::size_t>(a)] * second[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *
               v[static_cast<std::size_t>(b)];
    return acc;
  }
};

inline SpinMoments spin_moments(const DensityMatrix& rho) {
  const auto ops = collective_operators(rho.n_qubits());
  const std::array<const ComplexMatrix*, 3> j{&ops.jx, &ops.jy, &ops.jz};
  SpinMoments m{rho.n_qubits(), {}, {}};
  for (std::size_t a = 0; a < 3; ++a) {
    m.mean[a] = trace_of_product(rho.matrix(), *j[a]).real();
    const ComplexMatrix rj = rho.matrix() * *j[a];
    for (std::size_t b = 0; b < 3; ++b) m.second[a][b] = trace_of_product(rj, *j[b]).real();
  }
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b) m.second[a][b] = m.second[b][a] = 0.5 * (m.second[a][b] + m.second[b][a]);
  return m;
}

inline SpinMoments spin_moments(const StateVector& psi) {
  const auto ops = collective_operators(psi.n_qubits());
  const std::array<CVector, 3> jpsi{ops.jx * std::span<const cplx>(psi.amplitudes()),
                                    ops.jy * std::span<const cplx>(psi.amplitudes()),
                                    ops.jz * std::span<const cplx>(psi.amplitudes())};
  SpinMoments m{psi.n_qubits(), {}, {}};
  for (std::size_t a = 0; a < 3; ++a) {
    m.mean[a] = inner(psi.amplitudes(), jpsi[a]).real();
    for (std::size_t b = 0; b < 3; ++b) m.second[a][b] = inner(jpsi[a], jpsi[b]).real();
  }
  return m;
}

/// Right-handed orthonormal frame; z points along the mean spin.
struct Frame {
  Vec3 x, y, z;
};

struct SqueezingReport {
  double xi_squared;
  double zeta;       // 2 |<J>| / n
  Frame frame;
  double var_x;      // <J_x^2> in the frame
  double mean_spin;  // |<J>|
};

/// xi^2 = n <J_x^2> / (<J_y>^2 + <J_z>^2) in a fixed frame.
inline double xi_squared_in_frame(const SpinMoments& m, const Frame& f) {
  const double my = m.mean_along(f.y);
  const double mz = m.mean_along(f.z);
  const double denom = my * my + mz * mz;
  if (denom <= 1e-12) throw Error(ErrorKind::MeanSpinVanishes, "transverse mean spin vanishes in this frame");
  return m.n * m.second_along(f.x, f.x) / denom;
}

/// z along <J>; x the transverse direction of smallest <J_x^2>.
inline SqueezingReport xi_squared(const SpinMoments& m) {
  const double len = length(m.mean);
  if (len <= 1e-6) throw Error(ErrorKind::MeanSpinVanishes, "mean spin length below 1e-6");
  const Vec3 z = scaled(m.mean, 1.0 / len);

  // Deterministic transverse basis: cross z with the lab axis least aligned to it.
  std::size_t ref_axis = 0;
  for (std::size_t a = 1; a < 3; ++a)
    if (std::abs(z[a]) < std::abs(z[ref_axis])) ref_axis = a;
  Vec3 ref{};
  ref[ref_axis] = 1.0;
  Vec3 e1 = cross(ref, z);
  e1 = scaled(e1, 1.0 / length(e1));
  const Vec3 e2 = cross(z, e1);

  const double c11 = m.second_along(e1, e1);
  const double c22 = m.second_along(e2, e2);
  const double c12 = m.second_along(e1, e2);
  const double mid = 0.5 * (c11 + c22);
  const double rad = std::hypot(0.5 * (c11 - c22), c12);
  const double var_min = mid - rad;
  // Eigenvector of [[c11, c12], [c12, c22]] for var_min.
  double u1 = 1.0;
  double u2 = 0.0;
  if (rad > 0.0) {
    if (c11 - var_min >= c22 - var_min) {
      u1 = -c12;
      u2 = c11 - var_min;
    } else {
      u1 = c22 - var_min;
      u2 = -c12;
    }
    const double ul = std::hypot(u1, u2);
    u1 /= ul;
    u2 /= ul;
  }
  const Vec3 x{u1 * e1[0] + u2 * e2[0], u1 * e1[1] + u2 * e2[1], u1 * e1[2] + u2 * e2[2]};
  const Vec3 y = cross(z, x);
  const double var_x = m.second_along(x, x);
  return {m.n * var_x / (len * len), 2.0 * len / m.n, {x, y, z}, var_x, len};
}

inline SqueezingReport xi_squared(const DensityMatrix& rho) { return xi_squared(spin_moments(rho)); }
inline SqueezingReport xi_squared(const StateVector& psi) { return xi_squared(spin_moments(psi)); }

/// exp(-i mu J_x^2) on |0...0>, with the spectral decomposition of J_x^2 cached per n.
class OneAxisTwist {
 public:
  explicit OneAxisTwist(int n) : n_(n) {
    require_qubit_count(n, 1, kMaxSqueezingQubits);
    const auto jx = collective_operator(n, {1, 0, 0});
    auto spectrum = hermitian_eigen(jx * jx, true);
    eigenvalues_ = std::move(spectrum.eigenvalues);
    vectors_ = std::move(*spectrum.eigenvectors);
    // Overlaps <v_k|0...0> are the conjugated first row of the eigenvector matrix.
    const auto& v = vectors_;
    overlaps_.resize(v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k) overlaps_[k] = std::conj(v(0, k));
  }

  int n_qubits() const noexcept { return n_; }

  StateVector state(double mu) const {
    const auto& v = vectors_;
    const std::size_t dim = v.dim();
    CVector coeff(dim);
    for (std::size_t k = 0; k < dim; ++k)
      coeff[k] = std::exp(cplx{0.0, -mu * eigenvalues_[k]}) * overlaps_[k];
    CVector out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) acc += v(r, k) * coeff[k];
      out[r] = acc;
    }
    return StateVector::normalized(n_, std::move(out));
  }

 private:
  int n_;
  std::vector<double> eigenvalues_;
  ComplexMatrix vectors_;
  CVector overlaps_;
};

inline StateVector one_axis_twist(int n, double mu) { return OneAxisTwist(n).state(mu); }

struct TwistScanPoint {
  double mu;
  SqueezingReport report;
};

/// Evaluates xi^2 on mu_i = (i + 1) (pi/2) / (points + 1), i < points. Points
/// whose mean spin vanishes are skipped.
inline std::vector<TwistScanPoint> scan_one_axis_twist(int n, int points) {
  if (points < 1) throw Error(ErrorKind::OutOfRange, "scan needs at least one point");
  const OneAxisTwist twist(n);
  std::vector<TwistScanPoint> out;
  for (int i = 0; i < points; ++i) {
    const double mu = (i + 1) * (std::numbers::pi / 2.0) / (points + 1);
    try {
      out.push_back({mu, xi_squared(twist.state(mu))});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MeanSpinVanishes) throw;
    }
  }
  return out;
}

inline std::optional<TwistScanPoint> min_xi_squared(const std::vector<TwistScanPoint>& scan) {
  std::optional<TwistScanPoint> best;
  for (const auto& p : scan)
    if (!best || p.report.xi_squared < best->report.xi_squared) best = p;
  return best;
}

/// Squeezing parameter after depolarizing every qubit with scaling factor s.
inline double xi_after_depolarization(double xi0_sq, double zeta, double s) {
  if (!(zeta > 0.0 && zeta <= 1.0 + 1e-9)) throw Error(ErrorKind::OutOfRange, "zeta must lie in (0, 1]");
  if (!(s > 0.0 && s <= 1.0)) throw Error(ErrorKind::OutOfRange, "s must lie in (0, 1]");
  if (!(xi0_sq >= 0.0)) throw Error(ErrorKind::OutOfRange, "xi0^2 must be non-negative");
  return (1.0 - s * s) / (zeta * zeta * s * s) + xi0_sq;
}

/// Smallest scaling factor keeping xi^2 < 1: 1 / sqrt(1 + zeta^2 (1 - xi0^2)).
inline double scrit_squeezed(double zeta, double xi0_sq) {
  if (!(zeta >= 0.0 && zeta <= 1.0 + 1e-9)) throw Error(ErrorKind::OutOfRange, "zeta must lie in [0, 1]");
  if (!(xi0_sq >= 0.0 && xi0_sq <= 1.0)) throw Error(ErrorKind::OutOfRange, "xi0^2 must lie in [0, 1]");
  return 1.0 / std::sqrt(1.0 + zeta * zeta * (1.0 - xi0_sq));
}

}  // namespace entrob

#endif  // ENTROB_SQUEEZING_HPP
