#ifndef ENTROB_CHANNELS_HPP
#define ENTROB_CHANNELS_HPP

// Local noise channels on multi-qubit density matrices.
//
// depolarize() realizes rho -> (1-d) rho + d (I_q/2 ⊗ Tr_q rho) qubit by
// qubit. pauli_weight_scale() is the same channel applied to all qubits,
// computed in the Pauli basis where a string of weight w is scaled by s^w.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "entrob/error.hpp"
#include "entrob/linalg.hpp"
#include "entrob/states.hpp"

namespace entrob {

/// Depolarization probability d in [0, 1] with scaling factor s = 1 - d.
class DepolarizationLevel {
 public:
  explicit DepolarizationLevel(double d) : d_(d) {
    if (!(d >= 0.0 && d <= 1.0)) throw Error(ErrorKind::OutOfRange, "depolarization must lie in [0, 1]");
  }
  static DepolarizationLevel from_scaling(double s) { return DepolarizationLevel(1.0 - s); }

  double d() const noexcept { return d_; }
  double s() const noexcept { return 1.0 - d_; }

 private:
  double d_;
};

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

class PauliString {
 public:
  explicit PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {}

  /// Base-4 index with qubit 0 as the most significant digit.
  static PauliString from_index(int n_qubits, std::size_t index) {
    std::vector<Pauli> letters(static_cast<std::size_t>(n_qubits));
    for (int q = n_qubits - 1; q >= 0; --q) {
      letters[static_cast<std::size_t>(q)] = static_cast<Pauli>(index & 3U);
      index >>= 2;
    }
    return PauliString(std::move(letters));
  }

  int n_qubits() const noexcept { return static_cast<int>(letters_.size()); }
  const std::vector<Pauli>& letters() const noexcept { return letters_; }

  int weight() const noexcept {
    int w = 0;
    for (auto l : letters_) w += (l != Pauli::I);
    return w;
  }

  /// Basis-index bits flipped by the string (X and Y letters).
  std::size_t flip_mask() const noexcept {
    const int n = n_qubits();
    std::size_t m = 0;
    for (int q = 0; q < n; ++q) {
      const auto l = letters_[static_cast<std::size_t>(q)];
      if (l == Pauli::X || l == Pauli::Y) m |= qubit_mask(q, n);
    }
    return m;
  }

  /// <col ^ flip_mask| P |col>: the only nonzero entry in column col.
  cplx column_value(std::size_t col) const noexcept {
    const int n = n_qubits();
    cplx v = 1.0;
    for (int q = 0; q < n; ++q) {
      const unsigned b = qubit_bit(col, q, n);
      switch (letters_[static_cast<std::size_t>(q)]) {
        case Pauli::I:
        case Pauli::X: break;
        case Pauli::Y: v *= b ? cplx{0.0, -1.0} : cplx{0.0, 1.0}; break;
        case Pauli::Z: v *= b ? -1.0 : 1.0; break;
      }
    }
    return v;
  }

  ComplexMatrix matrix() const {
    const std::size_t dim = std::size_t{1} << n_qubits();
    ComplexMatrix m(dim);
    const std::size_t flip = flip_mask();
    for (std::size_t c = 0; c < dim; ++c) m(c ^ flip, c) = column_value(c);
    return m;
  }

  std::string to_string() const {
    std::string s;
    for (auto l : letters_) s += "IXYZ"[static_cast<int>(l)];
    return s;
  }

 private:
  std::vector<Pauli> letters_;
};

namespace detail {

inline void require_target(const DensityMatrix& rho, int q) {
  if (q < 0 || q >= rho.n_qubits()) throw Error(ErrorKind::BadSubset, "target qubit out of range");
}

// K rho K^dagger for a 2x2 K acting on qubit q.
inline ComplexMatrix conjugate_local(const ComplexMatrix& rho, int n, int q, const ComplexMatrix& k) {
  const std::size_t dim = rho.dim();
  const std::size_t bit = qubit_mask(q, n);
  ComplexMatrix tmp(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (r & bit) continue;
    const std::size_t r1 = r | bit;
    for (std::size_t c = 0; c < dim; ++c) {
      const cplx a0 = rho(r, c);
      const cplx a1 = rho(r1, c);
      tmp(r, c) = k(0, 0) * a0 + k(0, 1) * a1;
      tmp(r1, c) = k(1, 0) * a0 + k(1, 1) * a1;
    }
  }
  ComplexMatrix out(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (c & bit) continue;
      const std::size_t c1 = c | bit;
      const cplx a0 = tmp(r, c);
      const cplx a1 = tmp(r, c1);
      out(r, c) = a0 * std::conj(k(0, 0)) + a1 * std::conj(k(0, 1));
      out(r, c1) = a0 * std::conj(k(1, 0)) + a1 * std::conj(k(1, 1));
    }
  }
  return out;
}

// Re-embedded single-qubit depolarization, in place.
inline void depolarize_qubit(ComplexMatrix& m, int n, int q, double d) {
  const std::size_t dim = m.dim();
  const std::size_t bit = qubit_mask(q, n);
  const double keep = 1.0 - d;
  for (std::size_t r = 0; r < dim; ++r) {
    if (r & bit) continue;
    for (std::size_t c = 0; c < dim; ++c) {
      if (c & bit) continue;
      // 2x2 block of qubit q for the fixed remaining bits (r, c).
      const cplx a00 = m(r, c);
      const cplx a11 = m(r | bit, c | bit);
      const cplx mixed = 0.5 * d * (a00 + a11);
      m(r, c) = keep * a00 + mixed;
      m(r | bit, c | bit) = keep * a11 + mixed;
      m(r, c | bit) *= keep;
      m(r | bit, c) *= keep;
    }
  }
}

}  // namespace detail

/// Partially depolarizing channel applied independently to each target qubit.
inline DensityMatrix depolarize(const DensityMatrix& rho, const QubitSubset& targets, DepolarizationLevel level) {
  if (targets.n_qubits() != rho.n_qubits()) throw Error(ErrorKind::BadSubset, "subset register size mismatch");
  ComplexMatrix m = rho.matrix();
  for (int q : targets.members()) detail::depolarize_qubit(m, rho.n_qubits(), q, level.d());
  return {rho.n_qubits(), std::move(m)};
}

inline DensityMatrix depolarize_all(const DensityMatrix& rho, double d) {
  return depolarize(rho, QubitSubset::all(rho.n_qubits()), DepolarizationLevel(d));
}

/// Pauli-basis coefficients c_P = tr(rho P) / 2^n indexed as in PauliString::from_index.
inline std::vector<cplx> pauli_coefficients(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  const std::size_t dim = rho.dim();
  const std::size_t count = std::size_t{1} << (2 * n);
  std::vector<cplx> coeffs(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto p = PauliString::from_index(n, idx);
    const std::size_t flip = p.flip_mask();
    cplx acc = 0.0;
    for (std::size_t c = 0; c < dim; ++c) acc += rho(c, c ^ flip) * p.column_value(c);
    coeffs[idx] = acc / static_cast<double>(dim);
  }
  return coeffs;
}

/// Depolarization of every qubit expressed as sum_P c_P s^weight(P) P.
inline DensityMatrix pauli_weight_scale(const DensityMatrix& rho, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorKind::OutOfRange, "scaling factor must lie in [0, 1]");
  const int n = rho.n_qubits();
  const std::size_t dim = rho.dim();
  const auto coeffs = pauli_coefficients(rho);
  std::vector<double> powers(static_cast<std::size_t>(n) + 1, 1.0);
  for (int w = 1; w <= n; ++w) powers[static_cast<std::size_t>(w)] = powers[static_cast<std::size_t>(w) - 1] * s;

  ComplexMatrix out(dim);
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
    if (coeffs[idx] == cplx{}) continue;
    const auto p = PauliString::from_index(n, idx);
    const double scale = powers[static_cast<std::size_t>(p.weight())];
    if (scale == 0.0) continue;
    const cplx k = coeffs[idx] * scale;
    const std::size_t flip = p.flip_mask();
    for (std::size_t c = 0; c < dim; ++c) out(c ^ flip, c) += k * p.column_value(c);
  }
  return {n, std::move(out)};
}

/// Projective measurement of qubit `target` along the Bloch direction axis,
/// outcome discarded: sum_{+,-} P rho P with P = (I ± axis·sigma)/2.
inline DensityMatrix measure_along(const DensityMatrix& rho, int target, const std::array<double, 3>& axis) {
  detail::require_target(rho, target);
  const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(len - 1.0) > 1e-9) throw Error(ErrorKind::BadAxis, "measurement axis is not a unit vector");
  const cplx nx = axis[0];
  const cplx ny = axis[1];
  const cplx nz = axis[2];
  // axis·sigma = [[nz, nx - i ny], [nx + i ny, -nz]]
  const cplx off_up = nx - cplx{0.0, 1.0} * ny;
  const cplx off_dn = nx + cplx{0.0, 1.0} * ny;
  const ComplexMatrix plus(2, {0.5 * (1.0 + nz), 0.5 * off_up, 0.5 * off_dn, 0.5 * (1.0 - nz)});
  const ComplexMatrix minus(2, {0.5 * (1.0 - nz), -0.5 * off_up, -0.5 * off_dn, 0.5 * (1.0 + nz)});
  const int n = rho.n_qubits();
  ComplexMatrix out = detail::conjugate_local(rho.matrix(), n, target, plus);
  out += detail::conjugate_local(rho.matrix(), n, target, minus);
  return {n, std::move(out)};
}

/// Uniform direction on the unit sphere: z uniform on [-1, 1], azimuth uniform on [0, 2 pi).
template <typename Engine>
std::array<double, 3> uniform_sphere_direction(Engine& engine) {
  auto unit = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
  const double z = 2.0 * unit() - 1.0;
  const double phi = 2.0 * std::numbers::pi * unit();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

/// Average of measure_along over n_samples directions drawn from a fresh
/// mt19937_64 seeded with `seed`. Converges to depolarize(rho, {target}, 2/3).
inline DensityMatrix random_measurement_average(const DensityMatrix& rho, int target, std::size_t n_samples,
                                                std::uint64_t seed) {
  detail::require_target(rho, target);
  if (n_samples == 0) throw Error(ErrorKind::OutOfRange, "n_samples must be at least 1");
  std::mt19937_64 engine(seed);
  const int n = rho.n_qubits();
  const std::size_t dim = rho.dim();
  const std::size_t bit = qubit_mask(target, n);

  // Sum the projectors' 2x2 superoperator action directly: for each sample the
  // map on qubit-target blocks is linear in the 4 block entries.
  std::array<cplx, 16> super{};  // out[ab] = sum_{cd} super[ab*4+cd] in[cd], ab = 2a+b
  for (std::size_t k = 0; k < n_samples; ++k) {
    const auto ax = uniform_sphere_direction(engine);
    const cplx off_up{ax[0], -ax[1]};
    const cplx off_dn{ax[0], ax[1]};
    const std::array<std::array<cplx, 4>, 2> projectors{{
        {0.5 * (1.0 + ax[2]), 0.5 * off_up, 0.5 * off_dn, 0.5 * (1.0 - ax[2])},
        {0.5 * (1.0 - ax[2]), -0.5 * off_up, -0.5 * off_dn, 0.5 * (1.0 + ax[2])},
    }};
    for (const auto& p : projectors) {
      // (P X P^dagger)[a][b] = sum_{c,d} P[a][c] X[c][d] conj(P[b][d])
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d)
              super[static_cast<std::size_t>((2 * a + b) * 4 + 2 * c + d)] +=
                  p[static_cast<std::size_t>(2 * a + c)] * std::conj(p[static_cast<std::size_t>(2 * b + d)]);
    }
  }
  for (auto& x : super) x /= static_cast<double>(n_samples);

  const auto& in = rho.matrix();
  ComplexMatrix out(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (r & bit) continue;
    for (std::size_t c = 0; c < dim; ++c) {
      if (c & bit) continue;
      const std::array<cplx, 4> block{in(r, c), in(r, c | bit), in(r | bit, c), in(r | bit, c | bit)};
      std::array<cplx, 4> res{};
      for (std::size_t ab = 0; ab < 4; ++ab)
        for (std::size_t cd = 0; cd < 4; ++cd) res[ab] += super[ab * 4 + cd] * block[cd];
      out(r, c) = res[0];
      out(r, c | bit) = res[1];
      out(r | bit, c) = res[2];
      out(r | bit, c | bit) = res[3];
    }
  }
  // Symmetrize away accumulated rounding so the result is exactly Hermitian.
  ComplexMatrix herm = out + out.adjoint();
  herm *= 0.5;
  return {n, std::move(herm)};
}

/// Measures every qubit in the computational basis with probability p.
inline DensityMatrix probabilistic_measure(const DensityMatrix& rho, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::BadProbability, "measurement probability must lie in [0, 1]");
  const int n = rho.n_qubits();
  ComplexMatrix m = rho.matrix();
  const std::size_t dim = m.dim();
  // Each qubit on which row and column indices differ contributes a factor 1 - p.
  std::vector<double> factor(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) factor[static_cast<std::size_t>(k)] = factor[static_cast<std::size_t>(k) - 1] * (1.0 - p);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) *= factor[static_cast<std::size_t>(std::popcount(r ^ c))];
  return {n, std::move(m)};
}

}  // namespace entrob

#endif  // ENTROB_CHANNELS_HPP
