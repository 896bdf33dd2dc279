#ifndef ENTROB_LINALG_HPP
#define ENTROB_LINALG_HPP

// Dense complex matrices and Hermitian eigensolvers.
//
// Two eigensolvers are provided. hermitian_eigen() reduces to a real
// symmetric tridiagonal form by Householder reflections and finishes with
// implicit QL; jacobi_eigen() runs cyclic complex Jacobi rotations and is
// kept as an independent cross-check for small matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entrob/error.hpp"

namespace entrob {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Square, row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  ComplexMatrix(std::size_t dim, std::vector<cplx> data) : dim_(dim), data_(std::move(data)) {
    if (data_.size() != dim_ * dim_) {
      throw Error(ErrorKind::DimensionMismatch, "matrix data size is not dim*dim");
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * dim_ + c]; }

  std::span<cplx> row(std::size_t r) noexcept { return {data_.data() + r * dim_, dim_}; }
  std::span<const cplx> row(std::size_t r) const noexcept { return {data_.data() + r * dim_, dim_}; }

  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  cplx trace() const noexcept {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  double frobenius_norm() const noexcept {
    double acc = 0.0;
    for (const auto& z : data_) acc += std::norm(z);
    return std::sqrt(acc);
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  /// Largest entrywise |a - a^dagger|.
  double hermiticity_defect() const noexcept {
    double m = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = r; c < dim_; ++c)
        m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return m;
  }

  bool is_hermitian(double tol) const noexcept { return hermiticity_defect() <= tol; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cplx k) noexcept {
    for (auto& z : data_) z *= k;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx k) { return a *= k; }
  friend ComplexMatrix operator*(cplx k, ComplexMatrix a) { return a *= k; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same(b);
    const std::size_t n = a.dim_;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto out_row = out.row(i);
      for (std::size_t k = 0; k < n; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        auto b_row = b.row(k);
        for (std::size_t j = 0; j < n; ++j) out_row[j] += aik * b_row[j];
      }
    }
    return out;
  }

  friend CVector operator*(const ComplexMatrix& a, std::span<const cplx> v) {
    if (v.size() != a.dim_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
    CVector out(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i) {
      cplx acc = 0.0;
      auto r = a.row(i);
      for (std::size_t j = 0; j < a.dim_; ++j) acc += r[j] * v[j];
      out[i] = acc;
    }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void check_same(const ComplexMatrix& o) const {
    if (o.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "matrix dimensions differ");
  }

  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// Largest entrywise |a - b|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "matrix dimensions differ");
  double m = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - db[i]));
  return m;
}

/// trace(a * b) without forming the product.
inline cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "matrix dimensions differ");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) acc += a(i, j) * b(j, i);
  return acc;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t ia = 0; ia < na; ++ia)
    for (std::size_t ja = 0; ja < na; ++ja) {
      const cplx x = a(ia, ja);
      if (x == cplx{}) continue;
      for (std::size_t ib = 0; ib < nb; ++ib)
        for (std::size_t jb = 0; jb < nb; ++jb) out(ia * nb + ib, ja * nb + jb) = x * b(ib, jb);
    }
  return out;
}

/// a ⊗ a ⊗ ... (count factors); count == 0 gives the 1x1 identity.
inline ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t count) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t i = 0; i < count; ++i) out = kron(out, a);
  return out;
}

inline ComplexMatrix outer(std::span<const cplx> ket, std::span<const cplx> bra) {
  if (ket.size() != bra.size()) throw Error(ErrorKind::DimensionMismatch, "outer product size mismatch");
  ComplexMatrix out(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) out(i, j) = ket[i] * std::conj(bra[j]);
  return out;
}

/// <u|v>
inline cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw Error(ErrorKind::DimensionMismatch, "inner product size mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

inline double norm(std::span<const cplx> v) { return std::sqrt(inner(v, v).real()); }

namespace pauli {
inline ComplexMatrix i2() { return ComplexMatrix::identity(2); }
inline ComplexMatrix x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
inline ComplexMatrix y() { return ComplexMatrix(2, {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0}); }
inline ComplexMatrix z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
/// |0><0|
inline ComplexMatrix p0() { return ComplexMatrix(2, {1.0, 0.0, 0.0, 0.0}); }
/// |1><1|
inline ComplexMatrix p1() { return ComplexMatrix(2, {0.0, 0.0, 0.0, 1.0}); }
/// |0><1|
inline ComplexMatrix raising() { return ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0}); }
/// |1><0|
inline ComplexMatrix lowering() { return ComplexMatrix(2, {0.0, 0.0, 1.0, 0.0}); }
}  // namespace pauli

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::optional<ComplexMatrix> eigenvectors;  // column i pairs with eigenvalues[i]
};

inline constexpr double kHermitianTol = 1e-10;

namespace detail {

inline void require_hermitian(const ComplexMatrix& a) {
  if (!a.all_finite()) throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");
  const double defect = a.hermiticity_defect();
  if (defect > kHermitianTol) {
    throw Error(ErrorKind::NotHermitian, "max |a - a^H| = " + std::to_string(defect));
  }
}

// Ascending order, ties kept in original index order.
inline Spectrum sorted_spectrum(std::vector<double> values, std::optional<ComplexMatrix> vectors) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
  Spectrum out;
  out.eigenvalues.reserve(values.size());
  for (auto i : order) out.eigenvalues.push_back(values[i]);
  if (vectors) {
    const std::size_t n = values.size();
    ComplexMatrix v(n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) v(r, c) = (*vectors)(r, order[c]);
    out.eigenvectors = std::move(v);
  }
  return out;
}

// Implicit QL with Wilkinson shifts on a real symmetric tridiagonal matrix.
// diag has n entries, off has n entries with off[k] coupling k and k+1
// (off[n-1] unused). If z is non-null it is an n x n row-major matrix whose
// columns are rotated along with the iteration.
inline void tridiagonal_ql(std::vector<double>& diag, std::vector<double>& off, std::vector<double>* z) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(diag.size());
  if (n == 0) return;
  off[static_cast<std::size_t>(n - 1)] = 0.0;
  constexpr int kMaxIterPerValue = 60;
  auto& d = diag;
  auto& e = off;
  for (std::ptrdiff_t l = 0; l < n; ++l) {
    int iter = 0;
    std::ptrdiff_t m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxIterPerValue) {
          throw Error(ErrorKind::NoConvergence, "tridiagonal QL exceeded its iteration cap");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        std::ptrdiff_t i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            auto& zz = *z;
            for (std::ptrdiff_t k = 0; k < n; ++k) {
              const std::size_t ki = static_cast<std::size_t>(k * n + i);
              f = zz[ki + 1];
              zz[ki + 1] = s * zz[ki] + c * f;
              zz[ki] = c * zz[ki] - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace detail

/// Full spectrum of a Hermitian matrix via Householder tridiagonalization and
/// implicit QL. Eigenvalues ascending; ties keep their pre-sort order.
inline Spectrum hermitian_eigen(const ComplexMatrix& a, bool want_vectors) {
  detail::require_hermitian(a);
  const std::size_t n = a.dim();
  if (n == 0) return {};

  // Work on the Hermitian part so tiny asymmetries do not leak in.
  ComplexMatrix t(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) t(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));

  ComplexMatrix q;
  if (want_vectors) q = ComplexMatrix::identity(n);

  CVector v(n);
  CVector w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    // Reflect x = t[k+1.., k] onto alpha * e1.
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(t(i, k));
    if (tail == 0.0) continue;
    const cplx x0 = t(k + 1, k);
    const double xnorm = std::sqrt(tail + std::norm(x0));
    const cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cplx{1.0};
    const cplx alpha = -phase * xnorm;

    std::fill(v.begin(), v.end(), cplx{});
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = t(i, k);
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
    vnorm = std::sqrt(vnorm);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

    // Trailing block update: T <- T - 2 v w^H - 2 w v^H with w = T v - (v^H T v) v.
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx acc = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) acc += t(i, j) * v[j];
      w[i] = acc;
    }
    cplx kappa = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) kappa += std::conj(v[i]) * w[i];
    for (std::size_t i = k + 1; i < n; ++i) w[i] -= kappa.real() * v[i];
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        t(i, j) -= 2.0 * (v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]));

    t(k + 1, k) = alpha;
    t(k, k + 1) = std::conj(alpha);
    for (std::size_t i = k + 2; i < n; ++i) {
      t(i, k) = 0.0;
      t(k, i) = 0.0;
    }

    if (want_vectors) {
      // Q <- Q (I - 2 v v^H)
      for (std::size_t r = 0; r < n; ++r) {
        cplx acc = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) acc += q(r, j) * v[j];
        for (std::size_t j = k + 1; j < n; ++j) q(r, j) -= 2.0 * acc * std::conj(v[j]);
      }
    }
  }

  // Phase-rotate the complex tridiagonal into a real symmetric one.
  std::vector<double> diag(n);
  std::vector<double> off(n, 0.0);
  CVector phases(n, cplx{1.0});
  for (std::size_t k = 0; k < n; ++k) diag[k] = t(k, k).real();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const cplx e = t(k + 1, k);
    const double mag = std::abs(e);
    off[k] = mag;
    phases[k + 1] = mag > 0.0 ? phases[k] * (e / mag) : phases[k];
  }

  if (!want_vectors) {
    detail::tridiagonal_ql(diag, off, nullptr);
    return detail::sorted_spectrum(std::move(diag), std::nullopt);
  }

  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
  detail::tridiagonal_ql(diag, off, &z);

  // Eigenvectors of a: (Q D) Z.
  ComplexMatrix vecs(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx qd = q(r, j) * phases[j];
      if (qd == cplx{}) continue;
      for (std::size_t c = 0; c < n; ++c) vecs(r, c) += qd * z[j * n + c];
    }
  }
  return detail::sorted_spectrum(std::move(diag), std::move(vecs));
}

/// Cyclic complex Jacobi. Stops once the off-diagonal Frobenius norm drops
/// below 1e-12 * ||a||_F; at most 100 sweeps.
inline Spectrum jacobi_eigen(const ComplexMatrix& a, bool want_vectors) {
  detail::require_hermitian(a);
  const std::size_t n = a.dim();
  if (n == 0) return {};
  constexpr int kMaxSweeps = 100;

  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = 1e-12 * std::max(a.frobenius_norm(), std::numeric_limits<double>::min());

  auto off_norm = [&] {
    double acc = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) acc += std::norm(m(r, c));
    return std::sqrt(acc);
  };

  int sweep = 0;
  while (off_norm() > threshold) {
    if (sweep++ == kMaxSweeps) throw Error(ErrorKind::NoConvergence, "Jacobi exceeded 100 sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = m(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx ph = apq / mag;  // e^{i phi}
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double tn = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(tn * tn + 1.0);
        const double s = tn * c;
        // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q); m <- G^H m G.
        const cplx gqp = -s * std::conj(ph);
        const cplx gqq = c * std::conj(ph);
        for (std::size_t r = 0; r < n; ++r) {
          const cplx mp = m(r, p);
          const cplx mq = m(r, q);
          m(r, p) = c * mp + gqp * mq;
          m(r, q) = s * mp + gqq * mq;
        }
        for (std::size_t c2 = 0; c2 < n; ++c2) {
          const cplx mp = m(p, c2);
          const cplx mq = m(q, c2);
          m(p, c2) = c * mp + std::conj(gqp) * mq;
          m(q, c2) = s * mp + std::conj(gqq) * mq;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(q, q) = m(q, q).real();
        for (std::size_t r = 0; r < n; ++r) {
          const cplx vp = v(r, p);
          const cplx vq = v(r, q);
          v(r, p) = c * vp + gqp * vq;
          v(r, q) = s * vp + gqq * vq;
        }
      }
    }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = m(i, i).real();
  return detail::sorted_spectrum(std::move(values), want_vectors ? std::optional(std::move(v)) : std::nullopt);
}

/// Rebuilds sum_i f(lambda_i) |v_i><v_i| from a spectrum with eigenvectors.
template <typename Fn>
ComplexMatrix spectral_function(const Spectrum& spec, Fn&& f) {
  const auto& vecs = *spec.eigenvectors;
  const std::size_t n = vecs.dim();
  ComplexMatrix out(n);
  CVector weights(n);
  for (std::size_t k = 0; k < n; ++k) weights[k] = f(spec.eigenvalues[k]);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += vecs(r, k) * weights[k] * std::conj(vecs(c, k));
      out(r, c) = acc;
    }
  return out;
}

/// U = exp(-i theta h) = sum_k e^{-i theta lambda_k} |v_k><v_k|.
inline ComplexMatrix hermitian_evolution(const ComplexMatrix& h, double theta) {
  const Spectrum spec = hermitian_eigen(h, true);
  return spectral_function(spec, [theta](double lambda) { return std::exp(cplx{0.0, -theta * lambda}); });
}

}  // namespace entrob

#endif  // ENTROB_LINALG_HPP
