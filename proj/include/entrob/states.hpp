#ifndef ENTROB_STATES_HPP
#define ENTROB_STATES_HPP

// Qubit registers and the standard multi-qubit states.
//
// Bit convention: basis index i = sum_q b_q * 2^(n-1-q), so qubit 0 is the
// most significant bit and |b_0 b_1 ... b_{n-1}> reads left to right.

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "entrob/error.hpp"
#include "entrob/linalg.hpp"

namespace entrob {

inline constexpr int kMaxQubits = 12;

/// Value of qubit q (0 = most significant) in basis index `index` of an n-qubit register.
constexpr unsigned qubit_bit(std::size_t index, int q, int n) noexcept {
  return static_cast<unsigned>((index >> (n - 1 - q)) & 1U);
}

/// Bit mask selecting qubit q inside an n-qubit basis index.
constexpr std::size_t qubit_mask(int q, int n) noexcept { return std::size_t{1} << (n - 1 - q); }

inline void require_qubit_count(int n, int lo = 1, int hi = kMaxQubits) {
  if (n < lo || n > hi) {
    throw Error(ErrorKind::SizeOutOfRange,
                "qubit count " + std::to_string(n) + " outside [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
}

/// Normalized pure state of n qubits.
class StateVector {
 public:
  static constexpr double kNormTol = 1e-10;

  StateVector(int n_qubits, CVector amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
    require_qubit_count(n_);
    if (amps_.size() != (std::size_t{1} << n_)) {
      throw Error(ErrorKind::DimensionMismatch, "amplitude count is not 2^n");
    }
    const double nrm = norm(amps_);
    if (std::abs(nrm - 1.0) > kNormTol) {
      throw Error(ErrorKind::NotNormalized, "state norm " + std::to_string(nrm));
    }
  }

  /// Rescales to unit norm; ZeroVector if the input vanishes.
  static StateVector normalized(int n_qubits, CVector amplitudes) {
    const double nrm = norm(amplitudes);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw Error(ErrorKind::ZeroVector, "cannot normalize zero vector");
    for (auto& a : amplitudes) a /= nrm;
    return StateVector(n_qubits, std::move(amplitudes));
  }

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  const CVector& amplitudes() const noexcept { return amps_; }
  cplx operator[](std::size_t i) const noexcept { return amps_[i]; }

 private:
  int n_;
  CVector amps_;
};

/// Hermitian unit-trace matrix over n qubits. Construction checks
/// Hermiticity and trace; positivity is checked by min_eigenvalue() on demand.
class DensityMatrix {
 public:
  static constexpr double kTol = 1e-10;

  DensityMatrix(int n_qubits, ComplexMatrix matrix) : n_(n_qubits), m_(std::move(matrix)) {
    require_qubit_count(n_);
    if (m_.dim() != (std::size_t{1} << n_)) throw Error(ErrorKind::DimensionMismatch, "matrix dim is not 2^n");
    if (!m_.is_hermitian(kTol)) throw Error(ErrorKind::NotHermitian, "density matrix is not Hermitian");
    const cplx tr = m_.trace();
    if (std::abs(tr - 1.0) > kTol) throw Error(ErrorKind::NotNormalized, "density matrix trace is not 1");
  }

  static DensityMatrix maximally_mixed(int n_qubits) {
    require_qubit_count(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    return {n_qubits, ComplexMatrix::identity(dim) * cplx{1.0 / static_cast<double>(dim)}};
  }

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  cplx operator()(std::size_t r, std::size_t c) const noexcept { return m_(r, c); }

  double min_eigenvalue() const { return hermitian_eigen(m_, false).eigenvalues.front(); }
  double purity() const { return trace_of_product(m_, m_).real(); }

 private:
  int n_;
  ComplexMatrix m_;
};

/// Sorted set of distinct qubit indices in [0, n).
class QubitSubset {
 public:
  QubitSubset(int n_qubits, std::vector<int> members) : n_(n_qubits), members_(std::move(members)) {
    require_qubit_count(n_);
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
      throw Error(ErrorKind::BadSubset, "duplicate qubit index");
    }
    for (int q : members_) {
      if (q < 0 || q >= n_) throw Error(ErrorKind::BadSubset, "qubit index " + std::to_string(q) + " out of range");
    }
  }

  static QubitSubset all(int n_qubits) {
    std::vector<int> m(static_cast<std::size_t>(n_qubits));
    for (int q = 0; q < n_qubits; ++q) m[static_cast<std::size_t>(q)] = q;
    return {n_qubits, std::move(m)};
  }

  static QubitSubset from_mask(int n_qubits, std::size_t mask) {
    std::vector<int> m;
    for (int q = 0; q < n_qubits; ++q)
      if (mask & qubit_mask(q, n_qubits)) m.push_back(q);
    return {n_qubits, std::move(m)};
  }

  int n_qubits() const noexcept { return n_; }
  const std::vector<int>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(int q) const noexcept { return std::binary_search(members_.begin(), members_.end(), q); }
  bool is_proper_cut() const noexcept { return !members_.empty() && members_.size() < static_cast<std::size_t>(n_); }

  /// Basis-index bits belonging to the members.
  std::size_t mask() const noexcept {
    std::size_t m = 0;
    for (int q : members_) m |= qubit_mask(q, n_);
    return m;
  }

  QubitSubset complement() const {
    std::vector<int> m;
    for (int q = 0; q < n_; ++q)
      if (!contains(q)) m.push_back(q);
    return {n_, std::move(m)};
  }

  /// "1-3", "2-2": smaller side first.
  std::string cut_type() const {
    const auto a = members_.size();
    const auto b = static_cast<std::size_t>(n_) - a;
    return std::to_string(std::min(a, b)) + "-" + std::to_string(std::max(a, b));
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(members_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const QubitSubset&, const QubitSubset&) = default;

 private:
  int n_;
  std::vector<int> members_;
};

inline StateVector basis_state(int n, std::size_t index) {
  require_qubit_count(n);
  CVector a(std::size_t{1} << n);
  if (index >= a.size()) throw Error(ErrorKind::OutOfRange, "basis index out of range");
  a[index] = 1.0;
  return {n, std::move(a)};
}

inline StateVector ghz(int n) {
  require_qubit_count(n, 2);
  CVector a(std::size_t{1} << n);
  a.front() = a.back() = 1.0 / std::sqrt(2.0);
  return {n, std::move(a)};
}

/// Equal superposition over all basis states of Hamming weight k.
inline StateVector dicke(int n, int k) {
  require_qubit_count(n);
  if (k < 0 || k > n) throw Error(ErrorKind::SizeOutOfRange, "Dicke excitation count outside [0, n]");
  CVector a(std::size_t{1} << n);
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::popcount(i) == k) {
      a[i] = 1.0;
      ++count;
    }
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(count));
  for (auto& x : a) x *= amp;
  return {n, std::move(a)};
}

/// Tensor product psi ⊗ phi (psi's qubits come first).
inline StateVector product(const StateVector& psi, const StateVector& phi) {
  const int n = psi.n_qubits() + phi.n_qubits();
  require_qubit_count(n);
  CVector a(psi.dim() * phi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i)
    for (std::size_t j = 0; j < phi.dim(); ++j) a[i * phi.dim() + j] = psi[i] * phi[j];
  return StateVector::normalized(n, std::move(a));
}

enum class NamedState { G3, G4, W3, W4, X4, B4, S4, Singlet };

inline constexpr std::array<std::pair<NamedState, std::string_view>, 8> kNamedStates{{
    {NamedState::G3, "G3"},
    {NamedState::G4, "G4"},
    {NamedState::W3, "W3"},
    {NamedState::W4, "W4"},
    {NamedState::X4, "X4"},
    {NamedState::B4, "B4"},
    {NamedState::S4, "S4"},
    {NamedState::Singlet, "SINGLET"},
}};

inline std::string_view to_string(NamedState s) {
  for (const auto& [id, name] : kNamedStates)
    if (id == s) return name;
  return "?";
}

/// Case-insensitive lookup; UnknownName if no match.
inline NamedState parse_named_state(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (const auto& [id, name] : kNamedStates)
    if (upper == name) return id;
  throw Error(ErrorKind::UnknownName, "no state named '" + std::string(text) + "'");
}

inline StateVector named_state(NamedState which) {
  switch (which) {
    case NamedState::G3: return ghz(3);
    case NamedState::G4: return ghz(4);
    case NamedState::W3: return dicke(3, 1);
    case NamedState::W4: return dicke(4, 1);
    case NamedState::X4: return dicke(4, 2);
    case NamedState::B4: {
      CVector a(16);
      a[0b0000] = 0.5;
      a[0b0011] = 0.5;
      a[0b1100] = 0.5;
      a[0b1111] = -0.5;
      return {4, std::move(a)};
    }
    case NamedState::S4: {
      // Qubits (0,2) and (1,3) each hold |00>+|11>; written as |ab>|ab>.
      CVector a(16);
      for (std::size_t ab = 0; ab < 4; ++ab) a[(ab << 2) | ab] = 0.5;
      return {4, std::move(a)};
    }
    case NamedState::Singlet: {
      CVector a(4);
      a[0b01] = 1.0 / std::sqrt(2.0);
      a[0b10] = -1.0 / std::sqrt(2.0);
      return {2, std::move(a)};
    }
  }
  throw Error(ErrorKind::UnknownName, "unhandled named state");
}

inline StateVector named_state(std::string_view name) { return named_state(parse_named_state(name)); }

/// |psi><psi|; NotNormalized is impossible here since StateVector enforces it.
inline DensityMatrix density_of(const StateVector& psi) {
  return {psi.n_qubits(), outer(psi.amplitudes(), psi.amplitudes())};
}

}  // namespace entrob

#endif  // ENTROB_STATES_HPP
