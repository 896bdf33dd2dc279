#ifndef ENTROB_SEPARABILITY_HPP
#define ENTROB_SEPARABILITY_HPP

// Partial transposition across bipartite cuts, PPT classification, and the
// pure-state diagnostics (reduced states, entropy, Schmidt rank).
//
// A PPT verdict for a general state only means the criterion is exhausted;
// it is not a separability proof.

#include <algorithm>
#include <cmath>
#include <vector>

#include "entrob/error.hpp"
#include "entrob/linalg.hpp"
#include "entrob/states.hpp"

namespace entrob {

inline constexpr double kPptTolerance = 1e-9;

struct CutReport {
  QubitSubset cut;
  double min_pt_eigenvalue;
  bool is_ppt;  // min_pt_eigenvalue >= -tolerance
  double tolerance;
};

struct NptVerdict {
  std::vector<CutReport> cuts;  // in enumerate_cuts order
  bool entangled;               // some cut has min_pt_eigenvalue < -tolerance
};

namespace detail {

inline void require_cut(const DensityMatrix& rho, const QubitSubset& cut) {
  if (cut.n_qubits() != rho.n_qubits()) throw Error(ErrorKind::BadSubset, "cut register size mismatch");
  if (!cut.is_proper_cut()) throw Error(ErrorKind::BadSubset, "cut must be nonempty and proper");
}

// Full basis index from the bits of `kept` (ordered like kept_qubits) and of
// `traced` (ordered like traced_qubits).
inline std::size_t merge_bits(std::size_t kept, const std::vector<int>& kept_qubits, std::size_t traced,
                              const std::vector<int>& traced_qubits, int n) {
  std::size_t full = 0;
  const int nk = static_cast<int>(kept_qubits.size());
  const int nt = static_cast<int>(traced_qubits.size());
  for (int i = 0; i < nk; ++i)
    if (qubit_bit(kept, i, nk)) full |= qubit_mask(kept_qubits[static_cast<std::size_t>(i)], n);
  for (int i = 0; i < nt; ++i)
    if (qubit_bit(traced, i, nt)) full |= qubit_mask(traced_qubits[static_cast<std::size_t>(i)], n);
  return full;
}

}  // namespace detail

/// Transposes the qubits in `cut`: the cut bits of row and column indices are exchanged.
inline ComplexMatrix partial_transpose(const DensityMatrix& rho, const QubitSubset& cut) {
  detail::require_cut(rho, cut);
  const std::size_t dim = rho.dim();
  const std::size_t mask = cut.mask();
  ComplexMatrix out(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t i2 = (i & ~mask) | (j & mask);
      const std::size_t j2 = (j & ~mask) | (i & mask);
      out(i2, j2) = rho(i, j);
    }
  return out;
}

inline std::vector<double> pt_spectrum(const DensityMatrix& rho, const QubitSubset& cut) {
  return hermitian_eigen(partial_transpose(rho, cut), false).eigenvalues;
}

inline double min_pt_eigenvalue(const DensityMatrix& rho, const QubitSubset& cut) {
  return pt_spectrum(rho, cut).front();
}

/// One representative per bipartition: subsets that contain qubit 0, ordered
/// by size and then lexicographically. Yields 2^(n-1) - 1 cuts.
inline std::vector<QubitSubset> enumerate_cuts(int n) {
  require_qubit_count(n, 2);
  std::vector<std::vector<int>> sets;
  const std::size_t others = std::size_t{1} << (n - 1);
  for (std::size_t m = 0; m < others; ++m) {
    std::vector<int> members{0};
    for (int q = 1; q < n; ++q)
      if (m & (std::size_t{1} << (q - 1))) members.push_back(q);
    if (static_cast<int>(members.size()) < n) sets.push_back(std::move(members));
  }
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<QubitSubset> cuts;
  cuts.reserve(sets.size());
  for (auto& s : sets) cuts.emplace_back(n, std::move(s));
  return cuts;
}

inline CutReport cut_report(const DensityMatrix& rho, const QubitSubset& cut, double tol = kPptTolerance) {
  const double lo = min_pt_eigenvalue(rho, cut);
  return {cut, lo, lo >= -tol, tol};
}

/// Evaluates every canonical cut; entangled iff any cut is NPT beyond tol.
inline NptVerdict is_entangled_npt(const DensityMatrix& rho, double tol = kPptTolerance) {
  if (!(tol > 0.0)) throw Error(ErrorKind::OutOfRange, "tolerance must be positive");
  NptVerdict verdict{{}, false};
  for (const auto& cut : enumerate_cuts(rho.n_qubits())) {
    verdict.cuts.push_back(cut_report(rho, cut, tol));
    verdict.entangled = verdict.entangled || !verdict.cuts.back().is_ppt;
  }
  return verdict;
}

/// Reduced state on `keep`, tracing out the other qubits.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& keep) {
  if (keep.n_qubits() != rho.n_qubits()) throw Error(ErrorKind::BadSubset, "subset register size mismatch");
  if (keep.empty()) throw Error(ErrorKind::BadSubset, "must keep at least one qubit");
  const int n = rho.n_qubits();
  const auto& kept = keep.members();
  const auto traced = keep.complement().members();
  const std::size_t kdim = std::size_t{1} << kept.size();
  const std::size_t tdim = std::size_t{1} << traced.size();
  ComplexMatrix out(kdim);
  for (std::size_t a = 0; a < kdim; ++a)
    for (std::size_t b = 0; b < kdim; ++b) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < tdim; ++t)
        acc += rho(detail::merge_bits(a, kept, t, traced, n), detail::merge_bits(b, kept, t, traced, n));
      out(a, b) = acc;
    }
  return {static_cast<int>(kept.size()), std::move(out)};
}

/// -sum lambda log2 lambda; eigenvalues in [-1e-10, 0) count as zero.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  double h = 0.0;
  for (double lambda : hermitian_eigen(rho.matrix(), false).eigenvalues) {
    if (lambda < -1e-10) throw Error(ErrorKind::OutOfRange, "density matrix has a negative eigenvalue");
    if (lambda <= 0.0) continue;
    h -= lambda * std::log2(lambda);
  }
  return h;
}

inline double entanglement_entropy(const StateVector& psi, const QubitSubset& cut) {
  return von_neumann_entropy(partial_trace(density_of(psi), cut));
}

/// Number of reduced-state eigenvalues above tol across the cut.
inline int schmidt_rank(const StateVector& psi, const QubitSubset& cut, double tol = kPptTolerance) {
  if (!(tol > 0.0)) throw Error(ErrorKind::OutOfRange, "tolerance must be positive");
  const auto rho = density_of(psi);
  detail::require_cut(rho, cut);
  const auto values = hermitian_eigen(partial_trace(rho, cut).matrix(), false).eigenvalues;
  return static_cast<int>(std::count_if(values.begin(), values.end(), [tol](double v) { return v > tol; }));
}

}  // namespace entrob

#endif  // ENTROB_SEPARABILITY_HPP
