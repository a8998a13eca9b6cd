#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "spectra/core/matrix.hpp"

namespace spectra {

/// All ascending k-subsets of {0,..,d-1} in lexicographic order.
inline std::vector<std::vector<int>> index_subsets(int d, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  if (k == 0) return {std::vector<int>{}};
  if (k > d) return out;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == d - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// An l-dimensional subspace of T^d with an exact basis and its Plucker
/// vector, normalized so the pivot coordinate equals 1.
template <class T>
struct SubspaceModel {
  std::vector<std::vector<T>> basis;     // l vectors of length d
  std::map<std::vector<int>, T> plucker; // keyed by ascending index sets
  std::vector<int> pivot;                // I0, the normalized coordinate

  int dim() const { return static_cast<int>(basis.size()); }
  int ambient() const { return basis.empty() ? 0 : static_cast<int>(basis[0].size()); }
};

/// Plucker coordinates (all l x l minors) of a basis, unnormalized.
template <class T>
std::map<std::vector<int>, T> plucker_of_basis(const std::vector<std::vector<T>>& basis) {
  int l = static_cast<int>(basis.size());
  int d = static_cast<int>(basis[0].size());
  Mat<T> m(l, d);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = basis[i][j];
  std::vector<int> all_rows(l);
  for (int i = 0; i < l; ++i) all_rows[i] = i;
  std::map<std::vector<int>, T> p;
  for (const auto& cols : index_subsets(d, l)) p[cols] = minor_det(m, all_rows, cols);
  return p;
}

/// Builds the model from a basis: pivot = index set with the largest minor
/// (by absolute double value, lexicographic tie-break), coordinates scaled
/// so the pivot minor is exactly 1.
template <class T, class AbsFn>
SubspaceModel<T> make_subspace(const std::vector<std::vector<T>>& basis, AbsFn abs_of) {
  SubspaceModel<T> s;
  s.basis = basis;
  s.plucker = plucker_of_basis(basis);
  double best = -1;
  for (const auto& [idx, val] : s.plucker) {
    double a = abs_of(val);
    if (a > best) {
      best = a;
      s.pivot = idx;
    }
  }
  if (best <= 0) throw Error("core", "DegenerateBasis", "subspace basis is linearly dependent");
  T piv = s.plucker.at(s.pivot);
  for (auto& [idx, val] : s.plucker) val = val / piv;
  return s;
}

/// Value of a Plucker vector on an index sequence (possibly unsorted or
/// with repeats): 0 on repeats, otherwise the sorted coordinate times the
/// sign of the sorting permutation.
template <class T>
T plucker_seq(const std::map<std::vector<int>, T>& p, std::vector<int> seq) {
  int sign = 1;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && seq[j - 1] > seq[j]) {
      std::swap(seq[j - 1], seq[j]);
      sign = -sign;
      --j;
    }
  }
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i] == seq[i - 1]) return T(0);
  auto it = p.find(seq);
  if (it == p.end()) return T(0);
  return sign > 0 ? it->second : -it->second;
}

/// Reconstructs a basis from a pure Plucker vector with pivot coordinate 1:
/// row r has entries v_{I0[r -> j]}. The caller is responsible for purity;
/// the minors of the result reproduce the input exactly iff it was pure.
template <class T>
std::vector<std::vector<T>> basis_from_pure_plucker(const std::map<std::vector<int>, T>& p,
                                                    const std::vector<int>& pivot, int d) {
  int l = static_cast<int>(pivot.size());
  std::vector<std::vector<T>> basis(l, std::vector<T>(d, T(0)));
  for (int r = 0; r < l; ++r)
    for (int j = 0; j < d; ++j) {
      std::vector<int> seq = pivot;
      seq[r] = j;
      basis[r][j] = plucker_seq(p, seq);
    }
  return basis;
}

}  // namespace spectra
