#pragma once

#include <map>
#include <utility>
#include <vector>

#include "spectra/rootsys/root_system.hpp"

namespace spectra::wedge {

/// Sparse Lie-algebra element: list of (basis index, coefficient).
using SparseElem = std::vector<std::pair<int, Rat>>;

/// Chevalley basis of the complex simple Lie algebra of a root system.
/// Basis indices: 0..r-1 are the simple coroot elements h_i, then r + k is
/// E_alpha for the k-th root in the root system's canonical order.
///
/// Structure constants are integers with |N_{a,b}| = p+1; signs are fixed
/// by choosing +1 on extraspecial pairs (minimal first member per sum, in
/// the height-lex root order) and propagating through the standard
/// antisymmetry / negation / rotation identities and the Jacobi identity.
class ChevalleyAlgebra {
public:
  explicit ChevalleyAlgebra(rootsys::RootSystem rs);

  const rootsys::RootSystem& roots() const { return rs_; }
  int rank() const { return rs_.rank(); }
  int dim() const { return rs_.rank() + static_cast<int>(rs_.root_count()); }

  int e_index(int root_idx) const { return rs_.rank() + root_idx; }
  int h_index(int i) const { return i; }
  bool is_cartan(int basis_idx) const { return basis_idx < rs_.rank(); }
  int root_of(int basis_idx) const { return basis_idx - rs_.rank(); }

  /// N_{alpha,beta} for root indices; 0 when alpha+beta is not a root.
  long long structure_constant(int a_root, int b_root) const;

  /// Largest k with beta - k*alpha a root.
  int p_max(int a_root, int b_root) const;

  SparseElem bracket_basis(int i, int j) const;
  SparseElem bracket(const SparseElem& u, const SparseElem& v) const;

  /// <alpha_k, alpha_i^vee> for root k and simple index i.
  long long cartan_pairing(int root_idx, int i) const { return cartan_pairing_[root_idx][i]; }

  /// Coordinates of the coroot of root k in the simple-coroot basis.
  const std::vector<long long>& coroot_coords(int root_idx) const { return coroot_coords_[root_idx]; }

  int negated_root(int root_idx) const { return neg_[root_idx]; }
  int sum_root(int a_root, int b_root) const;  // index of alpha+beta, or -1

private:
  long long n_signed(int a, int b) const;           // memoized full reduction
  long long n_positive_special(int a, int b) const; // both positive, a before b

  rootsys::RootSystem rs_;
  std::vector<int> neg_;
  std::vector<std::vector<long long>> cartan_pairing_;
  std::vector<std::vector<long long>> coroot_coords_;
  std::vector<int> pos_order_;                      // position of each root among positives, -1 if negative
  std::map<int, std::pair<int, int>> extraspecial_; // sum root -> (xi, eta)
  mutable std::map<std::pair<int, int>, long long> memo_;
};

/// Builds the Chevalley basis; throws RankTooLarge past the cap (wedge-power
/// work on higher ranks explodes combinatorially).
ChevalleyAlgebra chevalley_basis(const rootsys::RootSystem& rs, int rank_cap = 4);

}  // namespace spectra::wedge
