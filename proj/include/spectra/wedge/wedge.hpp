#pragma once

#include <map>
#include <optional>
#include <vector>

#include "spectra/core/quadext.hpp"
#include "spectra/core/subspace.hpp"
#include "spectra/faces/faces.hpp"
#include "spectra/wedge/chevalley.hpp"

namespace spectra::wedge {

/// Element of an exterior power of the algebra, stored sparsely on sorted
/// basis-index tuples (keys canonical, zero entries erased).
struct WedgeVector {
  int degree = 0;
  std::map<std::vector<int>, Rat> coords;

  bool is_zero() const { return coords.empty(); }
  void add_term(std::vector<int> key, const Rat& c);
  WedgeVector& axpy(const Rat& c, const WedgeVector& other);  // this += c * other
  void scale(const Rat& c);

  /// Leading monomial (lexicographically smallest key).
  const std::vector<int>& leading() const { return coords.begin()->first; }
};

/// Derivation action of the basis element x on a wedge vector.
WedgeVector act(const ChevalleyAlgebra& alg, int basis_idx, const WedgeVector& v);

/// xi_X = wedge of E_alpha over the extremal roots of the face; a single
/// monomial of degree m_X whose torus weight is omega_X.
WedgeVector xi_vector(const ChevalleyAlgebra& alg, const faces::FaceData& face);

/// Torus weight of a weight vector, as fundamental-weight coordinates.
/// Throws if the monomials carry different weights.
std::vector<long long> torus_weight(const ChevalleyAlgebra& alg, const WedgeVector& v);

/// Verifies that every simple raising operator annihilates xi and returns
/// its weight. Throws NotHighestWeight naming the offending simple root.
rootsys::Weight check_highest_weight(const ChevalleyAlgebra& alg, const WedgeVector& xi);

struct SubRepresentation {
  int degree = 0;
  std::vector<WedgeVector> basis;  // reduced echelon, canonical order
  rootsys::Weight highest_weight;

  int dim() const { return static_cast<int>(basis.size()); }
};

/// Closure of a highest-weight vector under the simple lowering operators,
/// echelonized canonically. Throws DimensionMismatch if the closure
/// dimension disagrees with the Weyl dimension formula.
SubRepresentation generate_subrep(const ChevalleyAlgebra& alg, const WedgeVector& xi);

/// Joint commutant route to a common invariant subspace: returns a proper
/// nonzero subspace invariant under all the matrices, as ker(x - lambda I)
/// (or ker f(x) for a proper factor f of the minimal polynomial) of a
/// non-scalar commutant element x; nullopt iff the commutant is scalar.
std::optional<SubspaceModel<QuadExt>> commutant_invariant_subspace(
    const std::vector<Mat<QuadExt>>& matrices);

std::optional<SubspaceModel<QuadExt>> commutant_invariant_subspace(
    const std::vector<Mat<Rat>>& matrices);

}  // namespace spectra::wedge
