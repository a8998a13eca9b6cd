#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectra/core/matrix.hpp"
#include "spectra/core/quadext.hpp"
#include "spectra/core/subspace.hpp"

namespace spectra::cert {

using MatQ = Mat<QuadExt>;

struct WordBallEntry {
  MatQ m;
  std::vector<int> word;  // generator indices, empty for the identity
};

struct WordBall {
  std::vector<MatQ> generators;  // symmetric set as supplied
  int radius = 0;
  std::vector<WordBallEntry> elements;  // deduplicated, breadth-first order
};

/// All distinct products of length <= n of a finite symmetric generating
/// set with exact entries. Throws HeightOverflow past the per-entry bit
/// budget.
WordBall word_ball(const std::vector<MatQ>& generators, int n, std::size_t height_bits = 4096);

/// One quadratic Grassmann exchange relation: sum of coeff * v_I * v_J.
struct PluckerRelation {
  struct Term {
    std::vector<int> I, J;  // ascending index sets, |I| = |J| = l
    long long coeff;
  };
  std::vector<Term> terms;
};

struct PluckerSystem {
  int d = 0, l = 0;
  std::vector<PluckerRelation> relations;
};

/// Generating set of quadratic relations cutting out the pure tensors in
/// wedge^l of a d-dimensional space (empty for l <= 1 or l >= d-1).
PluckerSystem plucker_relations(int d, int l);

template <class T>
T evaluate_relation(const PluckerRelation& rel, const std::map<std::vector<int>, T>& coords) {
  T acc(0);
  for (const auto& t : rel.terms) {
    auto i = coords.find(t.I);
    auto j = coords.find(t.J);
    if (i == coords.end() || j == coords.end()) continue;
    acc += T(t.coeff) * i->second * j->second;
  }
  return acc;
}

/// The l-th wedge power of g on the subset basis (entries are l x l minors).
MatQ wedge_power(const MatQ& g, int l);

/// Affine system P_{I0,g}(v) = (wedge^l g) (e_I0 + sum v_I e_I) - sign * (...):
/// P(v) = A v + b on the coordinates (v_I), I != I0.
struct AffineSystem {
  Mat<QuadExt> a;
  std::vector<QuadExt> b;
  std::vector<std::vector<int>> vars;  // column index -> subset I
  std::vector<int> pivot;
};

AffineSystem stabilizer_system(const MatQ& g, const std::vector<int>& pivot, int l,
                               int sign = +1);

struct HeightLedger {
  BigInt q;
  int words_checked = 0;
  bool coefficients_integral = false;  // q^n P has ring-of-integer coefficients
  double max_size_ratio = 0;           // max |q^n coeff| / q^{2n} over words/embeddings
};

/// q(S) = lcm of entry denominators times the ceiling of the largest entry
/// magnitude over both embeddings; verified against all words of length <=
/// n: q^n P_{I0,g} integral and of size at most q^{2n}.
HeightLedger height_ledger(const std::vector<MatQ>& generators, int n, int l,
                           std::size_t height_bits = 4096);

struct CertResult {
  SubspaceModel<QuadExt> l1;
  int sign = +1;                     // -1 when any near-set element flips u
  std::vector<int> element_signs;    // per near-set element: g.v = s*v solved
  std::vector<std::size_t> near_set; // ball indices within the threshold
  bool degenerate = false;           // near set is just the identity
};

/// Certification: selects the sub-ball at wedge-action distance <=
/// threshold from L0 (distance to +u' or -u', with the sign recorded per
/// element), solves the joint affine systems exactly, intersects with the
/// Plucker relations, and returns a subspace invariant under every
/// near-set element. nullopt when the joint system provably has no common
/// zero in the supported fields; SolverIncomplete when the nonlinear
/// residue cannot be decided exactly at desk scale.
std::optional<CertResult> certify_common_invariant_subspace(const WordBall& ball,
                                                            const SubspaceModel<QuadExt>& l0,
                                                            double threshold);

/// Exact rational rotation matrix in the (i, j) coordinate plane of
/// dimension d, from a Pythagorean pair cos = c, sin = s (c^2 + s^2 = 1).
MatQ plane_rotation(int d, int i, int j, const Rat& c, const Rat& s);

SubspaceModel<QuadExt> subspace_from_rational_basis(const std::vector<std::vector<Rat>>& basis);

}  // namespace spectra::cert
