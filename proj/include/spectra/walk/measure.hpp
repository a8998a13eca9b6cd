#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectra/core/quaternion.hpp"
#include "spectra/core/rational.hpp"

namespace spectra::walk {

enum class GroupKind { SU2, SO3 };

/// One atom of a finitely supported measure. The double quaternion is
/// always present; exact entries and exact weight are carried when the
/// source data is algebraic (required by the exact-membership paths).
struct Atom {
  Quatd q;
  double w = 0;
  std::optional<QuatQ> exact;
  std::optional<Rat> weight_exact;
};

/// Finitely supported probability measure on SU(2) or SO(3).
struct MeasureSpec {
  std::vector<Atom> atoms;
  bool symmetric = false;
  GroupKind group = GroupKind::SO3;

  bool all_exact() const {
    for (const auto& a : atoms)
      if (!a.exact || !a.weight_exact) return false;
    return true;
  }

  /// Checks weight positivity/normalization, unit norms, and (if declared)
  /// symmetry closure. Throws NotProbability / NotUnit / NotSymmetric.
  void validate() const;
};

/// Point mass at the identity.
MeasureSpec delta_e(GroupKind group = GroupKind::SO3);

/// Measure from float atoms with equal or given weights (no exact data).
MeasureSpec measure_from_atoms(std::vector<Quatd> qs, std::vector<double> ws,
                               bool symmetric, GroupKind group);

/// Exact atom helper: validates unit norm exactly.
Atom exact_atom(const QuatQ& q, const Rat& w);

/// Symmetrized pair {g, g^{-1}} with weight w each (exact).
void push_symmetric_pair(MeasureSpec& mu, const QuatQ& g, const Rat& w);

/// Quaternion with rational entries from two Pythagorean-style pairs:
/// (a, b, c, d) all exact rationals; throws unless a^2+b^2+c^2+d^2 = 1.
QuatQ rational_quat(const Rat& a, const Rat& b, const Rat& c, const Rat& d);

/// Classical dense free pair: rotations by arccos(3/5) about the z and x
/// axes, quaternions (2/sqrt5, 0, 0, 1/sqrt5) and (2/sqrt5, 1/sqrt5, 0, 0),
/// entries in Q(sqrt 5). Generates a free dense subgroup of SO(3).
MeasureSpec free_rational_pair_measure();

/// Measure supported on a torus: two rotations about the z axis and their
/// inverses (exact rational quaternions), weights 1/4 each.
MeasureSpec torus_supported_measure();

/// Exact convolution power by word enumeration with deduplication:
/// list of (exact element, exact probability). Grows like (#atoms)^n before
/// dedup; intended for small n oracles.
std::vector<std::pair<QuatQ, Rat>> enumerate_convolution(const MeasureSpec& mu, int n);

}  // namespace spectra::walk
