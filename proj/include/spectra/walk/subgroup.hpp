#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spectra/walk/measure.hpp"

namespace spectra::walk {

enum class SubgroupKind { Torus, Normalizer, Finite };

/// Closed subgroup of SO(3) for neighborhood profiling: a torus of
/// rotations about an axis, its normalizer (adds the half-turns about
/// perpendicular axes), or a finite group given by its elements.
/// Distances are in the bi-invariant SO(3) geodesic (rotation-angle)
/// metric; membership is exact when exact data is present.
struct SubgroupModel {
  SubgroupKind kind = SubgroupKind::Torus;
  std::string name;
  std::array<double, 3> axis{0, 0, 1};                    // unit, torus/normalizer
  std::optional<std::array<QuadExt, 3>> exact_axis;       // unnormalized direction
  std::vector<Quatd> elements;                            // finite case
  std::vector<QuatQ> exact_elements;                      // optional exact elements

  double distance(const Quatd& g) const;

  /// Exact membership; throws UndecidableMembership when the needed exact
  /// data (axis or elements) is missing.
  bool contains_exact(const QuatQ& g, GroupKind group) const;
};

SubgroupModel torus_about(const std::array<double, 3>& axis, std::string name);
SubgroupModel normalizer_about(const std::array<double, 3>& axis, std::string name);
SubgroupModel torus_about_exact(const std::array<QuadExt, 3>& axis, std::string name);

/// Rotation groups of the platonic solids, as quaternion sets (both lifts
/// of every rotation). Tetrahedral elements are exact rationals.
SubgroupModel tetrahedral_group();
SubgroupModel octahedral_group();
SubgroupModel icosahedral_group();

/// Trivial subgroup {e} with exact data.
SubgroupModel trivial_group();

}  // namespace spectra::walk
