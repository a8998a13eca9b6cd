#pragma once

#include <vector>

#include "spectra/rootsys/root_system.hpp"

namespace spectra::faces {

/// One face of the closed Weyl chamber, keyed by the support S of the
/// fundamental-weight coordinates; canonical representative X_S =
/// sum_{i in S} omega_i.
struct ChamberFace {
  std::vector<int> support;  // ascending simple-root indices, nonempty
  VecR canonical_X;
};

/// Extremal data of a chamber vector X: the roots maximizing <alpha, X>,
/// their count m, and their sum omega_X (a dominant integral weight).
struct FaceData {
  std::vector<int> extremal_root_indices;  // ascending
  int m = 0;
  VecR omega_X;
  VecR omega_X_fw;
};

FaceData face_of(const rootsys::RootSystem& rs, const VecR& X);

std::vector<ChamberFace> enumerate_faces(const rootsys::RootSystem& rs);

struct Verdict {
  bool hypothesis_met = false;
  bool holds = false;
  std::vector<int> intersection;  // root indices of the W_at-orbit intersection
};

/// Checks that the intersection of w . E_X over the stabilizer of the
/// highest root reduces to {highest root}. The hypothesis fails exactly
/// when the highest root is omega + omega* with omega != omega* and X is
/// collinear to omega or omega*; the intersection is still reported then.
Verdict verify_face_lemma(const rootsys::RootSystem& rs, const ChamberFace& face,
                          std::size_t weyl_cap = 1000000);

/// Same, with a precomputed stabilizer of the highest root (saves the Weyl
/// enumeration when sweeping all faces of one type).
Verdict verify_face_lemma(const rootsys::RootSystem& rs, const ChamberFace& face,
                          const std::vector<rootsys::WeylElement>& highest_root_stabilizer);

/// Exact collinearity of two vectors via cross ratios.
bool collinear(const VecR& a, const VecR& b);

}  // namespace spectra::faces
