#include "spectra/faces/faces.hpp"

#include <algorithm>
#include <set>

namespace spectra::faces {

namespace {
const char* kModule = "faces";
}

bool collinear(const VecR& a, const VecR& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

FaceData face_of(const rootsys::RootSystem& rs, const VecR& X) {
  if (is_zero(X)) throw Error(kModule, "ZeroVector", "face of the zero vector is undefined");
  for (const auto& a : rs.simple_roots)
    if (rootsys::RootSystem::inner(X, a) < 0)
      throw Error(kModule, "NotInChamber", "vector has a negative simple-root pairing");

  Rat best;
  bool first = true;
  for (std::size_t k = 0; k < rs.root_count(); ++k) {
    Rat v = rootsys::RootSystem::inner(rs.all_roots[k], X);
    if (first || v > best) {
      best = v;
      first = false;
    }
  }
  FaceData fd;
  fd.omega_X = VecR(rs.ambient_dim, Rat(0));
  for (std::size_t k = 0; k < rs.root_count(); ++k) {
    if (rootsys::RootSystem::inner(rs.all_roots[k], X) == best) {
      fd.extremal_root_indices.push_back(static_cast<int>(k));
      fd.omega_X = vadd(fd.omega_X, rs.all_roots[k]);
    }
  }
  fd.m = static_cast<int>(fd.extremal_root_indices.size());
  fd.omega_X_fw = rs.fw_coords(fd.omega_X);
  return fd;
}

std::vector<ChamberFace> enumerate_faces(const rootsys::RootSystem& rs) {
  int r = rs.rank();
  std::vector<ChamberFace> out;
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    ChamberFace f;
    f.canonical_X = VecR(rs.ambient_dim, Rat(0));
    for (int i = 0; i < r; ++i) {
      if (mask >> i & 1) {
        f.support.push_back(i);
        f.canonical_X = vadd(f.canonical_X, rs.fundamental_weights[i]);
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

Verdict verify_face_lemma(const rootsys::RootSystem& rs, const ChamberFace& face,
                          std::size_t weyl_cap) {
  return verify_face_lemma(rs, face, rootsys::weyl_stabilizer(rs, rs.highest_root, weyl_cap));
}

Verdict verify_face_lemma(const rootsys::RootSystem& rs, const ChamberFace& face,
                          const std::vector<rootsys::WeylElement>& stab) {
  Verdict v;

  auto cls = rootsys::classify_highest_root(rs);
  v.hypothesis_met = true;
  if (cls.distinct_pair()) {
    if (collinear(face.canonical_X, cls.omega.ambient) ||
        collinear(face.canonical_X, cls.omega_star->ambient))
      v.hypothesis_met = false;
  }

  FaceData fd = face_of(rs, face.canonical_X);

  std::set<int> inter(fd.extremal_root_indices.begin(), fd.extremal_root_indices.end());
  for (const auto& w : stab) {
    std::set<int> img;
    for (int idx : fd.extremal_root_indices) img.insert(w.perm[idx]);
    std::set<int> next;
    std::set_intersection(inter.begin(), inter.end(), img.begin(), img.end(),
                          std::inserter(next, next.begin()));
    inter.swap(next);
    if (inter.empty()) break;
  }
  v.intersection.assign(inter.begin(), inter.end());
  v.holds = (v.intersection.size() == 1 &&
             v.intersection[0] == rs.highest_root_index);
  return v;
}

}  // namespace spectra::faces
