#include "spectra/walk/subgroup.hpp"

#include <algorithm>
#include <cmath>

namespace spectra::walk {

namespace {

const char* kModule = "walkdio";

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

/// d(g, T_u) = 2 acos sqrt(w^2 + (v.u)^2): the nearest torus element
/// maximizes |<g, q_u(t)>| = |w cos(t/2) + (v.u) sin(t/2)| over t.
double torus_distance(const Quatd& g, const std::array<double, 3>& u) {
  double vu = g.x * u[0] + g.y * u[1] + g.z * u[2];
  return 2.0 * std::acos(clamp01(std::sqrt(g.w * g.w + vu * vu)));
}

/// Distance to the non-identity normalizer component {(0, m): m perp u}.
double flip_component_distance(const Quatd& g, const std::array<double, 3>& u) {
  double vu = g.x * u[0] + g.y * u[1] + g.z * u[2];
  double v2 = g.x * g.x + g.y * g.y + g.z * g.z;
  return 2.0 * std::acos(clamp01(std::sqrt(std::max(0.0, v2 - vu * vu))));
}

QuadExt qe(long long num, long long den = 1) { return QuadExt(Rat(num, den)); }

}  // namespace

double SubgroupModel::distance(const Quatd& g) const {
  switch (kind) {
    case SubgroupKind::Torus:
      return torus_distance(g, axis);
    case SubgroupKind::Normalizer:
      return std::min(torus_distance(g, axis), flip_component_distance(g, axis));
    case SubgroupKind::Finite: {
      double best = 4.0;
      for (const auto& h : elements) best = std::min(best, dist_so3(g, h));
      return best;
    }
  }
  return 4.0;
}

bool SubgroupModel::contains_exact(const QuatQ& g, GroupKind group) const {
  switch (kind) {
    case SubgroupKind::Torus: {
      if (!exact_axis) throw Error(kModule, "UndecidableMembership", "torus lacks an exact axis");
      const auto& u = *exact_axis;
      // vector part parallel to the axis (cross product vanishes)
      QuadExt cx = g.y * u[2] - g.z * u[1];
      QuadExt cy = g.z * u[0] - g.x * u[2];
      QuadExt cz = g.x * u[1] - g.y * u[0];
      return cx.is_zero() && cy.is_zero() && cz.is_zero();
    }
    case SubgroupKind::Normalizer: {
      if (!exact_axis) throw Error(kModule, "UndecidableMembership", "normalizer lacks an exact axis");
      const auto& u = *exact_axis;
      QuadExt cx = g.y * u[2] - g.z * u[1];
      QuadExt cy = g.z * u[0] - g.x * u[2];
      QuadExt cz = g.x * u[1] - g.y * u[0];
      if (cx.is_zero() && cy.is_zero() && cz.is_zero()) return true;
      QuadExt vu = g.x * u[0] + g.y * u[1] + g.z * u[2];
      return g.w.is_zero() && vu.is_zero();
    }
    case SubgroupKind::Finite: {
      if (exact_elements.empty())
        throw Error(kModule, "UndecidableMembership", "finite subgroup lacks exact elements");
      for (const auto& h : exact_elements) {
        if (g == h) return true;
        if (group == GroupKind::SO3) {
          QuatQ neg(QuadExt(Rat(0)) - h.w, QuadExt(Rat(0)) - h.x, QuadExt(Rat(0)) - h.y,
                    QuadExt(Rat(0)) - h.z);
          if (g == neg) return true;
        }
      }
      return false;
    }
  }
  return false;
}

SubgroupModel torus_about(const std::array<double, 3>& axis, std::string name) {
  SubgroupModel m;
  m.kind = SubgroupKind::Torus;
  m.name = std::move(name);
  double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  m.axis = {axis[0] / n, axis[1] / n, axis[2] / n};
  return m;
}

SubgroupModel normalizer_about(const std::array<double, 3>& axis, std::string name) {
  SubgroupModel m = torus_about(axis, std::move(name));
  m.kind = SubgroupKind::Normalizer;
  return m;
}

SubgroupModel torus_about_exact(const std::array<QuadExt, 3>& axis, std::string name) {
  SubgroupModel m =
      torus_about({axis[0].to_double(), axis[1].to_double(), axis[2].to_double()}, std::move(name));
  m.exact_axis = axis;
  return m;
}

SubgroupModel tetrahedral_group() {
  SubgroupModel m;
  m.kind = SubgroupKind::Finite;
  m.name = "tetrahedral";
  // 24 Hurwitz units: double cover of the 12 rotations
  auto push = [&](const QuatQ& q) {
    m.exact_elements.push_back(q);
    m.elements.push_back(to_quatd(q));
  };
  for (int i = 0; i < 4; ++i)
    for (int s : {1, -1}) {
      QuadExt c[4] = {qe(0), qe(0), qe(0), qe(0)};
      c[i] = qe(s);
      push(QuatQ{c[0], c[1], c[2], c[3]});
    }
  for (int mask = 0; mask < 16; ++mask) {
    QuadExt c[4];
    for (int i = 0; i < 4; ++i) c[i] = (mask >> i & 1) ? qe(-1, 2) : qe(1, 2);
    push(QuatQ{c[0], c[1], c[2], c[3]});
  }
  return m;
}

SubgroupModel octahedral_group() {
  SubgroupModel m = tetrahedral_group();
  m.name = "octahedral";
  m.exact_elements.clear();  // sqrt(1/2) entries leave the single-field model
  // add the 24 elements (+-e_i +- e_j)/sqrt2
  double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          double c[4] = {0, 0, 0, 0};
          c[i] = si * r;
          c[j] = sj * r;
          m.elements.push_back(Quatd(c[0], c[1], c[2], c[3]));
        }
  return m;
}

SubgroupModel icosahedral_group() {
  SubgroupModel m;
  m.kind = SubgroupKind::Finite;
  m.name = "icosahedral";
  double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  // 120 binary icosahedral units: 8 axis units, 16 half-units, and the 96
  // even permutations of (0, +-1, +-1/phi, +-phi)/2.
  for (int i = 0; i < 4; ++i)
    for (int s : {1, -1}) {
      double c[4] = {0, 0, 0, 0};
      c[i] = s;
      m.elements.push_back(Quatd(c[0], c[1], c[2], c[3]));
    }
  for (int mask = 0; mask < 16; ++mask) {
    double c[4];
    for (int i = 0; i < 4; ++i) c[i] = (mask >> i & 1) ? -0.5 : 0.5;
    m.elements.push_back(Quatd(c[0], c[1], c[2], c[3]));
  }
  static const int even_perms[12][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
                                        {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 3, 2, 0},
                                        {2, 0, 1, 3}, {2, 1, 3, 0}, {2, 3, 0, 1},
                                        {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 2, 1, 0}};
  for (const auto& p : even_perms)
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        for (int s3 : {1, -1}) {
          double base[4] = {0, s1 * 1.0 / 2, s2 * (1.0 / phi) / 2, s3 * phi / 2};
          double c[4];
          for (int i = 0; i < 4; ++i) c[i] = base[p[i]];
          m.elements.push_back(Quatd(c[0], c[1], c[2], c[3]));
        }
  return m;
}

SubgroupModel trivial_group() {
  SubgroupModel m;
  m.kind = SubgroupKind::Finite;
  m.name = "trivial";
  m.elements.push_back(Quatd::one());
  m.exact_elements.push_back(QuatQ::one());
  return m;
}

}  // namespace spectra::walk
