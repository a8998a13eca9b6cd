#include "spectra/walk/measure.hpp"

#include <cmath>
#include <map>

namespace spectra::walk {

namespace {
const char* kModule = "walkdio";

bool same_element(const MeasureSpec& mu, const Quatd& a, const Quatd& b) {
  double d = (mu.group == GroupKind::SO3) ? dist_so3(a, b) : dist_su2(a, b);
  return d < 1e-9;
}
}  // namespace

void MeasureSpec::validate() const {
  if (atoms.empty()) throw Error(kModule, "NotProbability", "measure has no atoms");
  bool exact = all_exact();
  if (exact) {
    Rat sum = 0;
    for (const auto& a : atoms) {
      if (*a.weight_exact <= 0) throw Error(kModule, "NotProbability", "non-positive weight");
      sum += *a.weight_exact;
      if (a.exact->norm2() != QuadExt(Rat(1)))
        throw Error(kModule, "NotUnit", "atom quaternion is not unit norm");
    }
    if (sum != 1) throw Error(kModule, "NotProbability", "weights sum to " + rat_to_string(sum));
  } else {
    double sum = 0;
    for (const auto& a : atoms) {
      if (a.w <= 0) throw Error(kModule, "NotProbability", "non-positive weight");
      sum += a.w;
      if (std::fabs(a.q.norm() - 1.0) > 1e-12)
        throw Error(kModule, "NotUnit", "atom quaternion is not unit norm");
    }
    if (std::fabs(sum - 1.0) > 1e-12)
      throw Error(kModule, "NotProbability", "weights sum to " + std::to_string(sum));
  }
  if (symmetric) {
    for (const auto& a : atoms) {
      Quatd inv = a.q.conj();
      bool found = false;
      for (const auto& b : atoms) {
        if (!same_element(*this, inv, b.q)) continue;
        bool wmatch = (a.weight_exact && b.weight_exact) ? (*a.weight_exact == *b.weight_exact)
                                                         : std::fabs(a.w - b.w) < 1e-12;
        if (wmatch) {
          found = true;
          break;
        }
      }
      if (!found)
        throw Error(kModule, "NotSymmetric", "declared symmetric but not closed under inverse");
    }
  }
}

MeasureSpec delta_e(GroupKind group) {
  MeasureSpec mu;
  mu.group = group;
  mu.symmetric = true;
  Atom a;
  a.q = Quatd::one();
  a.w = 1.0;
  a.exact = QuatQ::one();
  a.weight_exact = Rat(1);
  mu.atoms.push_back(a);
  return mu;
}

MeasureSpec measure_from_atoms(std::vector<Quatd> qs, std::vector<double> ws, bool symmetric,
                               GroupKind group) {
  MeasureSpec mu;
  mu.group = group;
  mu.symmetric = symmetric;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    Atom a;
    a.q = qs[i].normalized();
    a.w = ws[i];
    mu.atoms.push_back(a);
  }
  return mu;
}

Atom exact_atom(const QuatQ& q, const Rat& w) {
  if (q.norm2() != QuadExt(Rat(1)))
    throw Error(kModule, "NotUnit", "exact quaternion is not unit norm");
  Atom a;
  a.exact = q;
  a.q = to_quatd(q);
  a.weight_exact = w;
  a.w = to_double(w);
  return a;
}

void push_symmetric_pair(MeasureSpec& mu, const QuatQ& g, const Rat& w) {
  mu.atoms.push_back(exact_atom(g, w));
  mu.atoms.push_back(exact_atom(g.conj(), w));
}

QuatQ rational_quat(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  QuatQ q{QuadExt(a), QuadExt(b), QuadExt(c), QuadExt(d)};
  if (q.norm2() != QuadExt(Rat(1)))
    throw Error(kModule, "NotUnit", "rational quaternion is not unit norm");
  return q;
}

MeasureSpec free_rational_pair_measure() {
  // cos(theta/2) = 2/sqrt5, sin(theta/2) = 1/sqrt5 gives rotation angle
  // arccos(3/5) about each axis.
  QuadExt c(Rat(0), Rat(2, 5), 5);  // 2*sqrt5/5 = 2/sqrt5
  QuadExt s(Rat(0), Rat(1, 5), 5);
  QuatQ gz(c, QuadExt(Rat(0)), QuadExt(Rat(0)), s);
  QuatQ gx(c, s, QuadExt(Rat(0)), QuadExt(Rat(0)));
  MeasureSpec mu;
  mu.group = GroupKind::SO3;
  mu.symmetric = true;
  push_symmetric_pair(mu, gz, Rat(1, 4));
  push_symmetric_pair(mu, gx, Rat(1, 4));
  mu.validate();
  return mu;
}

MeasureSpec torus_supported_measure() {
  // two incommensurable rotations about the z axis
  QuatQ g1 = rational_quat(Rat(4, 5), Rat(0), Rat(0), Rat(3, 5));
  QuatQ h = rational_quat(Rat(5, 13), Rat(0), Rat(0), Rat(12, 13));
  MeasureSpec mu;
  mu.group = GroupKind::SO3;
  mu.symmetric = true;
  push_symmetric_pair(mu, g1, Rat(1, 4));
  push_symmetric_pair(mu, h, Rat(1, 4));
  mu.validate();
  return mu;
}

std::vector<std::pair<QuatQ, Rat>> enumerate_convolution(const MeasureSpec& mu, int n) {
  if (!mu.all_exact())
    throw Error(kModule, "UndecidableMembership", "exact enumeration needs exact atoms");
  std::map<QuatQ, Rat> cur;
  cur[QuatQ::one()] = 1;
  for (int step = 0; step < n; ++step) {
    std::map<QuatQ, Rat> next;
    for (const auto& [g, p] : cur)
      for (const auto& a : mu.atoms) next[g * *a.exact] += p * *a.weight_exact;
    cur.swap(next);
  }
  return {cur.begin(), cur.end()};
}

}  // namespace spectra::walk
