#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "spectra/rootsys/root_system.hpp"

using namespace spectra;
using namespace spectra::rootsys;

namespace {

// Independent oracle: close the simple roots under all reflections they
// generate. The builder enumerates roots from per-family coordinate
// formulas instead, so agreement is a real check.
std::set<VecR> reflection_closure(const RootSystem& rs) {
  std::set<VecR> roots(rs.simple_roots.begin(), rs.simple_roots.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<VecR> cur(roots.begin(), roots.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (roots.insert(rs.reflect(b, a)).second) grew = true;
  }
  return roots;
}

RootSystem build(Family f, int r) { return build_root_system({f, r}); }

}  // namespace

TEST_SUITE("rootsys") {

TEST_CASE("root sets match the reflection-closure oracle") {
  for (auto spec : std::vector<RootSystemSpec>{{Family::A, 1},
                                               {Family::A, 3},
                                               {Family::B, 2},
                                               {Family::B, 3},
                                               {Family::C, 3},
                                               {Family::D, 4},
                                               {Family::F, 4},
                                               {Family::G, 2}}) {
    RootSystem rs = build_root_system(spec);
    std::set<VecR> oracle = reflection_closure(rs);
    std::set<VecR> built(rs.all_roots.begin(), rs.all_roots.end());
    CHECK_MESSAGE(oracle == built, spec.name());
  }
}

TEST_CASE("classical root counts") {
  CHECK(build(Family::A, 1).root_count() == 2);
  CHECK(build(Family::A, 4).root_count() == 20);  // l(l+1)
  CHECK(build(Family::G, 2).root_count() == 12);
  CHECK(build(Family::F, 4).root_count() == 48);
  CHECK(build(Family::E, 6).root_count() == 72);
  CHECK(build(Family::E, 7).root_count() == 126);
  CHECK(build(Family::E, 8).root_count() == 240);

  // G2: 6 long and 6 short
  RootSystem g2 = build(Family::G, 2);
  int longs = 0, shorts = 0;
  Rat maxn = 0;
  for (const auto& r : g2.all_roots) maxn = std::max(maxn, RootSystem::inner(r, r));
  for (const auto& r : g2.all_roots)
    (RootSystem::inner(r, r) == maxn ? longs : shorts) += 1;
  CHECK(longs == 6);
  CHECK(shorts == 6);
}

TEST_CASE("A1 has two roots and one fundamental weight") {
  RootSystem rs = build(Family::A, 1);
  CHECK(rs.root_count() == 2);
  CHECK(rs.fundamental_weights.size() == 1);
  CHECK(rs.all_roots[0] == vscale(Rat(-1), rs.all_roots[1]));
}

TEST_CASE("Cartan integers and fundamental weight duality") {
  for (auto spec : irreducible_types_up_to_rank(4)) {
    RootSystem rs = build_root_system(spec);
    for (const auto& a : rs.all_roots)
      for (const auto& b : rs.simple_roots) CHECK(is_integer(rs.pairing(a, b)));
    for (std::size_t i = 0; i < rs.fundamental_weights.size(); ++i)
      for (std::size_t j = 0; j < rs.simple_roots.size(); ++j)
        CHECK(rs.pairing(rs.fundamental_weights[i], rs.simple_roots[j]) == (i == j ? 1 : 0));
  }
}

TEST_CASE("rho is both the weight sum and the positive-root half sum") {
  for (auto spec : irreducible_types_up_to_rank(4)) {
    RootSystem rs = build_root_system(spec);
    VecR half(rs.ambient_dim, Rat(0));
    for (int idx : rs.positive_root_indices) half = vadd(half, rs.all_roots[idx]);
    half = vscale(Rat(1, 2), half);
    CHECK_MESSAGE(half == rs.rho, spec.name());
  }
}

TEST_CASE("highest root maximality") {
  for (auto spec : irreducible_types_up_to_rank(4)) {
    RootSystem rs = build_root_system(spec);
    Rat n2 = RootSystem::inner(rs.highest_root, rs.highest_root);
    int idx_at = rs.root_index(rs.highest_root);
    CHECK(idx_at >= 0);
    for (std::size_t k = 0; k < rs.root_count(); ++k) {
      CHECK(RootSystem::inner(rs.all_roots[k], rs.all_roots[k]) <= n2);
      // highest root dominates every root in the simple-coordinate order
      const auto& hc = rs.roots_simple_coords[idx_at];
      const auto& rc = rs.roots_simple_coords[k];
      for (std::size_t i = 0; i < hc.size(); ++i) CHECK(hc[i] >= rc[i]);
    }
  }
}

TEST_CASE("highest root classification") {
  // A3: omega1 + omega3 with distinct pair
  auto c = classify_highest_root(build(Family::A, 3));
  CHECK(c.kind == HighestRootClass::Kind::SumDual);
  CHECK(c.distinct_pair());

  // A1: 2*omega with omega = omega*
  c = classify_highest_root(build(Family::A, 1));
  CHECK(c.kind == HighestRootClass::Kind::SumDual);
  CHECK_FALSE(c.distinct_pair());
  CHECK(c.omega.ambient == c.omega_star->ambient);

  // C3: 2*omega1, self-dual
  c = classify_highest_root(build(Family::C, 3));
  CHECK(c.kind == HighestRootClass::Kind::SumDual);
  CHECK_FALSE(c.distinct_pair());

  // G2: adjoint fundamental weight
  c = classify_highest_root(build(Family::G, 2));
  CHECK(c.kind == HighestRootClass::Kind::Fundamental);

  for (auto f : {Family::B, Family::D}) {
    auto cc = classify_highest_root(build(f, 4));
    CHECK(cc.kind == HighestRootClass::Kind::Fundamental);
  }
}

TEST_CASE("SumDual with distinct pair happens exactly for A_l, l >= 2 (rank <= 8)") {
  for (auto spec : irreducible_types_up_to_rank(8)) {
    auto c = classify_highest_root(build_root_system(spec));
    bool expect = spec.family == Family::A && spec.rank >= 2;
    CHECK_MESSAGE(c.distinct_pair() == expect, spec.name());
  }
}

TEST_CASE("Weyl group orders") {
  CHECK(enumerate_weyl(build(Family::A, 2)).size() == 6);
  CHECK(enumerate_weyl(build(Family::A, 3)).size() == 24);
  CHECK(enumerate_weyl(build(Family::B, 2)).size() == 8);
  CHECK(enumerate_weyl(build(Family::B, 3)).size() == 48);
  CHECK(enumerate_weyl(build(Family::D, 4)).size() == 192);
  CHECK(enumerate_weyl(build(Family::G, 2)).size() == 12);
  CHECK(enumerate_weyl(build(Family::F, 4)).size() == 1152);
}

TEST_CASE("Weyl elements permute roots and preserve the inner product") {
  RootSystem rs = build(Family::B, 2);
  auto w = enumerate_weyl(rs);
  for (const auto& el : w) {
    Mat<Rat> m = el.matrix(rs);
    CHECK(m.transpose() * m == Mat<Rat>::identity(rs.ambient_dim));
    for (const auto& r : rs.all_roots) CHECK(rs.is_root(m.apply(r)));
  }
}

TEST_CASE("GroupTooLarge for a small cap") {
  CHECK_THROWS_AS(enumerate_weyl(build(Family::F, 4), 100), Error);
}

TEST_CASE("stabilizers") {
  // A1: reflection negates the root, so only the identity fixes it
  RootSystem a1 = build(Family::A, 1);
  auto s = weyl_stabilizer(a1, a1.highest_root);
  REQUIRE(s.size() == 1);
  CHECK(s[0].is_identity());

  // A2: the Weyl group permutes the six roots simply transitively, so the
  // pointwise stabilizer of the highest root is trivial. A3 is the smallest
  // type A with a stabilizer of order 2.
  RootSystem a2 = build(Family::A, 2);
  auto sa2 = weyl_stabilizer(a2, a2.highest_root);
  REQUIRE(sa2.size() == 1);
  CHECK(sa2[0].is_identity());
  RootSystem a3 = build(Family::A, 3);
  CHECK(weyl_stabilizer(a3, a3.highest_root).size() == 2);

  // B2: everything fixes 0
  RootSystem b2 = build(Family::B, 2);
  CHECK(weyl_stabilizer(b2, VecR(2, Rat(0))).size() == 8);
}

TEST_CASE("stabilizer is a subgroup") {
  RootSystem rs = build(Family::B, 3);
  auto stab = weyl_stabilizer(rs, rs.highest_root);
  std::set<std::vector<std::uint16_t>> members;
  for (const auto& w : stab) members.insert(w.perm);
  for (const auto& a : stab) {
    // inverse
    std::vector<std::uint16_t> inv(a.perm.size());
    for (std::size_t i = 0; i < a.perm.size(); ++i) inv[a.perm[i]] = static_cast<std::uint16_t>(i);
    CHECK(members.count(inv) == 1);
    for (const auto& b : stab) {
      std::vector<std::uint16_t> ab(a.perm.size());
      for (std::size_t i = 0; i < a.perm.size(); ++i) ab[i] = a.perm[b.perm[i]];
      CHECK(members.count(ab) == 1);
    }
  }
}

TEST_CASE("Weyl dimension formula") {
  RootSystem a1 = build(Family::A, 1);
  for (int m = 0; m <= 6; ++m) {
    VecR lam = vscale(Rat(m), a1.fundamental_weights[0]);
    CHECK(weyl_dimension(a1, lam) == BigInt(m + 1));
  }

  RootSystem a2 = build(Family::A, 2);
  CHECK(weyl_dimension(a2, a2.fundamental_weights[0]) == 3);
  CHECK(weyl_dimension(a2, VecR(a2.ambient_dim, Rat(0))) == 1);

  RootSystem g2 = build(Family::G, 2);
  CHECK(weyl_dimension(g2, g2.highest_root) == 14);  // adjoint weight gives dim g

  for (auto spec : irreducible_types_up_to_rank(4)) {
    RootSystem rs = build_root_system(spec);
    CHECK(weyl_dimension(rs, VecR(rs.ambient_dim, Rat(0))) == 1);
    // adjoint representation has dimension = #roots + rank
    CHECK(weyl_dimension(rs, rs.highest_root) == BigInt(rs.root_count() + rs.rank()));
  }
}

TEST_CASE("NotDominant is rejected") {
  RootSystem a2 = build(Family::A, 2);
  VecR bad = vsub(VecR(a2.ambient_dim, Rat(0)), a2.fundamental_weights[0]);
  CHECK_THROWS_AS(weyl_dimension(a2, bad), Error);
  VecR frac = vscale(Rat(1, 2), a2.fundamental_weights[0]);
  CHECK_THROWS_AS(weyl_dimension(a2, frac), Error);
}

TEST_CASE("dimension lower bound constant") {
  for (auto spec : irreducible_types_up_to_rank(3)) {
    RootSystem rs = build_root_system(spec);
    double c = dim_lower_bound_constant(rs);
    CHECK(c > 0);
    // sweep dominant integral weights with fw coordinates <= 3
    int r = rs.rank();
    std::vector<int> coef(r, 0);
    for (int iter = 0; iter < (r == 1 ? 4 : 16); ++iter) {
      int x = iter;
      for (int i = 0; i < r; ++i) {
        coef[i] = x % 4;
        x /= 4;
      }
      VecR fw(r);
      for (int i = 0; i < r; ++i) fw[i] = coef[i];
      VecR lam = rs.weight_from_fw(fw);
      double nl = std::sqrt(to_double(RootSystem::inner(lam, lam)));
      double dim = weyl_dimension(rs, lam).convert_to<double>();
      CHECK(dim >= c * nl - 1e-9);
    }
  }
}

TEST_CASE("inadmissible specs are rejected") {
  CHECK_THROWS_AS(build(Family::E, 9), Error);
  CHECK_THROWS_AS(build(Family::E, 5), Error);
  CHECK_THROWS_AS(build(Family::F, 5), Error);
  CHECK_THROWS_AS(build(Family::G, 3), Error);
  CHECK_THROWS_AS(build(Family::D, 2), Error);
  CHECK_THROWS_AS(build(Family::A, 0), Error);
  CHECK_THROWS_AS(family_from_char('X'), Error);
}

}  // TEST_SUITE
