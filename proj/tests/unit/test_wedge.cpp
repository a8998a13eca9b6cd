#include <doctest.h>

#include <algorithm>

#include "spectra/wedge/wedge.hpp"

using namespace spectra;
using namespace spectra::wedge;
using rootsys::Family;
using rootsys::RootSystem;
using rootsys::build_root_system;

namespace {

ChevalleyAlgebra alg_of(Family f, int r) { return chevalley_basis(build_root_system({f, r})); }

// Bracket of basis elements as a dense coefficient vector, for the Jacobi
// oracle below.
std::vector<Rat> dense_bracket(const ChevalleyAlgebra& a, const SparseElem& u, const SparseElem& v) {
  std::vector<Rat> out(a.dim(), Rat(0));
  for (const auto& [k, c] : a.bracket(u, v)) out[k] = c;
  return out;
}

bool jacobi_holds(const ChevalleyAlgebra& a) {
  int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        SparseElem ei{{i, Rat(1)}}, ej{{j, Rat(1)}}, ek{{k, Rat(1)}};
        auto t1 = dense_bracket(a, a.bracket(ei, ej), ek);
        auto t2 = dense_bracket(a, a.bracket(ej, ek), ei);
        auto t3 = dense_bracket(a, a.bracket(ek, ei), ej);
        for (int t = 0; t < n; ++t)
          if (t1[t] + t2[t] + t3[t] != 0) return false;
      }
  return true;
}

}  // namespace

TEST_SUITE("wedge") {

TEST_CASE("sl2 relations in A1") {
  ChevalleyAlgebra a = alg_of(Family::A, 1);
  const RootSystem& rs = a.roots();
  int pos = rs.positive_root_indices[0];
  int neg = a.negated_root(pos);

  // [E, F] = H
  auto h = a.bracket_basis(a.e_index(pos), a.e_index(neg));
  REQUIRE(h.size() == 1);
  CHECK(h[0].first == a.h_index(0));
  CHECK(h[0].second == 1);

  // [H, E] = 2E, [H, F] = -2F
  auto he = a.bracket_basis(a.h_index(0), a.e_index(pos));
  REQUIRE(he.size() == 1);
  CHECK(he[0].second == 2);
  auto hf = a.bracket_basis(a.h_index(0), a.e_index(neg));
  CHECK(hf[0].second == -2);
}

TEST_CASE("A2 structure constants have |N| = 1") {
  ChevalleyAlgebra a = alg_of(Family::A, 2);
  const RootSystem& rs = a.roots();
  int i1 = rs.root_index(rs.simple_roots[0]);
  int i2 = rs.root_index(rs.simple_roots[1]);
  long long n = a.structure_constant(i1, i2);
  CHECK(std::abs(n) == 1);
  CHECK(a.structure_constant(i2, i1) == -n);
}

TEST_CASE("|N_{a,b}| = p + 1 throughout") {
  for (auto spec : std::vector<rootsys::RootSystemSpec>{
           {Family::A, 2}, {Family::B, 2}, {Family::G, 2}}) {
    ChevalleyAlgebra a = chevalley_basis(build_root_system(spec));
    std::size_t nr = a.roots().root_count();
    for (std::size_t x = 0; x < nr; ++x)
      for (std::size_t y = 0; y < nr; ++y) {
        if (a.sum_root(x, y) < 0) continue;
        long long n = a.structure_constant(x, y);
        CHECK(std::abs(n) == a.p_max(x, y) + 1);
      }
  }
}

TEST_CASE("Jacobi identity holds exactly on all basis triples") {
  CHECK(jacobi_holds(alg_of(Family::A, 2)));
  CHECK(jacobi_holds(alg_of(Family::B, 2)));
  CHECK(jacobi_holds(alg_of(Family::G, 2)));
}

TEST_CASE("negation rule N_{-a,-b} = -N_{a,b}") {
  ChevalleyAlgebra a = alg_of(Family::G, 2);
  std::size_t nr = a.roots().root_count();
  for (std::size_t x = 0; x < nr; ++x)
    for (std::size_t y = 0; y < nr; ++y) {
      if (a.sum_root(x, y) < 0) continue;
      CHECK(a.structure_constant(a.negated_root(x), a.negated_root(y)) ==
            -a.structure_constant(x, y));
    }
}

TEST_CASE("rank cap") {
  CHECK_THROWS_AS(chevalley_basis(build_root_system({Family::A, 5})), Error);
  CHECK_NOTHROW(chevalley_basis(build_root_system({Family::A, 5}), 8));
}

TEST_CASE("xi vector: degree, single monomial, weight") {
  for (auto spec : std::vector<rootsys::RootSystemSpec>{
           {Family::A, 2}, {Family::B, 2}, {Family::G, 2}}) {
    RootSystem rs = build_root_system(spec);
    ChevalleyAlgebra a = chevalley_basis(rs);
    for (const auto& face : faces::enumerate_faces(rs)) {
      auto fd = faces::face_of(rs, face.canonical_X);
      WedgeVector xi = xi_vector(a, fd);
      CHECK(xi.degree == fd.m);
      CHECK(xi.coords.size() == 1);
      auto w = torus_weight(a, xi);
      VecR fw(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) fw[i] = w[i];
      CHECK(rs.weight_from_fw(fw) == fd.omega_X);
    }
  }
}

TEST_CASE("regular face gives xi = E_highest of degree 1") {
  RootSystem rs = build_root_system({Family::B, 2});
  ChevalleyAlgebra a = chevalley_basis(rs);
  auto fd = faces::face_of(rs, rs.rho);
  WedgeVector xi = xi_vector(a, fd);
  CHECK(xi.degree == 1);
  CHECK(xi.coords.begin()->first == std::vector<int>{a.e_index(rs.highest_root_index)});
}

TEST_CASE("highest-weight check") {
  RootSystem a1 = build_root_system({Family::A, 1});
  ChevalleyAlgebra alg = chevalley_basis(a1);
  WedgeVector xi;
  xi.degree = 1;
  xi.coords[{alg.e_index(a1.highest_root_index)}] = 1;
  auto w = check_highest_weight(alg, xi);
  CHECK(w.fw == VecR{Rat(2)});  // adjoint weight of sl2

  // lowest vector fails
  WedgeVector low;
  low.degree = 1;
  low.coords[{alg.e_index(alg.negated_root(a1.highest_root_index))}] = 1;
  CHECK_THROWS_AS(check_highest_weight(alg, low), Error);
}

TEST_CASE("A2: xi of the omega1 face is highest weight 3*omega1") {
  RootSystem a2 = build_root_system({Family::A, 2});
  ChevalleyAlgebra alg = chevalley_basis(a2);
  auto fd = faces::face_of(a2, a2.fundamental_weights[0]);
  WedgeVector xi = xi_vector(alg, fd);
  auto w = check_highest_weight(alg, xi);
  CHECK(w.fw == VecR{Rat(3), Rat(0)});
}

TEST_CASE("derivation action respects the bracket on wedge powers") {
  // acting by [x,y] = acting by x then y minus y then x
  for (auto spec : std::vector<rootsys::RootSystemSpec>{{Family::A, 2}, {Family::B, 2}}) {
    ChevalleyAlgebra a = chevalley_basis(build_root_system(spec));
    int dim = a.dim();
    for (int l : {2, 3}) {
      WedgeVector v;
      v.degree = l;
      // a deterministic non-trivial test vector
      std::vector<int> k1, k2;
      for (int i = 0; i < l; ++i) k1.push_back(i);
      for (int i = 0; i < l; ++i) k2.push_back(dim - 1 - i);
      std::sort(k2.begin(), k2.end());
      v.coords[k1] = Rat(2, 3);
      v.coords[k2] = Rat(-5);
      for (int x : {0, a.rank(), dim - 1})
        for (int y : {a.rank() + 1, dim - 2}) {
          WedgeVector xy = act(a, y, v);
          xy = act(a, x, xy);
          WedgeVector yx = act(a, x, v);
          yx = act(a, y, yx);
          WedgeVector lhs;  // [x,y] acting via the bracket expansion
          lhs.degree = l;
          for (const auto& [k, c] : a.bracket_basis(x, y)) {
            WedgeVector term = act(a, k, v);
            lhs.axpy(c, term);
          }
          WedgeVector rhs = xy;
          rhs.axpy(Rat(-1), yx);
          CHECK(lhs.coords == rhs.coords);
        }
    }
  }
}

TEST_CASE("generated subrepresentations match the Weyl dimension") {
  // A1 adjoint
  {
    RootSystem a1 = build_root_system({Family::A, 1});
    ChevalleyAlgebra alg = chevalley_basis(a1);
    auto fd = faces::face_of(a1, a1.rho);
    auto rep = generate_subrep(alg, xi_vector(alg, fd));
    CHECK(rep.dim() == 3);
  }
  // A2 face of omega1: dim V_{3 omega1} = 10
  {
    RootSystem a2 = build_root_system({Family::A, 2});
    ChevalleyAlgebra alg = chevalley_basis(a2);
    auto fd = faces::face_of(a2, a2.fundamental_weights[0]);
    auto rep = generate_subrep(alg, xi_vector(alg, fd));
    CHECK(rep.dim() == 10);
    CHECK(rootsys::weyl_dimension(a2, rep.highest_weight.ambient) == 10);
  }
  // regular faces produce the adjoint module
  for (auto spec : std::vector<rootsys::RootSystemSpec>{
           {Family::A, 1}, {Family::A, 2}, {Family::B, 2}, {Family::A, 3}, {Family::G, 2}}) {
    RootSystem rs = build_root_system(spec);
    ChevalleyAlgebra alg = chevalley_basis(rs);
    auto rep = generate_subrep(alg, xi_vector(alg, faces::face_of(rs, rs.rho)));
    CHECK(rep.dim() == alg.dim());
  }
}

TEST_CASE("echelon bases are canonical under regeneration") {
  RootSystem a2 = build_root_system({Family::A, 2});
  ChevalleyAlgebra alg = chevalley_basis(a2);
  auto fd = faces::face_of(a2, a2.fundamental_weights[0]);
  auto r1 = generate_subrep(alg, xi_vector(alg, fd));
  auto r2 = generate_subrep(alg, xi_vector(alg, fd));
  REQUIRE(r1.dim() == r2.dim());
  for (int i = 0; i < r1.dim(); ++i) CHECK(r1.basis[i].coords == r2.basis[i].coords);
}

TEST_CASE("commutant: identity matrix yields some proper subspace") {
  auto s = commutant_invariant_subspace({Mat<Rat>::identity(3)});
  REQUIRE(s.has_value());
  CHECK(s->dim() >= 1);
  CHECK(s->dim() < 3);
}

TEST_CASE("commutant: an irreducible pair yields none") {
  Mat<Rat> a(2, 2), b(2, 2);
  a(0, 0) = 2; a(0, 1) = 1; a(1, 0) = 1; a(1, 1) = 1;
  b(0, 0) = 1; b(0, 1) = -1; b(1, 0) = 1; b(1, 1) = 0;
  CHECK_FALSE(commutant_invariant_subspace({a, b}).has_value());
}

TEST_CASE("commutant: block-diagonal pair yields an invariant block") {
  // two 4x4 matrices, both block-diagonal with 2x2 blocks
  Mat<Rat> a(4, 4), b(4, 4);
  int av[2][2] = {{2, 1}, {1, 1}}, bv[2][2] = {{0, 1}, {-1, 0}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      a(i, j) = av[i][j];
      a(2 + i, 2 + j) = bv[i][j];
      b(i, j) = bv[i][j];
      b(2 + i, 2 + j) = av[i][j];
    }
  auto s = commutant_invariant_subspace({a, b});
  REQUIRE(s.has_value());
  CHECK(s->dim() == 2);
  // exact invariance of the returned subspace under both matrices
  for (const auto& m : {a, b}) {
    Mat<QuadExt> mq(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) mq(i, j) = QuadExt(m(i, j));
    Mat<QuadExt> stacked(s->dim() + 1, 4);
    for (int r = 0; r < s->dim(); ++r)
      for (int j = 0; j < 4; ++j) stacked(r, j) = s->basis[r][j];
    for (int r = 0; r < s->dim(); ++r) {
      auto img = mq.apply(s->basis[r]);
      for (int j = 0; j < 4; ++j) stacked(s->dim(), j) = img[j];
      CHECK(rank(stacked) == static_cast<std::size_t>(s->dim()));
    }
  }
}

TEST_CASE("desk instance: torus action on the sl2 adjoint is reducible") {
  // ad(h) on the adjoint of sl2 has simple spectrum {2, 0, -2}; the
  // commutant of {ad h} is large and a proper eigenspace comes back.
  RootSystem a1 = build_root_system({Family::A, 1});
  ChevalleyAlgebra alg = chevalley_basis(a1);
  Mat<Rat> adh(3, 3);
  for (int j = 0; j < 3; ++j)
    for (const auto& [k, c] : alg.bracket_basis(alg.h_index(0), j)) adh(k, j) = c;
  auto s = commutant_invariant_subspace({adh});
  REQUIRE(s.has_value());
  CHECK(s->dim() < 3);
  // invariance: ad(h) maps the subspace into itself
  Mat<QuadExt> mq(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mq(i, j) = QuadExt(adh(i, j));
  for (const auto& v : s->basis) {
    auto img = mq.apply(v);
    Mat<QuadExt> st(s->dim() + 1, 3);
    for (int r = 0; r < s->dim(); ++r)
      for (int j = 0; j < 3; ++j) st(r, j) = s->basis[r][j];
    for (int j = 0; j < 3; ++j) st(s->dim(), j) = img[j];
    CHECK(rank(st) == static_cast<std::size_t>(s->dim()));
  }
}

TEST_CASE("commutant input validation") {
  CHECK_THROWS_AS(commutant_invariant_subspace(std::vector<Mat<Rat>>{}), Error);
  Mat<Rat> a(2, 2), b(3, 3);
  CHECK_THROWS_AS(commutant_invariant_subspace({a, b}), Error);
}

}  // TEST_SUITE
