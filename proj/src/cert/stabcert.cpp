#include "spectra/cert/stabcert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace spectra::cert {

namespace {

const char* kModule = "stabcert";

std::size_t mat_bits(const MatQ& m) {
  std::size_t bits = 0;
  for (const auto& e : m.data()) bits = std::max(bits, quadext_bits(e));
  return bits;
}

}  // namespace

WordBall word_ball(const std::vector<MatQ>& generators, int n, std::size_t height_bits) {
  if (generators.empty()) throw Error(kModule, "BadParameter", "empty generating set");
  std::size_t d = generators[0].rows();
  for (const auto& g : generators)
    if (g.rows() != d || g.cols() != d)
      throw Error(kModule, "BadParameter", "generators must be square of equal size");

  WordBall ball;
  ball.generators = generators;
  ball.radius = n;

  std::map<MatQ, int> seen;
  MatQ id = MatQ::identity(d);
  ball.elements.push_back({id, {}});
  seen.emplace(id, 0);

  std::size_t level_begin = 0;
  for (int depth = 1; depth <= n; ++depth) {
    std::size_t level_end = ball.elements.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t g = 0; g < generators.size(); ++g) {
        MatQ child = ball.elements[i].m * generators[g];
        if (mat_bits(child) > height_bits)
          throw Error(kModule, "HeightOverflow",
                      "entry bits exceed budget at word length " + std::to_string(depth));
        if (seen.emplace(child, static_cast<int>(ball.elements.size())).second) {
          auto word = ball.elements[i].word;
          word.push_back(static_cast<int>(g));
          ball.elements.push_back({std::move(child), std::move(word)});
        }
      }
    }
    level_begin = level_end;
  }
  return ball;
}

PluckerSystem plucker_relations(int d, int l) {
  if (l < 1 || l > d) throw Error(kModule, "BadParameter", "need 1 <= l <= d");
  PluckerSystem sys;
  sys.d = d;
  sys.l = l;
  if (l <= 1 || l >= d - 1) return sys;  // every tensor is pure

  auto canon = [](std::vector<int> seq, int& sign) -> std::optional<std::vector<int>> {
    sign = 1;
    for (std::size_t i = 1; i < seq.size(); ++i) {
      std::size_t j = i;
      while (j > 0 && seq[j - 1] > seq[j]) {
        std::swap(seq[j - 1], seq[j]);
        sign = -sign;
        --j;
      }
    }
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (seq[i] == seq[i - 1]) return std::nullopt;
    return seq;
  };

  std::set<std::vector<std::pair<std::vector<int>, std::vector<int>>>> dedup;
  for (const auto& iminus : index_subsets(d, l - 1)) {
    for (const auto& jplus : index_subsets(d, l + 1)) {
      // sum over t of (-1)^t v_{iminus + j_t} v_{jplus - j_t}
      std::map<std::pair<std::vector<int>, std::vector<int>>, long long> acc;
      for (int t = 0; t <= l; ++t) {
        std::vector<int> left = iminus;
        left.push_back(jplus[t]);
        int sgn = 0;
        auto lsorted = canon(left, sgn);
        if (!lsorted) continue;
        std::vector<int> right;
        for (int s = 0; s <= l; ++s)
          if (s != t) right.push_back(jplus[s]);
        long long c = ((t % 2 == 0) ? 1 : -1) * sgn;
        auto key = std::make_pair(*lsorted, right);
        if (key.first > key.second) {
          std::swap(key.first, key.second);
        }
        acc[key] += c;
      }
      PluckerRelation rel;
      for (const auto& [key, c] : acc)
        if (c != 0) rel.terms.push_back({key.first, key.second, c});
      if (rel.terms.empty()) continue;

      // normalize: divide by gcd, first coefficient positive; dedup
      long long g = 0;
      for (const auto& t : rel.terms) g = std::gcd(g, std::llabs(t.coeff));
      for (auto& t : rel.terms) t.coeff /= g;
      if (rel.terms[0].coeff < 0)
        for (auto& t : rel.terms) t.coeff = -t.coeff;
      std::vector<std::pair<std::vector<int>, std::vector<int>>> signature;
      for (const auto& t : rel.terms) signature.emplace_back(t.I, t.J);
      if (dedup.insert(signature).second) sys.relations.push_back(std::move(rel));
    }
  }
  return sys;
}

MatQ wedge_power(const MatQ& g, int l) {
  int d = static_cast<int>(g.rows());
  auto subsets = index_subsets(d, l);
  MatQ w(subsets.size(), subsets.size());
  for (std::size_t r = 0; r < subsets.size(); ++r)
    for (std::size_t c = 0; c < subsets.size(); ++c)
      w(r, c) = minor_det(g, subsets[r], subsets[c]);
  return w;
}

AffineSystem stabilizer_system(const MatQ& g, const std::vector<int>& pivot, int l, int sign) {
  int d = static_cast<int>(g.rows());
  auto subsets = index_subsets(d, l);
  MatQ w = wedge_power(g, l);
  std::size_t nsub = subsets.size();
  std::size_t pivot_col = std::find(subsets.begin(), subsets.end(), pivot) - subsets.begin();
  if (pivot_col == nsub) throw Error(kModule, "BadParameter", "pivot is not an l-subset");

  AffineSystem sys;
  sys.pivot = pivot;
  sys.a = Mat<QuadExt>(nsub, nsub - 1);
  sys.b.assign(nsub, QuadExt(Rat(0)));
  QuadExt sgn{Rat(sign)};
  std::size_t col = 0;
  for (std::size_t c = 0; c < nsub; ++c) {
    if (c == pivot_col) {
      for (std::size_t r = 0; r < nsub; ++r) {
        sys.b[r] = w(r, c);
        if (r == c) sys.b[r] -= sgn;
      }
      continue;
    }
    sys.vars.push_back(subsets[c]);
    for (std::size_t r = 0; r < nsub; ++r) {
      sys.a(r, col) = w(r, c);
      if (r == c) sys.a(r, col) -= sgn;
    }
    ++col;
  }
  return sys;
}

namespace {

bool is_ring_integer(const QuadExt& x) {
  if (x.is_rational()) return is_integer(x.a);
  long long d = x.d;
  if (((d % 4) + 4) % 4 == 1) {
    // Z[(1+sqrt d)/2]: x = a + b sqrt d integral iff 2b in Z and a - b in Z
    return is_integer(2 * x.b) && is_integer(x.a - x.b);
  }
  return is_integer(x.a) && is_integer(x.b);
}

double max_embedding_abs(const QuadExt& x) {
  return std::max(std::fabs(x.to_double()), std::fabs(x.to_double_conj()));
}

}  // namespace

HeightLedger height_ledger(const std::vector<MatQ>& generators, int n, int l,
                           std::size_t height_bits) {
  if (generators.empty()) throw Error(kModule, "BadParameter", "empty generating set");
  HeightLedger led;

  // Certified q(S): with D = lcm of entry denominators and M >= dim *
  // max|entry| over both embeddings, every length-n word has l x l minors
  // with denominator dividing D^{l n} and magnitude at most l! M^{l n}, so
  // q = (D M)^l l! gives q^n P integral of size <= q^{2n} for all n.
  BigInt den_lcm = 1;
  double max_abs = 1.0;
  std::size_t dim = generators[0].rows();
  for (const auto& g : generators)
    for (const auto& e : g.data()) {
      den_lcm = boost::multiprecision::lcm(den_lcm, rat_den(e.a));
      if (!e.is_rational()) den_lcm = boost::multiprecision::lcm(den_lcm, rat_den(e.b));
      max_abs = std::max(max_abs, max_embedding_abs(e));
    }
  BigInt big_m(static_cast<long long>(std::ceil(dim * max_abs - 1e-12)));
  BigInt factorial = 1;
  for (int k = 2; k <= l; ++k) factorial *= k;
  led.q = factorial;
  for (int k = 0; k < l; ++k) led.q *= den_lcm * big_m;
  if (led.q < 1) led.q = 1;

  WordBall ball = word_ball(generators, n, height_bits);
  led.coefficients_integral = true;
  led.max_size_ratio = 0;
  Rat q(led.q);
  for (const auto& entry : ball.elements) {
    int len = static_cast<int>(entry.word.size());
    Rat qn = 1, q2n = 1;
    for (int k = 0; k < len; ++k) qn *= q;
    q2n = qn * qn;
    // coefficients of P_{I0,g} for every pivot are the wedge entries and
    // the constants -1; the wedge entries are the l x l minors
    MatQ w = wedge_power(entry.m, l);
    for (const auto& c : w.data()) {
      QuadExt scaled(qn * c.a, qn * c.b, c.d);
      if (!is_ring_integer(scaled)) led.coefficients_integral = false;
      double ratio = max_embedding_abs(scaled) / to_double(q2n);
      led.max_size_ratio = std::max(led.max_size_ratio, ratio);
    }
    ++led.words_checked;
  }
  return led;
}

namespace {

std::optional<Rat> rational_sqrt(const Rat& x) {
  if (x < 0) return std::nullopt;
  if (x == 0) return Rat(0);
  BigInt num = rat_num(x), den = rat_den(x);
  BigInt sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
  if (sn * sn == num && sd * sd == den) return Rat(sn, sd);
  return std::nullopt;
}

/// sqrt of x within its own field Q(sqrt d), if one exists.
std::optional<QuadExt> field_sqrt(const QuadExt& x) {
  if (x.is_rational()) {
    if (auto r = rational_sqrt(x.a)) return QuadExt(*r);
    return std::nullopt;  // sqrt would leave the field (or be imaginary)
  }
  // (p + q sqrt d)^2 = x: p^2 + d q^2 = x.a, 2 p q = x.b
  // => p^2 = (x.a +- sqrt(x.a^2 - d x.b^2)) / 2
  auto ns = rational_sqrt(x.a * x.a - Rat(x.d) * x.b * x.b);
  if (!ns) return std::nullopt;
  for (int sign : {1, -1}) {
    Rat p2 = (x.a + Rat(sign) * *ns) / 2;
    if (auto p = rational_sqrt(p2)) {
      if (*p == 0) continue;
      Rat q = x.b / (2 * *p);
      QuadExt cand(*p, q, x.d);
      if (cand * cand == x) return cand;
      QuadExt neg(-*p, -q, x.d);
      if (neg * neg == x) return neg;
    }
  }
  return std::nullopt;
}

struct AffineSolution {
  std::vector<QuadExt> particular;              // over the non-pivot coordinates
  std::vector<std::vector<QuadExt>> kernel;     // basis of the homogeneous part
};

/// Solves the stacked affine systems exactly; nullopt if inconsistent.
std::optional<AffineSolution> solve_stacked(const std::vector<AffineSystem>& systems,
                                            std::size_t nvars) {
  std::size_t rows = 0;
  for (const auto& s : systems) rows += s.b.size();
  Mat<QuadExt> aug(rows, nvars + 1);
  std::size_t r0 = 0;
  for (const auto& s : systems) {
    for (std::size_t r = 0; r < s.b.size(); ++r) {
      for (std::size_t c = 0; c < nvars; ++c) aug(r0 + r, c) = s.a(r, c);
      aug(r0 + r, nvars) = QuadExt(Rat(0)) - s.b[r];  // A v = -b
    }
    r0 += s.b.size();
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == nvars) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(nvars, QuadExt(Rat(0)));
  std::vector<bool> is_pivot(nvars, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    sol.particular[pivots[r]] = aug(r, nvars);
    is_pivot[pivots[r]] = true;
  }
  for (std::size_t free_col = 0; free_col < nvars; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<QuadExt> k(nvars, QuadExt(Rat(0)));
    k[free_col] = QuadExt(Rat(1));
    for (std::size_t r = 0; r < pivots.size(); ++r)
      k[pivots[r]] = QuadExt(Rat(0)) - aug(r, free_col);
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

}  // namespace

std::optional<CertResult> certify_common_invariant_subspace(const WordBall& ball,
                                                            const SubspaceModel<QuadExt>& l0,
                                                            double threshold) {
  if (!(threshold > 0)) throw Error(kModule, "BadParameter", "need threshold > 0");
  if (ball.elements.empty()) throw Error(kModule, "EmptyNearSet", "empty ball");
  int d = static_cast<int>(ball.elements[0].m.rows());
  int l = l0.dim();
  auto subsets = index_subsets(d, l);

  // u' as a coordinate vector over the subset basis
  std::vector<QuadExt> u(subsets.size(), QuadExt(Rat(0)));
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    auto it = l0.plucker.find(subsets[s]);
    if (it != l0.plucker.end()) u[s] = it->second;
  }

  // near set: max_I |(wedge g) u' -+ u'|, sign chosen per element (elements
  // of H_L fix u up to a sign; proximity at a small threshold decides it)
  std::vector<std::size_t> near;
  std::vector<int> signs;
  std::vector<MatQ> wedges;
  for (std::size_t i = 0; i < ball.elements.size(); ++i) {
    MatQ w = wedge_power(ball.elements[i].m, l);
    auto img = w.apply(u);
    double dplus = 0, dminus = 0;
    for (std::size_t s = 0; s < u.size(); ++s) {
      dplus = std::max(dplus, std::fabs((img[s] - u[s]).to_double()));
      dminus = std::max(dminus, std::fabs((img[s] + u[s]).to_double()));
    }
    double dist = std::min(dplus, dminus);
    if (dist <= threshold) {
      near.push_back(i);
      signs.push_back(dplus <= dminus ? +1 : -1);
      wedges.push_back(std::move(w));
    }
  }
  if (near.empty()) throw Error(kModule, "EmptyNearSet", "no ball element within the threshold");

  auto relations = plucker_relations(d, l);
  bool solver_incomplete = false;

  {
    std::vector<AffineSystem> systems;
    for (std::size_t k = 0; k < near.size(); ++k) {
      AffineSystem sys = stabilizer_system(ball.elements[near[k]].m, l0.pivot, l, signs[k]);
      systems.push_back(std::move(sys));
    }
    std::size_t nvars = subsets.size() - 1;
    auto sol = solve_stacked(systems, nvars);
    if (!sol) return std::nullopt;

    // u' itself first: when every near-set element fixes u exactly (the
    // all-stabilize and identity-only cases), the certificate is L0.
    bool u_solves = true;
    for (std::size_t k = 0; k < near.size() && u_solves; ++k) {
      auto img = wedges[k].apply(u);
      for (std::size_t s = 0; s < u.size(); ++s) {
        QuadExt want = signs[k] > 0 ? u[s] : QuadExt(Rat(0)) - u[s];
        if (!(img[s] == want)) {
          u_solves = false;
          break;
        }
      }
    }

    // coordinates as a function of the kernel parameters
    auto coords_at = [&](const std::vector<QuadExt>& params) {
      std::map<std::vector<int>, QuadExt> coords;
      coords[l0.pivot] = QuadExt(Rat(1));
      std::size_t col = 0;
      for (const auto& var : systems[0].vars) {
        QuadExt v = sol->particular[col];
        for (std::size_t k = 0; k < params.size(); ++k) v += params[k] * sol->kernel[k][col];
        coords[var] = v;
        ++col;
      }
      return coords;
    };
    auto relations_vanish = [&](const std::map<std::vector<int>, QuadExt>& coords) {
      for (const auto& rel : relations.relations)
        if (!evaluate_relation(rel, coords).is_zero()) return false;
      return true;
    };

    std::optional<std::map<std::vector<int>, QuadExt>> pure;
    if (u_solves) {
      std::map<std::vector<int>, QuadExt> coords;
      for (std::size_t s = 0; s < subsets.size(); ++s) coords[subsets[s]] = u[s];
      pure = std::move(coords);
    } else if (sol->kernel.empty()) {
      auto c = coords_at({});
      if (relations_vanish(c)) pure = std::move(c);
    } else if (sol->kernel.size() == 1) {
      // substitute v(t) = particular + t * kernel into each quadric
      // a t^2 + b t + c with exact coefficients
      bool constrained = false;
      std::vector<QuadExt> roots;
      for (const auto& rel : relations.relations) {
        auto c0map = coords_at({QuadExt(Rat(0))});
        auto c1map = coords_at({QuadExt(Rat(1))});
        auto cm1map = coords_at({QuadExt(Rat(-1))});
        QuadExt f0 = evaluate_relation(rel, c0map);
        QuadExt f1 = evaluate_relation(rel, c1map);
        QuadExt fm1 = evaluate_relation(rel, cm1map);
        // f(t) = A t^2 + B t + C with C = f0, A = (f1 + fm1)/2 - f0,
        // B = (f1 - fm1)/2
        QuadExt C = f0;
        QuadExt A = (f1 + fm1) / QuadExt(Rat(2)) - f0;
        QuadExt B = (f1 - fm1) / QuadExt(Rat(2));
        if (A.is_zero() && B.is_zero()) continue;  // relation holds identically
        constrained = true;
        if (A.is_zero()) {
          roots.push_back((QuadExt(Rat(0)) - C) / B);
          break;
        }
        QuadExt disc = B * B - QuadExt(Rat(4)) * A * C;
        auto sq = field_sqrt(disc);
        if (!sq) {
          solver_incomplete = true;
          break;
        }
        roots.push_back((QuadExt(Rat(0)) - B + *sq) / (QuadExt(Rat(2)) * A));
        roots.push_back((QuadExt(Rat(0)) - B - *sq) / (QuadExt(Rat(2)) * A));
        break;
      }
      if (!constrained) {
        // all relations hold along the line; take the particular solution
        auto c = coords_at({QuadExt(Rat(0))});
        if (relations_vanish(c)) pure = std::move(c);
      }
      for (const auto& t : roots) {
        auto c = coords_at({t});
        if (relations_vanish(c)) {
          pure = std::move(c);
          break;
        }
      }
    } else {
      // high-dimensional solution family: try the particular point and the
      // coordinate directions before giving up
      std::vector<std::vector<QuadExt>> trials;
      trials.push_back(std::vector<QuadExt>(sol->kernel.size(), QuadExt(Rat(0))));
      for (std::size_t k = 0; k < sol->kernel.size(); ++k) {
        auto t = trials[0];
        t[k] = QuadExt(Rat(1));
        trials.push_back(t);
      }
      for (const auto& t : trials) {
        auto c = coords_at(t);
        if (relations_vanish(c)) {
          pure = std::move(c);
          break;
        }
      }
      if (!pure) solver_incomplete = true;
    }

    if (pure) {
      CertResult res;
      res.element_signs = signs;
      res.sign = +1;
      for (int s : signs)
        if (s < 0) res.sign = -1;
      res.near_set = near;
      res.degenerate = near.size() == 1;
      res.l1.pivot = l0.pivot;
      res.l1.plucker = *pure;
      res.l1.basis = basis_from_pure_plucker(*pure, l0.pivot, d);
      // soundness: the reconstructed basis reproduces the coordinates, and
      // every near-set element fixes the Plucker vector up to the sign
      auto re = plucker_of_basis(res.l1.basis);
      QuadExt piv = re.at(l0.pivot);
      if (piv.is_zero()) throw Error(kModule, "ConstructionBug", "degenerate reconstruction");
      for (auto& [idx, val] : re) {
        if (!(val / piv == res.l1.plucker.at(idx)))
          throw Error(kModule, "ConstructionBug", "reconstructed basis does not match the tensor");
      }
      std::vector<QuadExt> vstar(subsets.size());
      for (std::size_t s = 0; s < subsets.size(); ++s) vstar[s] = res.l1.plucker.at(subsets[s]);
      for (std::size_t k = 0; k < near.size(); ++k) {
        auto img = wedges[k].apply(vstar);
        for (std::size_t s = 0; s < subsets.size(); ++s) {
          QuadExt want = signs[k] > 0 ? vstar[s] : QuadExt(Rat(0)) - vstar[s];
          if (!(img[s] == want))
            throw Error(kModule, "ConstructionBug", "certified subspace is not invariant");
        }
      }
      return res;
    }
  }

  if (solver_incomplete)
    throw Error(kModule, "SolverIncomplete",
                "nonlinear residue could not be decided exactly in the supported fields");
  return std::nullopt;
}

MatQ plane_rotation(int d, int i, int j, const Rat& c, const Rat& s) {
  if (c * c + s * s != 1)
    throw Error(kModule, "BadParameter", "need an exact Pythagorean pair c^2 + s^2 = 1");
  MatQ m = MatQ::identity(d);
  m(i, i) = QuadExt(c);
  m(j, j) = QuadExt(c);
  m(i, j) = QuadExt(-s);
  m(j, i) = QuadExt(s);
  return m;
}

SubspaceModel<QuadExt> subspace_from_rational_basis(const std::vector<std::vector<Rat>>& basis) {
  std::vector<std::vector<QuadExt>> b;
  for (const auto& row : basis) {
    std::vector<QuadExt> r;
    for (const auto& x : row) r.emplace_back(x);
    b.push_back(std::move(r));
  }
  return make_subspace<QuadExt>(b, [](const QuadExt& v) { return std::fabs(v.to_double()); });
}

}  // namespace spectra::cert
