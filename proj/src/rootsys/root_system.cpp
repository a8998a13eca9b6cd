#include "spectra/rootsys/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace spectra::rootsys {

namespace {

const char* kModule = "rootsys";

VecR basis_vec(std::size_t dim, std::size_t i, Rat v = 1) {
  VecR e(dim, Rat(0));
  e[i] = v;
  return e;
}

void check_admissible(const RootSystemSpec& s) {
  int r = s.rank;
  bool ok = false;
  switch (s.family) {
    case Family::A: ok = r >= 1; break;
    case Family::B: ok = r >= 2; break;
    case Family::C: ok = r >= 2; break;  // C2 = B2 accepted; canonical lists start at C3
    case Family::D: ok = r >= 3; break;  // D3 = A3 accepted; canonical lists start at D4
    case Family::E: ok = r >= 6 && r <= 8; break;
    case Family::F: ok = r == 4; break;
    case Family::G: ok = r == 2; break;
  }
  if (!ok)
    throw Error(kModule, "InadmissibleSpec", "no irreducible root system " + s.name());
}

std::vector<VecR> e8_roots() {
  std::vector<VecR> roots;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          VecR r(8, Rat(0));
          r[i] = si;
          r[j] = sj;
          roots.push_back(r);
        }
  for (int mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) % 2 != 0) continue;  // even number of minus signs
    VecR r(8);
    for (int i = 0; i < 8; ++i) r[i] = (mask >> i & 1) ? Rat(-1, 2) : Rat(1, 2);
    roots.push_back(r);
  }
  return roots;
}

std::vector<VecR> e8_simple_roots() {
  std::vector<VecR> s(8, VecR(8, Rat(0)));
  s[0] = VecR{Rat(1, 2), Rat(-1, 2), Rat(-1, 2), Rat(-1, 2), Rat(-1, 2), Rat(-1, 2), Rat(-1, 2), Rat(1, 2)};
  s[1][0] = 1; s[1][1] = 1;
  for (int i = 2; i < 8; ++i) {
    s[i][i - 2] = -1;
    s[i][i - 1] = 1;
  }
  return s;
}

bool in_span(const std::vector<VecR>& basis, const VecR& v) {
  std::size_t dim = v.size();
  Mat<Rat> m(dim, basis.size() + 1);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = basis[j][i];
  for (std::size_t i = 0; i < dim; ++i) m(i, basis.size()) = v[i];
  auto pivots = rref(m);
  return pivots.empty() || pivots.back() != basis.size();
}

}  // namespace

Family family_from_char(char c) {
  switch (c) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'D': return Family::D;
    case 'E': return Family::E;
    case 'F': return Family::F;
    case 'G': return Family::G;
    default: throw Error(kModule, "InadmissibleSpec", std::string("unknown family '") + c + "'");
  }
}

bool RootSystem::is_dominant(const VecR& v) const {
  for (const auto& a : simple_roots)
    if (pairing(v, a) < 0) return false;
  return true;
}

bool RootSystem::is_dominant_integral(const VecR& v) const {
  for (const auto& a : simple_roots) {
    Rat p = pairing(v, a);
    if (p < 0 || !is_integer(p)) return false;
  }
  return true;
}

VecR RootSystem::fw_coords(const VecR& v) const {
  VecR c(simple_roots.size());
  for (std::size_t i = 0; i < simple_roots.size(); ++i) c[i] = pairing(v, simple_roots[i]);
  return c;
}

VecR RootSystem::weight_from_fw(const VecR& fw) const {
  VecR v(ambient_dim, Rat(0));
  for (std::size_t i = 0; i < fw.size(); ++i) v = vadd(v, vscale(fw[i], fundamental_weights[i]));
  return v;
}

int RootSystem::root_index(const VecR& r) const {
  auto it = root_lookup_.find(r);
  return it == root_lookup_.end() ? -1 : it->second;
}

void RootSystem::split_on_root_span(const VecR& v, VecR& simple_coeffs, VecR& perp) const {
  VecR rhs(simple_roots.size());
  for (std::size_t j = 0; j < simple_roots.size(); ++j) rhs[j] = inner(v, simple_roots[j]);
  simple_coeffs = gram_inv_.apply(rhs);
  perp = v;
  for (std::size_t i = 0; i < simple_roots.size(); ++i)
    perp = vsub(perp, vscale(simple_coeffs[i], simple_roots[i]));
}

VecR RootSystem::longest_element_image(VecR v) const {
  // Greedy descent: each step strictly lowers <v, rho>, so this terminates
  // at the antidominant representative w0 . v.
  bool moved = true;
  while (moved) {
    moved = false;
    for (const auto& a : simple_roots) {
      if (pairing(v, a) > 0) {
        v = reflect(v, a);
        moved = true;
      }
    }
  }
  return v;
}

VecR RootSystem::dual_weight(const VecR& omega) const {
  VecR w0 = longest_element_image(omega);
  for (auto& x : w0) x = -x;
  return w0;
}

RootSystem build_root_system(const RootSystemSpec& spec) {
  check_admissible(spec);
  RootSystem rs;
  rs.spec = spec;
  const int r = spec.rank;

  std::vector<VecR> roots;
  switch (spec.family) {
    case Family::A: {
      rs.ambient_dim = r + 1;
      for (int i = 0; i <= r; ++i)
        for (int j = 0; j <= r; ++j) {
          if (i == j) continue;
          VecR v(r + 1, Rat(0));
          v[i] = 1;
          v[j] = -1;
          roots.push_back(v);
        }
      for (int i = 0; i < r; ++i) {
        VecR a(r + 1, Rat(0));
        a[i] = 1;
        a[i + 1] = -1;
        rs.simple_roots.push_back(a);
      }
      break;
    }
    case Family::B:
    case Family::C:
    case Family::D: {
      rs.ambient_dim = r;
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) {
              VecR v(r, Rat(0));
              v[i] = si;
              v[j] = sj;
              roots.push_back(v);
            }
      if (spec.family == Family::B)
        for (int i = 0; i < r; ++i)
          for (int s : {1, -1}) roots.push_back(basis_vec(r, i, Rat(s)));
      if (spec.family == Family::C)
        for (int i = 0; i < r; ++i)
          for (int s : {1, -1}) roots.push_back(basis_vec(r, i, Rat(2 * s)));
      for (int i = 0; i + 1 < r; ++i) {
        VecR a(r, Rat(0));
        a[i] = 1;
        a[i + 1] = -1;
        rs.simple_roots.push_back(a);
      }
      if (spec.family == Family::B) rs.simple_roots.push_back(basis_vec(r, r - 1));
      if (spec.family == Family::C) rs.simple_roots.push_back(basis_vec(r, r - 1, Rat(2)));
      if (spec.family == Family::D) {
        VecR a(r, Rat(0));
        a[r - 2] = 1;
        a[r - 1] = 1;
        rs.simple_roots.push_back(a);
      }
      break;
    }
    case Family::E: {
      rs.ambient_dim = 8;
      auto all8 = e8_roots();
      auto s8 = e8_simple_roots();
      rs.simple_roots.assign(s8.begin(), s8.begin() + r);
      if (r == 8) {
        roots = all8;
      } else {
        for (const auto& v : all8)
          if (in_span(rs.simple_roots, v)) roots.push_back(v);
      }
      break;
    }
    case Family::F: {
      rs.ambient_dim = 4;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) {
              VecR v(4, Rat(0));
              v[i] = si;
              v[j] = sj;
              roots.push_back(v);
            }
      for (int i = 0; i < 4; ++i)
        for (int s : {1, -1}) roots.push_back(basis_vec(4, i, Rat(s)));
      for (int mask = 0; mask < 16; ++mask) {
        VecR v(4);
        for (int i = 0; i < 4; ++i) v[i] = (mask >> i & 1) ? Rat(-1, 2) : Rat(1, 2);
        roots.push_back(v);
      }
      rs.simple_roots = {VecR{0, 1, -1, 0}, VecR{0, 0, 1, -1}, VecR{0, 0, 0, 1},
                         VecR{Rat(1, 2), Rat(-1, 2), Rat(-1, 2), Rat(-1, 2)}};
      break;
    }
    case Family::G: {
      rs.ambient_dim = 3;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          VecR v(3, Rat(0));
          v[i] = 1;
          v[j] = -1;
          roots.push_back(v);
        }
      for (int i = 0; i < 3; ++i)
        for (int s : {1, -1}) {
          VecR v(3, Rat(-s));
          v[i] = 2 * s;
          roots.push_back(v);
        }
      rs.simple_roots = {VecR{1, -1, 0}, VecR{-2, 1, 1}};
      break;
    }
  }

  // Gram data for the simple basis.
  std::size_t rk = rs.simple_roots.size();
  rs.gram_ = Mat<Rat>(rk, rk);
  for (std::size_t i = 0; i < rk; ++i)
    for (std::size_t j = 0; j < rk; ++j)
      rs.gram_(i, j) = RootSystem::inner(rs.simple_roots[i], rs.simple_roots[j]);
  rs.gram_inv_ = inverse(rs.gram_);

  rs.cartan = Mat<Rat>(rk, rk);
  for (std::size_t i = 0; i < rk; ++i)
    for (std::size_t j = 0; j < rk; ++j)
      rs.cartan(i, j) = rs.pairing(rs.simple_roots[i], rs.simple_roots[j]);

  // Fundamental weights from the inverse Cartan matrix: omega_i =
  // sum_j (C^{-1})_{ij} alpha_j.
  Mat<Rat> cinv = inverse(rs.cartan);
  for (std::size_t i = 0; i < rk; ++i) {
    VecR w(rs.ambient_dim, Rat(0));
    for (std::size_t j = 0; j < rk; ++j) w = vadd(w, vscale(cinv(i, j), rs.simple_roots[j]));
    rs.fundamental_weights.push_back(w);
  }
  rs.rho = VecR(rs.ambient_dim, Rat(0));
  for (const auto& w : rs.fundamental_weights) rs.rho = vadd(rs.rho, w);

  // Simple-basis coordinates of every root; canonical (height, coords) sort.
  std::vector<std::pair<std::vector<long long>, VecR>> tagged;
  for (auto& v : roots) {
    VecR coeffs, perp;
    rs.split_on_root_span(v, coeffs, perp);
    if (!is_zero(perp))
      throw Error(kModule, "ConstructionBug", "root outside simple-root span in " + spec.name());
    std::vector<long long> ic(rk);
    for (std::size_t i = 0; i < rk; ++i) {
      if (!is_integer(coeffs[i]))
        throw Error(kModule, "ConstructionBug", "non-integral root coordinate in " + spec.name());
      ic[i] = coeffs[i].convert_to<long long>();
    }
    tagged.emplace_back(std::move(ic), std::move(v));
  }
  std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
    long long ha = 0, hb = 0;
    for (auto x : a.first) ha += x;
    for (auto x : b.first) hb += x;
    if (ha != hb) return ha < hb;
    return a.first < b.first;
  });
  for (std::size_t k = 0; k < tagged.size(); ++k) {
    rs.roots_simple_coords.push_back(tagged[k].first);
    rs.all_roots.push_back(tagged[k].second);
    rs.root_lookup_[tagged[k].second] = static_cast<int>(k);
    long long h = 0;
    for (auto x : tagged[k].first) h += x;
    if (h > 0) rs.positive_root_indices.push_back(static_cast<int>(k));
  }

  // Highest root: the unique dominant root of maximal norm.
  Rat best_norm = -1;
  for (int idx : rs.positive_root_indices) {
    const VecR& a = rs.all_roots[idx];
    if (!rs.is_dominant(a)) continue;
    Rat n2 = RootSystem::inner(a, a);
    if (n2 > best_norm) {
      best_norm = n2;
      rs.highest_root = a;
      rs.highest_root_index = idx;
    }
  }
  if (rs.highest_root_index < 0)
    throw Error(kModule, "ConstructionBug", "no dominant root found in " + spec.name());
  return rs;
}

HighestRootClass classify_highest_root(const RootSystem& rs) {
  for (const auto& w : rs.fundamental_weights) {
    if (w == rs.highest_root)
      return HighestRootClass{HighestRootClass::Kind::Fundamental, rs.make_weight(w), std::nullopt};
  }
  for (const auto& w : rs.fundamental_weights) {
    VecR wstar = rs.dual_weight(w);
    if (vadd(w, wstar) == rs.highest_root)
      return HighestRootClass{HighestRootClass::Kind::SumDual, rs.make_weight(w),
                              rs.make_weight(wstar)};
  }
  throw Error(kModule, "ClassificationFailure",
              "highest root of " + rs.spec.name() + " is neither fundamental nor omega+omega*");
}

VecR WeylElement::act(const RootSystem& rs, const VecR& v) const {
  VecR coeffs, perp;
  rs.split_on_root_span(v, coeffs, perp);
  VecR out = perp;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    int img = perm[rs.root_index(rs.simple_roots[i])];
    out = vadd(out, vscale(coeffs[i], rs.all_roots[img]));
  }
  return out;
}

Mat<Rat> WeylElement::matrix(const RootSystem& rs) const {
  std::size_t n = rs.ambient_dim;
  Mat<Rat> m(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    VecR e(n, Rat(0));
    e[k] = 1;
    VecR img = act(rs, e);
    for (std::size_t i = 0; i < n; ++i) m(i, k) = img[i];
  }
  return m;
}

bool WeylElement::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != i) return false;
  return true;
}

namespace {

struct PermHash {
  std::size_t operator()(const std::vector<std::uint16_t>& p) const {
    std::size_t h = 14695981039346656037ULL;
    for (auto x : p) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

std::vector<std::vector<std::uint16_t>> simple_reflection_perms(const RootSystem& rs) {
  std::vector<std::vector<std::uint16_t>> gens;
  for (const auto& a : rs.simple_roots) {
    std::vector<std::uint16_t> p(rs.root_count());
    for (std::size_t k = 0; k < rs.root_count(); ++k) {
      int img = rs.root_index(rs.reflect(rs.all_roots[k], a));
      if (img < 0) throw Error(kModule, "ConstructionBug", "reflection left the root set");
      p[k] = static_cast<std::uint16_t>(img);
    }
    gens.push_back(std::move(p));
  }
  return gens;
}

}  // namespace

std::vector<WeylElement> enumerate_weyl(const RootSystem& rs, std::size_t cap) {
  auto gens = simple_reflection_perms(rs);
  std::size_t nr = rs.root_count();

  std::vector<WeylElement> elements;
  std::unordered_set<std::vector<std::uint16_t>, PermHash> seen;

  WeylElement id;
  id.perm.resize(nr);
  for (std::size_t k = 0; k < nr; ++k) id.perm[k] = static_cast<std::uint16_t>(k);
  elements.push_back(id);
  seen.insert(id.perm);

  std::size_t head = 0;
  while (head < elements.size()) {
    // Copy, not reference: elements reallocates as we append.
    WeylElement cur = elements[head++];
    for (std::size_t g = 0; g < gens.size(); ++g) {
      std::vector<std::uint16_t> child(nr);
      for (std::size_t k = 0; k < nr; ++k) child[k] = cur.perm[gens[g][k]];
      if (seen.insert(child).second) {
        if (elements.size() >= cap)
          throw Error(kModule, "GroupTooLarge",
                      "Weyl group of " + rs.spec.name() + " exceeds cap " + std::to_string(cap));
        WeylElement w;
        w.perm = std::move(child);
        w.word = cur.word;
        w.word.push_back(static_cast<std::uint8_t>(g));
        elements.push_back(std::move(w));
      }
    }
  }
  return elements;
}

std::vector<WeylElement> weyl_stabilizer(const RootSystem& rs, const VecR& v, std::size_t cap) {
  auto all = enumerate_weyl(rs, cap);
  std::vector<WeylElement> stab;
  int ridx = rs.root_index(v);
  if (ridx >= 0) {
    for (auto& w : all)
      if (w.perm[ridx] == ridx) stab.push_back(w);
    return stab;
  }
  VecR coeffs, perp;
  rs.split_on_root_span(v, coeffs, perp);
  for (auto& w : all) {
    VecR img = perp;
    bool maybe = true;
    for (std::size_t i = 0; i < coeffs.size() && maybe; ++i) {
      if (coeffs[i] == 0) continue;
      img = vadd(img, vscale(coeffs[i], rs.all_roots[w.perm[rs.root_index(rs.simple_roots[i])]]));
    }
    if (img == v) stab.push_back(w);
  }
  return stab;
}

BigInt weyl_dimension(const RootSystem& rs, const VecR& lambda) {
  if (!rs.is_dominant_integral(lambda))
    throw Error(kModule, "NotDominant", "weight is not dominant integral");
  Rat num = 1, den = 1;
  VecR lr = vadd(lambda, rs.rho);
  for (int idx : rs.positive_root_indices) {
    const VecR& a = rs.all_roots[idx];
    num *= RootSystem::inner(lr, a);
    den *= RootSystem::inner(rs.rho, a);
  }
  Rat d = num / den;
  if (!is_integer(d) || d <= 0)
    throw Error(kModule, "ConstructionBug", "Weyl dimension did not evaluate to a positive integer");
  return rat_num(d);
}

double dim_lower_bound_constant(const RootSystem& rs) {
  // dim V_lambda >= <lambda + rho, at> / <rho, at>  (all other factors >= 1),
  // and <lambda, at> >= c0 ||lambda|| on the dominant cone with
  // c0 = min_i <omega_i, at> / ||omega_i||.
  double c0 = 1e300;
  double rho_at = to_double(RootSystem::inner(rs.rho, rs.highest_root));
  for (const auto& w : rs.fundamental_weights) {
    double num = to_double(RootSystem::inner(w, rs.highest_root));
    double nw = std::sqrt(to_double(RootSystem::inner(w, w)));
    c0 = std::min(c0, num / nw);
  }
  return c0 / rho_at;
}

nlohmann::json export_json(const RootSystem& rs) {
  nlohmann::json j;
  j["family"] = std::string(1, static_cast<char>(rs.spec.family));
  j["rank"] = rs.spec.rank;
  j["ambient_dim"] = rs.ambient_dim;
  auto vec_json = [](const VecR& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v)
      a.push_back({rat_num(x).convert_to<long long>(), rat_den(x).convert_to<long long>()});
    return a;
  };
  j["roots"] = nlohmann::json::array();
  for (const auto& r : rs.all_roots) j["roots"].push_back(vec_json(r));
  j["simple_roots"] = nlohmann::json::array();
  for (const auto& r : rs.simple_roots) j["simple_roots"].push_back(vec_json(r));
  j["weights"] = nlohmann::json::array();
  for (const auto& w : rs.fundamental_weights) j["weights"].push_back(vec_json(w));
  j["highest_root"] = vec_json(rs.highest_root);
  j["cartan"] = nlohmann::json::array();
  for (std::size_t i = 0; i < rs.cartan.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < rs.cartan.cols(); ++k)
      row.push_back(rat_num(rs.cartan(i, k)).convert_to<long long>());
    j["cartan"].push_back(row);
  }
  return j;
}

std::vector<RootSystemSpec> irreducible_types_up_to_rank(int max_rank) {
  std::vector<RootSystemSpec> out;
  for (int r = 1; r <= max_rank; ++r) out.push_back({Family::A, r});
  for (int r = 2; r <= max_rank; ++r) out.push_back({Family::B, r});
  for (int r = 3; r <= max_rank; ++r) out.push_back({Family::C, r});
  for (int r = 4; r <= max_rank; ++r) out.push_back({Family::D, r});
  for (int r = 6; r <= std::min(max_rank, 8); ++r) out.push_back({Family::E, r});
  if (max_rank >= 4) out.push_back({Family::F, 4});
  if (max_rank >= 2) out.push_back({Family::G, 2});
  return out;
}

}  // namespace spectra::rootsys
