#include "spectra/wedge/chevalley.hpp"

#include <algorithm>

namespace spectra::wedge {

namespace {
const char* kModule = "wedge";
}

ChevalleyAlgebra chevalley_basis(const rootsys::RootSystem& rs, int rank_cap) {
  if (rs.rank() > rank_cap)
    throw Error(kModule, "RankTooLarge",
                "rank " + std::to_string(rs.rank()) + " exceeds wedge cap " + std::to_string(rank_cap));
  return ChevalleyAlgebra(rs);
}

ChevalleyAlgebra::ChevalleyAlgebra(rootsys::RootSystem rs) : rs_(std::move(rs)) {
  std::size_t nr = rs_.root_count();
  int r = rs_.rank();

  neg_.resize(nr);
  for (std::size_t k = 0; k < nr; ++k)
    neg_[k] = rs_.root_index(vscale(Rat(-1), rs_.all_roots[k]));

  cartan_pairing_.assign(nr, std::vector<long long>(r));
  for (std::size_t k = 0; k < nr; ++k)
    for (int i = 0; i < r; ++i)
      cartan_pairing_[k][i] =
          rs_.pairing(rs_.all_roots[k], rs_.simple_roots[i]).convert_to<long long>();

  // Coroot coordinates: alpha^vee = sum c_i alpha_i^vee, solved exactly in
  // the ambient space (restricted to the root span).
  coroot_coords_.assign(nr, std::vector<long long>(r));
  {
    Mat<Rat> m(rs_.ambient_dim, r);
    for (int j = 0; j < r; ++j) {
      const VecR& a = rs_.simple_roots[j];
      Rat scale = 2 / rootsys::RootSystem::inner(a, a);
      for (std::size_t i = 0; i < rs_.ambient_dim; ++i) m(i, j) = scale * a[i];
    }
    for (std::size_t k = 0; k < nr; ++k) {
      const VecR& a = rs_.all_roots[k];
      Rat scale = 2 / rootsys::RootSystem::inner(a, a);
      VecR target(rs_.ambient_dim);
      for (std::size_t i = 0; i < rs_.ambient_dim; ++i) target[i] = scale * a[i];
      VecR sol = solve(m, target);
      for (int i = 0; i < r; ++i) {
        if (!is_integer(sol[i]))
          throw Error(kModule, "ConstructionBug", "coroot has non-integer coordinates");
        coroot_coords_[k][i] = sol[i].convert_to<long long>();
      }
    }
  }

  pos_order_.assign(nr, -1);
  for (std::size_t p = 0; p < rs_.positive_root_indices.size(); ++p)
    pos_order_[rs_.positive_root_indices[p]] = static_cast<int>(p);

  // Extraspecial pairs: for every non-simple positive sum, the special pair
  // with minimal first member in the canonical positive order.
  for (int g : rs_.positive_root_indices) {
    std::pair<int, int> best(-1, -1);
    for (int a : rs_.positive_root_indices) {
      VecR diff = vsub(rs_.all_roots[g], rs_.all_roots[a]);
      int b = rs_.root_index(diff);
      if (b < 0 || pos_order_[b] < 0) continue;
      if (pos_order_[a] >= pos_order_[b]) continue;  // want a strictly before b
      if (best.first < 0 || pos_order_[a] < pos_order_[best.first]) best = {a, b};
    }
    if (best.first >= 0) extraspecial_[g] = best;
  }
}

int ChevalleyAlgebra::sum_root(int a_root, int b_root) const {
  return rs_.root_index(vadd(rs_.all_roots[a_root], rs_.all_roots[b_root]));
}

int ChevalleyAlgebra::p_max(int a_root, int b_root) const {
  int p = 0;
  VecR v = rs_.all_roots[b_root];
  while (true) {
    v = vsub(v, rs_.all_roots[a_root]);
    if (!rs_.is_root(v)) break;
    ++p;
  }
  return p;
}

long long ChevalleyAlgebra::structure_constant(int a_root, int b_root) const {
  if (sum_root(a_root, b_root) < 0) return 0;
  return n_signed(a_root, b_root);
}

long long ChevalleyAlgebra::n_signed(int a, int b) const {
  auto key = std::make_pair(a, b);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  long long value = 0;
  bool a_pos = pos_order_[a] >= 0, b_pos = pos_order_[b] >= 0;
  if (a_pos && b_pos) {
    value = (pos_order_[a] < pos_order_[b]) ? n_positive_special(a, b) : -n_signed(b, a);
  } else if (!a_pos && !b_pos) {
    value = -n_signed(neg_[a], neg_[b]);
  } else if (!a_pos) {
    value = -n_signed(b, a);
  } else {
    // a positive, b negative, a+b a root gamma.
    int g = sum_root(a, b);
    if (pos_order_[g] < 0) {
      value = -n_signed(neg_[a], neg_[b]);
    } else {
      // N_{alpha,-beta'} = (<g,g>/<a,a>) N_{g,beta'} from the rotation
      // identity on the triple (alpha, -beta', -gamma).
      int bp = neg_[b];
      Rat ratio = rootsys::RootSystem::inner(rs_.all_roots[g], rs_.all_roots[g]) /
                  rootsys::RootSystem::inner(rs_.all_roots[a], rs_.all_roots[a]);
      Rat v = ratio * Rat(n_signed(g, bp));
      if (!is_integer(v))
        throw Error(kModule, "ConstructionBug", "non-integer structure constant");
      value = v.convert_to<long long>();
    }
  }
  memo_[key] = value;
  return value;
}

long long ChevalleyAlgebra::n_positive_special(int a, int b) const {
  int g = sum_root(a, b);
  auto es = extraspecial_.at(g);
  if (es == std::make_pair(a, b)) return p_max(a, b) + 1;

  int xi = es.first, eta = es.second;
  // Jacobi identity on (E_a, E_b, E_{-xi}):
  //   N_{a,b} N_{g,-xi} + N_{b,-xi} N_{b-xi,a} + N_{-xi,a} N_{a-xi,b} = 0.
  long long t2 = 0, t3 = 0;
  int nxi = neg_[xi];
  if (sum_root(b, nxi) >= 0) {
    int bmxi = sum_root(b, nxi);
    if (sum_root(bmxi, a) >= 0) t2 = n_signed(b, nxi) * n_signed(bmxi, a);
  }
  if (sum_root(nxi, a) >= 0) {
    int amxi = sum_root(nxi, a);
    if (sum_root(amxi, b) >= 0) t3 = n_signed(nxi, a) * n_signed(amxi, b);
  }
  long long denom = n_signed(g, nxi);  // nonzero: g - xi = eta is a root
  if (denom == 0) throw Error(kModule, "ConstructionBug", "vanishing pivot in sign recursion");
  long long num = -(t2 + t3);
  if (num % denom != 0) throw Error(kModule, "ConstructionBug", "non-divisible sign recursion");
  long long value = num / denom;
  (void)eta;
  return value;
}

SparseElem ChevalleyAlgebra::bracket_basis(int i, int j) const {
  SparseElem out;
  bool ci = is_cartan(i), cj = is_cartan(j);
  if (ci && cj) return out;
  if (ci && !cj) {
    int rb = root_of(j);
    long long c = cartan_pairing_[rb][i];
    if (c != 0) out.emplace_back(j, Rat(c));
    return out;
  }
  if (!ci && cj) {
    int ra = root_of(i);
    long long c = cartan_pairing_[ra][j];
    if (c != 0) out.emplace_back(i, Rat(-c));
    return out;
  }
  int ra = root_of(i), rb = root_of(j);
  if (neg_[ra] == rb) {
    // [E_a, E_{-a}] = H_a in simple-coroot coordinates
    const auto& cc = coroot_coords_[ra];
    for (int k = 0; k < rank(); ++k)
      if (cc[k] != 0) out.emplace_back(h_index(k), Rat(cc[k]));
    return out;
  }
  int g = sum_root(ra, rb);
  if (g >= 0) {
    long long n = structure_constant(ra, rb);
    if (n != 0) out.emplace_back(e_index(g), Rat(n));
  }
  return out;
}

SparseElem ChevalleyAlgebra::bracket(const SparseElem& u, const SparseElem& v) const {
  std::map<int, Rat> acc;
  for (const auto& [i, ci] : u)
    for (const auto& [j, cj] : v)
      for (const auto& [k, ck] : bracket_basis(i, j)) acc[k] += ci * cj * ck;
  SparseElem out;
  for (auto& [k, c] : acc)
    if (c != 0) out.emplace_back(k, c);
  return out;
}

}  // namespace spectra::wedge
