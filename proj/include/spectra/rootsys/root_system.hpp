#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectra/core/matrix.hpp"
#include "spectra/core/rational.hpp"

#include <nlohmann/json_fwd.hpp>

namespace spectra::rootsys {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

Family family_from_char(char c);

struct RootSystemSpec {
  Family family;
  int rank;

  std::string name() const { return std::string(1, static_cast<char>(family)) + std::to_string(rank); }
};

/// A weight in both coordinate systems: ambient Euclidean coordinates and
/// coordinates in the fundamental-weight basis.
struct Weight {
  VecR ambient;
  VecR fw;
};

/// Irreducible root system in a standard rational realization. All data is
/// exact; the inner product is the ambient Euclidean one (realizations are
/// chosen integer-friendly per family, so every Cartan integer is exact).
class RootSystem {
public:
  RootSystemSpec spec;
  std::size_t ambient_dim = 0;
  std::vector<VecR> simple_roots;
  std::vector<VecR> all_roots;           // canonical order: (height, lex) ascending
  std::vector<VecR> fundamental_weights;
  Mat<Rat> cartan;                       // C(i,j) = <alpha_i, alpha_j^vee>, integer entries
  VecR highest_root;
  VecR rho;                              // sum of fundamental weights

  std::vector<std::vector<long long>> roots_simple_coords;  // each root in the simple basis
  std::vector<int> positive_root_indices;                   // ascending
  int highest_root_index = -1;

  static Rat inner(const VecR& u, const VecR& v) { return dot(u, v); }

  /// <v, alpha^vee> = 2 <v, alpha> / <alpha, alpha>.
  Rat pairing(const VecR& v, const VecR& alpha) const {
    return 2 * inner(v, alpha) / inner(alpha, alpha);
  }

  VecR reflect(const VecR& v, const VecR& alpha) const {
    return vsub(v, vscale(pairing(v, alpha), alpha));
  }

  bool is_dominant(const VecR& v) const;
  bool is_dominant_integral(const VecR& v) const;

  /// Fundamental-weight coordinates (<v, alpha_i^vee>).
  VecR fw_coords(const VecR& v) const;
  VecR weight_from_fw(const VecR& fw) const;
  Weight make_weight(const VecR& ambient) const { return Weight{ambient, fw_coords(ambient)}; }

  int root_index(const VecR& r) const;  // -1 if not a root
  bool is_root(const VecR& r) const { return root_index(r) >= 0; }

  /// Decomposes v = sum c_i alpha_i + perp with perp orthogonal to the root
  /// span. Exact; used for Weyl action on arbitrary ambient vectors.
  void split_on_root_span(const VecR& v, VecR& simple_coeffs, VecR& perp) const;

  /// The antidominant chamber representative w0 . v of a vector, computed by
  /// greedy descent through simple reflections (no group enumeration).
  VecR longest_element_image(VecR v) const;

  /// Highest weight of the dual representation: -w0(omega).
  VecR dual_weight(const VecR& omega) const;

  std::size_t root_count() const { return all_roots.size(); }
  int rank() const { return spec.rank; }

private:
  friend RootSystem build_root_system(const RootSystemSpec&);
  std::map<VecR, int> root_lookup_;
  Mat<Rat> gram_;           // Gram matrix of simple roots
  Mat<Rat> gram_inv_;
};

/// Builds the root system for an admissible (family, rank); throws
/// InadmissibleSpec otherwise.
RootSystem build_root_system(const RootSystemSpec& spec);

struct HighestRootClass {
  enum class Kind { Fundamental, SumDual } kind;
  Weight omega;
  std::optional<Weight> omega_star;  // set for SumDual; may equal omega

  bool distinct_pair() const {
    return kind == Kind::SumDual && omega_star && omega.ambient != omega_star->ambient;
  }
};

/// Decides whether the highest root is a fundamental weight or the sum
/// omega + omega* of a fundamental weight and its dual. Exactly one branch
/// applies; anything else indicates a construction bug.
HighestRootClass classify_highest_root(const RootSystem& rs);

/// Weyl group element as a permutation of all_roots plus a reduced word in
/// the simple reflections. The exact orthogonal matrix is materialized on
/// demand.
struct WeylElement {
  std::vector<std::uint16_t> perm;
  std::vector<std::uint8_t> word;

  VecR act(const RootSystem& rs, const VecR& v) const;
  Mat<Rat> matrix(const RootSystem& rs) const;
  bool is_identity() const;
};

/// Full Weyl group by BFS over simple reflections, in canonical order
/// (word length, then generator sequence). Throws GroupTooLarge past cap.
std::vector<WeylElement> enumerate_weyl(const RootSystem& rs, std::size_t cap = 1000000);

/// Exactly { w in W : w v = v }. Fast path when v is a root.
std::vector<WeylElement> weyl_stabilizer(const RootSystem& rs, const VecR& v,
                                         std::size_t cap = 1000000);

/// dim V_lambda by the Weyl dimension formula, exact. Throws NotDominant.
BigInt weyl_dimension(const RootSystem& rs, const VecR& lambda);

/// Constant c with dim V_lambda >= c * ||lambda|| for every dominant
/// integral lambda (ambient Euclidean norm). Derived from the single
/// highest-root factor of the dimension formula.
double dim_lower_bound_constant(const RootSystem& rs);

nlohmann::json export_json(const RootSystem& rs);

/// Canonical list of irreducible types up to a rank bound: A1.., B2..,
/// C3.., D4.., E6..E8, F4, G2.
std::vector<RootSystemSpec> irreducible_types_up_to_rank(int max_rank);

}  // namespace spectra::rootsys
