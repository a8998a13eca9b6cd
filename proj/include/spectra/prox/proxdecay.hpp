#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectra/core/fit.hpp"
#include "spectra/core/matrix.hpp"
#include "spectra/core/parallel.hpp"
#include "spectra/core/quadext.hpp"
#include "spectra/core/rational.hpp"

namespace spectra::prox {

/// p-adic valuation of a nonzero rational; throws on x = 0.
long long valuation(const Rat& x, long long p);

/// |x|_p = p^{-v_p(x)}; |0|_p = 0. Throws NotPrime.
double padic_abs(const Rat& x, long long p);

bool is_prime(long long p);

struct Place {
  bool archimedean = false;
  int embedding = +1;   // +1: sqrt(d) -> +sqrt(d); -1: conjugate embedding
  long long p = 0;      // finite place
  double abs_value = 0; // |lambda| at the place (norm-based for quadratic p-adic)
  std::string describe() const;
};

/// A place where |lambda|_v > 1: one of the real embeddings, or a prime
/// dividing the denominator of the norm/trace. NoExpandingPlace exactly
/// when lambda is a root of unity (+-1 in a real quadratic field).
Place find_expanding_place(const QuadExt& lambda);

enum class FieldKind { Real, Padic };

struct ProductEnsemble {
  std::vector<Mat<Rat>> matrices;
  std::vector<Rat> weights;
  FieldKind field = FieldKind::Real;
  long long p = 0;  // for Padic

  std::size_t dim() const { return matrices.empty() ? 0 : matrices[0].rows(); }
  void validate() const;  // square, equal sizes, invertible, weights sum 1
};

struct ProximalityReport {
  double gap_ratio = 0;  // fitted growth rate per step of log(s1/s2)
  double r2 = 0;
  bool proximal = false;
  std::vector<std::pair<int, double>> median_log_gap;  // (n, median)
};

/// Monte-Carlo top-two singular gap growth: real case via SVD of the
/// renormalized products, p-adic case via elementary-divisor valuations.
/// proximal = positive fitted slope with R^2 >= 0.9.
ProximalityReport proximality_check(const ProductEnsemble& ens, int n_max, std::size_t samples,
                                    std::uint64_t seed, Exec exec = Exec::OpenMP);

/// log(|e1|/|e2|) of the top two elementary divisors of an exact rational
/// matrix over Q_p (exposed for tests).
double padic_top_gap(const Mat<Rat>& m, long long p);

struct DecayRow {
  int n;
  double hit_probability;
};

struct DecayReport {
  std::vector<DecayRow> rows;
  double kappa_hat = 0;
  double r2 = 0;
};

/// Fraction of sampled n-step products with g.v within relative distance
/// epsilon of the hyperplane W (real: projective sine; p-adic: relative
/// p-adic size of <g.v, normal>). Throws BadHyperplane on a zero normal.
DecayReport decay_estimate(const ProductEnsemble& ens, const VecR& v, const VecR& w_normal,
                           double epsilon, int n_min, int n_max, std::size_t samples,
                           std::uint64_t seed, Exec exec = Exec::OpenMP);

struct ExactDecayRow {
  int n;
  double hit_probability;   // epsilon-threshold hits, exact weights
  Rat exact_membership;     // probability of <g v, normal> = 0 exactly
};

/// Exhaustive word-enumeration oracle (convolution DP with exact dedup).
std::vector<ExactDecayRow> decay_exact_enumeration(const ProductEnsemble& ens, const VecR& v,
                                                   const VecR& w_normal, double epsilon,
                                                   int n_max);

}  // namespace spectra::prox
