#pragma once

#include <cstdint>
#include <vector>

#include "spectra/core/fit.hpp"
#include "spectra/core/parallel.hpp"
#include "spectra/walk/subgroup.hpp"

namespace spectra::walk {

struct WalkOptions {
  bool keep_exact = false;
  std::size_t height_bits = 4096;  // per-entry cap for exact products
};

struct WalkSample {
  std::vector<Quatd> endpoints;
  std::vector<QuatQ> exact_endpoints;  // filled iff exact products survived the cap
  bool exact_available = false;
  bool height_overflow = false;
};

/// i.i.d. words of length n; endpoint i depends only on (seed, i), so the
/// sample set is identical across thread counts.
WalkSample sample_walk(const MeasureSpec& mu, int n, std::size_t samples, std::uint64_t seed,
                       const WalkOptions& opts = {}, Exec exec = Exec::OpenMP);

double distance_to_subgroup(const Quatd& g, const SubgroupModel& h);

/// Default subgroup family for profiling: tori and normalizers about the
/// atom axes, axes of length-2 products, the coordinate axes, axes fitted
/// by k-means clustering of a pilot walk's rotation axes, and the platonic
/// rotation groups. The pilot is seeded and deterministic.
std::vector<SubgroupModel> default_subgroup_family(const MeasureSpec& mu, bool include_finite = true,
                                                   int cluster_axes = 4,
                                                   std::uint64_t cluster_seed = 0x5eed);

struct DioRow {
  int n;
  double delta;
  double worst_probability;
  std::string worst_subgroup;
};

struct DioProfile {
  std::vector<DioRow> rows;
  double c2_hat = 0;     // fitted decay exponent of the worst probability
  double r2 = 0;
  int fit_points = 0;    // rows with positive probability used in the fit
  double c1 = 0;
  std::uint64_t seed = 0;
};

/// Estimates sup_H mu^{*n}(H^{(e^{-C1 n})}) over the family for each n in
/// [n_min, n_max], from `samples` trajectories recorded at every n.
DioProfile diophantine_profile(const MeasureSpec& mu, double c1, int n_min, int n_max,
                               std::size_t samples, std::uint64_t seed,
                               const std::vector<SubgroupModel>& family, Exec exec = Exec::OpenMP);

/// mu^{*n}(H) with exact membership tests (throws UndecidableMembership on
/// float-only data; HeightOverflow stops the exact product chain).
double subgroup_hit_probability(const MeasureSpec& mu, const SubgroupModel& h, int n,
                                std::size_t samples, std::uint64_t seed,
                                const WalkOptions& opts = {}, Exec exec = Exec::OpenMP);

struct HitFitRow {
  int n;
  double probability;
};

struct HitFit {
  std::vector<HitFitRow> rows;
  double kappa_hat = 0;
  double r2 = 0;
};

HitFit subgroup_hit_profile(const MeasureSpec& mu, const SubgroupModel& h, int n_min, int n_max,
                            std::size_t samples, std::uint64_t seed, const WalkOptions& opts = {},
                            Exec exec = Exec::OpenMP);

struct KestenReport {
  int m = 0;
  int n_max = 0;
  double theory = 0;       // sqrt(2m-1)/m
  double empirical = 0;    // polynomially corrected return-probability ratio
  double gelfand_max = 0;  // max_n p_{2n}^{1/2n}, always <= theory
  std::vector<std::pair<int, double>> p2n;  // (2n, p_{2n}(e))
};

/// Free-group spectral radius baseline via exact dynamic programming of the
/// distance walk (no Monte-Carlo variance). The empirical estimate corrects
/// the ratio p_{2n}/p_{2n-2} by the n^{-3/2} local-limit factor and is
/// clipped at 1 (operator norm bound).
KestenReport kesten_baseline(int m, int n_max);

}  // namespace spectra::walk
