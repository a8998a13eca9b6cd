#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spectra/core/fit.hpp"
#include "spectra/core/parallel.hpp"
#include "spectra/walk/subgroup.hpp"
#include "spectra/walk/walkdio.hpp"

namespace spectra::scale {

/// Weighted points on SO(3) (sign-canonical quaternions).
struct PointCloud {
  std::vector<Quatd> pts;
  std::vector<double> w;  // nonnegative; sums to 1 for measure samples

  std::size_t size() const { return pts.size(); }
};

PointCloud cloud_from_points(std::vector<Quatd> pts);
PointCloud cloud_from_walk(const walk::MeasureSpec& mu, int n, std::size_t samples,
                           std::uint64_t seed, Exec exec = Exec::OpenMP);

/// Haar measure of a metric ball of radius theta in SO(3).
double ball_volume(double theta);

struct CoveringNumber {
  std::size_t upper = 0;  // greedy delta-net size
  std::size_t lower = 0;  // greedy (2 delta)-separated set size
};

CoveringNumber covering_number(const PointCloud& a, double delta);

/// Indices of a greedy delta-net of the cloud (deterministic order).
std::vector<int> greedy_net(const PointCloud& a, double delta);

struct DyadicLevel {
  int i = 0;                     // density level: 2^i <= density < 2^{i+1}
  std::vector<int> centers;      // delta-net of the points at this level
  std::size_t population = 0;    // points assigned to the level
};

struct DyadicLevels {
  std::vector<DyadicLevel> levels;
  int max_overlap = 0;       // worst multiplicity of the level ball systems
  double sandwich_low = 0;   // min over points of recon / density_delta
  double sandwich_high = 0;  // max over points of recon / density_4delta
};

/// Splits delta-scale density into dyadic level sets, each a net of
/// essentially disjoint delta-balls; reports the sandwich constants of the
/// reconstruction against the densities at scales delta and 4*delta.
DyadicLevels dyadic_decompose(const PointCloud& samples, double delta);

struct EnergyReport {
  double delta = 0;
  std::size_t n_a = 0;  // covering numbers of the two clouds (net sizes)
  std::size_t n_b = 0;
  std::int64_t energy = 0;
  double normalized_ratio = 0;  // E / (N_A N_B)^{3/2}
  double bsg_K = 0;             // (N_A N_B)^{3/2} / E
};

/// Multiplicative energy at scale delta with covering-number semantics: the
/// clouds are replaced by greedy delta-nets, and E counts ordered pairs of
/// net products (a b, a' b') at distance <= delta (diagonal included).
/// Throws BudgetExceeded past `budget` net points per cloud.
EnergyReport multiplicative_energy(const PointCloud& a, const PointCloud& b, double delta,
                                   std::size_t budget = 3000, Exec exec = Exec::OpenMP);

struct FlatteningResult {
  double ratio = 0;    // ||(mu^n)_delta * (mu^n)_delta||_2 / ||(mu^n)_delta||_2
  double l2_norm = 0;  // ||(mu^n)_delta||_2
  bool under_resolved = false;
  std::size_t samples = 0;
};

/// Collision-counting estimate of the flattening ratio at one scale.
/// L2 norms of delta-smoothed empirical measures use the indicator kernel:
/// ||f_delta||_2^2 ~ P(d(X, X') <= delta) / vol(B_delta) over independent
/// pairs. UnderResolved (reported, not fatal) when samples < delta^{-3/2}.
FlatteningResult flattening_ratio(const walk::MeasureSpec& mu, double delta, int n,
                                  std::size_t samples, std::uint64_t seed,
                                  Exec exec = Exec::OpenMP);

struct FlatteningSweepRow {
  double delta;
  int n;
  FlatteningResult result;
};

struct FlatteningSweep {
  std::vector<FlatteningSweepRow> rows;
  double epsilon_hat = 0;  // slope of log(ratio) against log(delta)
  double r2 = 0;
};

/// Sweep over delta = 2^{-e} for e in [e_min, e_max], with n = ceil(c
/// log(1/delta)) convolution steps.
FlatteningSweep flattening_sweep(const walk::MeasureSpec& mu, int e_min, int e_max, double c,
                                 std::size_t samples, std::uint64_t seed,
                                 Exec exec = Exec::OpenMP);

struct SubgroupFit {
  walk::SubgroupModel h;
  double rho = 0;        // radius covering `coverage` of the mass
  double coverage = 0;
  bool fit_found = false; // rho < 0.1
  std::vector<std::pair<double, double>> rho_over_delta_tau;  // (tau, rho/delta^tau)
};

/// Best subgroup-neighborhood fit among tori/normalizers about principal
/// and coordinate axes plus the platonic groups and the trivial group.
SubgroupFit subgroup_fit(const PointCloud& a, double delta, double coverage = 0.99);

}  // namespace spectra::scale
