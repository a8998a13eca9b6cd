#include "spectra/scale/multiscale.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace spectra::scale {

namespace {

const char* kModule = "multiscale";

/// Cell hash on the 3-sphere: quantized sign-canonical coordinates with
/// cell side delta/2, so any pair at geodesic distance <= delta lands in
/// adjacent cells of one of the two sign images.
struct So3Grid {
  double cell;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets;

  explicit So3Grid(double delta) : cell(delta / 2.0) {}

  static std::uint64_t pack(int a, int b, int c, int d) {
    auto u = [](int v) { return static_cast<std::uint64_t>(v + 32000) & 0xffff; };
    return u(a) | (u(b) << 16) | (u(c) << 32) | (u(d) << 48);
  }

  std::uint64_t key_of(const Quatd& q) const {
    Quatd s = q.sign_canonical();
    return pack(static_cast<int>(std::floor(s.w / cell)), static_cast<int>(std::floor(s.x / cell)),
                static_cast<int>(std::floor(s.y / cell)), static_cast<int>(std::floor(s.z / cell)));
  }

  void insert(int idx, const Quatd& q) { buckets[key_of(q)].push_back(idx); }

  template <class Fn>
  void for_each_near(const Quatd& q, Fn fn) const {
    for (int sgn : {1, -1}) {
      Quatd s = q.sign_canonical();
      if (sgn < 0) s = Quatd(-s.w, -s.x, -s.y, -s.z);
      int base[4] = {static_cast<int>(std::floor(s.w / cell)), static_cast<int>(std::floor(s.x / cell)),
                     static_cast<int>(std::floor(s.y / cell)),
                     static_cast<int>(std::floor(s.z / cell))};
      for (int da = -1; da <= 1; ++da)
        for (int db = -1; db <= 1; ++db)
          for (int dc = -1; dc <= 1; ++dc)
            for (int dd = -1; dd <= 1; ++dd) {
              auto it = buckets.find(pack(base[0] + da, base[1] + db, base[2] + dc, base[3] + dd));
              if (it == buckets.end()) continue;
              for (int idx : it->second) fn(idx);
            }
    }
  }
};

std::vector<double> density_at_points(const PointCloud& cloud, double delta) {
  So3Grid grid(delta);
  for (std::size_t i = 0; i < cloud.size(); ++i) grid.insert(static_cast<int>(i), cloud.pts[i]);
  std::vector<double> rho(cloud.size(), 0.0);
  double v = ball_volume(delta);
  parallel_for(cloud.size(), [&](std::size_t i) {
    double acc = 0;
    grid.for_each_near(cloud.pts[i], [&](int j) {
      if (dist_so3(cloud.pts[i], cloud.pts[j]) <= delta) acc += cloud.w[j];
    });
    rho[i] = acc / v;
  });
  return rho;
}

/// Ordered pairs (i, j), i != j, within distance delta; exact count.
std::int64_t collision_pairs(const std::vector<Quatd>& pts, double delta, Exec exec) {
  So3Grid grid(delta);
  for (std::size_t i = 0; i < pts.size(); ++i) grid.insert(static_cast<int>(i), pts[i]);
  return chunked_reduce<std::int64_t>(
      pts.size(), 0,
      [&](std::size_t b, std::size_t e) {
        std::int64_t local = 0;
        for (std::size_t i = b; i < e; ++i) {
          grid.for_each_near(pts[i], [&](int j) {
            if (static_cast<std::size_t>(j) != i && dist_so3(pts[i], pts[j]) <= delta) ++local;
          });
        }
        return local;
      },
      [](std::int64_t a, std::int64_t b2) { return a + b2; }, exec);
}

}  // namespace

PointCloud cloud_from_points(std::vector<Quatd> pts) {
  PointCloud c;
  c.w.assign(pts.size(), pts.empty() ? 0.0 : 1.0 / pts.size());
  for (auto& q : pts) c.pts.push_back(q.sign_canonical());
  return c;
}

PointCloud cloud_from_walk(const walk::MeasureSpec& mu, int n, std::size_t samples,
                           std::uint64_t seed, Exec exec) {
  auto s = walk::sample_walk(mu, n, samples, seed, {}, exec);
  return cloud_from_points(std::move(s.endpoints));
}

double ball_volume(double theta) {
  theta = std::min(theta, std::numbers::pi);
  return (theta - std::sin(theta)) / std::numbers::pi;
}

std::vector<int> greedy_net(const PointCloud& a, double delta) {
  So3Grid grid(delta);
  std::vector<int> centers;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool covered = false;
    grid.for_each_near(a.pts[i], [&](int c) {
      if (!covered && dist_so3(a.pts[i], a.pts[c]) <= delta) covered = true;
    });
    if (!covered) {
      grid.insert(static_cast<int>(i), a.pts[i]);
      centers.push_back(static_cast<int>(i));
    }
  }
  return centers;
}

CoveringNumber covering_number(const PointCloud& a, double delta) {
  if (a.size() == 0) throw Error(kModule, "EmptyCloud", "covering number of an empty cloud");
  if (!(delta > 0)) throw Error(kModule, "BadParameter", "need delta > 0");
  CoveringNumber out;
  out.upper = greedy_net(a, delta).size();
  // greedy separated set: strict 2 delta separation lower-bounds N(A, delta)
  So3Grid grid(2 * delta);
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool close = false;
    grid.for_each_near(a.pts[i], [&](int c) {
      if (!close && dist_so3(a.pts[i], a.pts[c]) <= 2 * delta) close = true;
    });
    if (!close) {
      grid.insert(static_cast<int>(i), a.pts[i]);
      ++count;
    }
  }
  out.lower = count;
  return out;
}

DyadicLevels dyadic_decompose(const PointCloud& samples, double delta) {
  if (samples.size() < 8)
    throw Error(kModule, "TooFewSamples", "need at least 8 samples for a dyadic split");
  if (!(delta > 0)) throw Error(kModule, "BadParameter", "need delta > 0");

  auto rho = density_at_points(samples, delta);
  // densities of probability mass at scale delta are bounded by 1/vol(B_delta)
  int i_cap = static_cast<int>(std::ceil(std::log2(1.0 / ball_volume(delta)))) + 1;

  std::vector<int> level_of(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double r = std::max(rho[i], 1e-300);
    level_of[i] = std::clamp(static_cast<int>(std::floor(std::log2(r))), 0, i_cap);
  }

  DyadicLevels out;
  for (int lvl = 0; lvl <= i_cap; ++lvl) {
    PointCloud sub;
    std::vector<int> orig;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (level_of[i] == lvl) {
        sub.pts.push_back(samples.pts[i]);
        sub.w.push_back(samples.w[i]);
        orig.push_back(static_cast<int>(i));
      }
    }
    if (sub.pts.empty()) continue;
    DyadicLevel dl;
    dl.i = lvl;
    dl.population = sub.pts.size();
    for (int c : greedy_net(sub, delta)) dl.centers.push_back(orig[c]);
    out.levels.push_back(std::move(dl));
  }

  // Diagnostics: reconstruction against the density at delta and 4 delta.
  auto rho4 = density_at_points(samples, 4 * delta);
  double lo = 1e300, hi = 0;
  int max_overlap = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double recon = 0;
    for (const auto& lvl : out.levels) {
      int cover = 0;
      for (int c : lvl.centers)
        if (dist_so3(samples.pts[i], samples.pts[c]) <= delta) ++cover;
      if (cover > 0) recon += std::ldexp(1.0, lvl.i);
      max_overlap = std::max(max_overlap, cover);
    }
    if (rho[i] > 0) lo = std::min(lo, recon / rho[i]);
    if (rho4[i] > 0) hi = std::max(hi, recon / rho4[i]);
  }
  out.max_overlap = max_overlap;
  out.sandwich_low = lo;
  out.sandwich_high = hi;
  return out;
}

EnergyReport multiplicative_energy(const PointCloud& a, const PointCloud& b, double delta,
                                   std::size_t budget, Exec exec) {
  if (a.size() == 0 || b.size() == 0)
    throw Error(kModule, "EmptyCloud", "energy of an empty cloud");
  auto net_a = greedy_net(a, delta);
  auto net_b = greedy_net(b, delta);
  if (net_a.size() > budget || net_b.size() > budget)
    throw Error(kModule, "BudgetExceeded",
                "net sizes " + std::to_string(net_a.size()) + " x " + std::to_string(net_b.size()) +
                    " exceed the quadruple budget " + std::to_string(budget));
  std::vector<Quatd> products;
  products.reserve(net_a.size() * net_b.size());
  for (int ia : net_a)
    for (int ib : net_b) products.push_back((a.pts[ia] * b.pts[ib]).sign_canonical());

  EnergyReport rep;
  rep.delta = delta;
  rep.n_a = net_a.size();
  rep.n_b = net_b.size();
  rep.energy = collision_pairs(products, delta, exec) +
               static_cast<std::int64_t>(products.size());  // ordered pairs + diagonal
  double nn = static_cast<double>(rep.n_a) * static_cast<double>(rep.n_b);
  rep.normalized_ratio = static_cast<double>(rep.energy) / std::pow(nn, 1.5);
  rep.bsg_K = std::pow(nn, 1.5) / static_cast<double>(rep.energy);
  return rep;
}

FlatteningResult flattening_ratio(const walk::MeasureSpec& mu, double delta, int n,
                                  std::size_t samples, std::uint64_t seed, Exec exec) {
  if (!(delta > 0) || n < 1) throw Error(kModule, "BadParameter", "need delta > 0, n >= 1");
  FlatteningResult out;
  out.samples = samples;
  out.under_resolved = samples < std::pow(1.0 / delta, 1.5);

  auto single = walk::sample_walk(mu, n, samples, seed, {}, exec);
  auto doubled = walk::sample_walk(mu, 2 * n, samples, seed ^ 0x9e3779b97f4a7c15ULL, {}, exec);

  double v = ball_volume(delta);
  auto l2_of = [&](const std::vector<Quatd>& pts) {
    std::int64_t pairs = collision_pairs(pts, delta, exec);
    double m = static_cast<double>(pts.size());
    return std::sqrt(static_cast<double>(pairs) / (m * (m - 1)) / v);
  };
  out.l2_norm = l2_of(single.endpoints);
  double l2_conv = l2_of(doubled.endpoints);
  out.ratio = (out.l2_norm > 0) ? l2_conv / out.l2_norm : 0.0;
  return out;
}

FlatteningSweep flattening_sweep(const walk::MeasureSpec& mu, int e_min, int e_max, double c,
                                 std::size_t samples, std::uint64_t seed, Exec exec) {
  if (e_min > e_max) throw Error(kModule, "BadParameter", "bad exponent range");
  FlatteningSweep out;
  std::vector<double> xs, ys;
  for (int e = e_min; e <= e_max; ++e) {
    double delta = std::ldexp(1.0, -e);
    int n = static_cast<int>(std::ceil(c * std::log(1.0 / delta)));
    FlatteningSweepRow row;
    row.delta = delta;
    row.n = n;
    row.result = flattening_ratio(mu, delta, n, samples, seed + e, exec);
    if (row.result.ratio > 0) {
      xs.push_back(std::log(delta));
      ys.push_back(std::log(row.result.ratio));
    }
    out.rows.push_back(std::move(row));
  }
  LinearFit fit = least_squares(xs, ys);
  out.epsilon_hat = fit.slope;
  out.r2 = fit.r2;
  return out;
}

SubgroupFit subgroup_fit(const PointCloud& a, double delta, double coverage) {
  if (a.size() == 0) throw Error(kModule, "EmptyCloud", "cannot fit an empty cloud");

  // Candidate axes: weighted principal axis of the sampled rotation axes
  // plus the coordinate axes.
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto ax = a.pts[i].axis();
    double wgt = a.w[i] * std::pow(so3_angle(a.pts[i]), 2);  // weight informative rotations
    Eigen::Vector3d v(ax[0], ax[1], ax[2]);
    cov += wgt * v * v.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  Eigen::Vector3d principal = es.eigenvectors().col(2);

  std::vector<walk::SubgroupModel> candidates;
  candidates.push_back(walk::torus_about({principal[0], principal[1], principal[2]}, "torus-principal"));
  candidates.push_back(
      walk::normalizer_about({principal[0], principal[1], principal[2]}, "normalizer-principal"));
  candidates.push_back(walk::torus_about({1, 0, 0}, "torus-x"));
  candidates.push_back(walk::torus_about({0, 1, 0}, "torus-y"));
  candidates.push_back(walk::torus_about({0, 0, 1}, "torus-z"));
  candidates.push_back(walk::tetrahedral_group());
  candidates.push_back(walk::octahedral_group());
  candidates.push_back(walk::icosahedral_group());
  candidates.push_back(walk::trivial_group());

  SubgroupFit best;
  best.rho = 1e300;
  for (auto& h : candidates) {
    // weighted quantile of distances at the requested coverage
    std::vector<std::pair<double, double>> dw;
    for (std::size_t i = 0; i < a.size(); ++i) dw.emplace_back(h.distance(a.pts[i]), a.w[i]);
    std::sort(dw.begin(), dw.end());
    double acc = 0, rho = dw.back().first;
    for (const auto& [d, wgt] : dw) {
      acc += wgt;
      if (acc >= coverage) {
        rho = d;
        break;
      }
    }
    if (rho < best.rho) {
      best.rho = rho;
      best.h = h;
    }
  }
  best.coverage = coverage;
  best.fit_found = best.rho < 0.1;
  for (double tau : {1.0, 0.5, 0.25})
    best.rho_over_delta_tau.emplace_back(tau, best.rho / std::pow(delta, tau));
  return best;
}

}  // namespace spectra::scale
