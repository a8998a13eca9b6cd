#include "spectra/walk/walkdio.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "spectra/core/rng.hpp"

namespace spectra::walk {

namespace {

const char* kModule = "walkdio";

std::vector<double> weight_table(const MeasureSpec& mu) {
  std::vector<double> w;
  for (const auto& a : mu.atoms) w.push_back(a.w);
  return w;
}

std::size_t quat_bits(const QuatQ& q) {
  return std::max(std::max(quadext_bits(q.w), quadext_bits(q.x)),
                  std::max(quadext_bits(q.y), quadext_bits(q.z)));
}

}  // namespace

WalkSample sample_walk(const MeasureSpec& mu, int n, std::size_t samples, std::uint64_t seed,
                       const WalkOptions& opts, Exec exec) {
  if (n < 1) throw Error(kModule, "BadParameter", "need n >= 1");
  if (samples < 1) throw Error(kModule, "BadParameter", "need samples >= 1");
  mu.validate();
  bool exact = opts.keep_exact && mu.all_exact();

  WalkSample out;
  out.endpoints.resize(samples);
  if (exact) out.exact_endpoints.resize(samples);
  WeightedPicker picker(weight_table(mu));
  std::vector<char> overflow(samples, 0);

  parallel_for(
      samples,
      [&](std::size_t i) {
        CounterRng rng(seed, i);
        Quatd q = Quatd::one();
        QuatQ qe = QuatQ::one();
        bool ex = exact;
        for (int step = 0; step < n; ++step) {
          int a = picker.pick(rng.at(step) * 0x1.0p-64);
          q = q * mu.atoms[a].q;
          if (ex) {
            qe = qe * *mu.atoms[a].exact;
            if (quat_bits(qe) > opts.height_bits) {
              ex = false;
              overflow[i] = 1;
            }
          }
        }
        out.endpoints[i] = q;
        if (exact) out.exact_endpoints[i] = ex ? qe : QuatQ::one();
        if (exact && !ex) overflow[i] = 1;
      },
      exec);

  out.height_overflow = std::find(overflow.begin(), overflow.end(), 1) != overflow.end();
  out.exact_available = exact && !out.height_overflow;
  if (exact && out.height_overflow) out.exact_endpoints.clear();
  return out;
}

double distance_to_subgroup(const Quatd& g, const SubgroupModel& h) { return h.distance(g); }

std::vector<SubgroupModel> default_subgroup_family(const MeasureSpec& mu, bool include_finite,
                                                   int cluster_axes, std::uint64_t cluster_seed) {
  std::vector<SubgroupModel> family;
  std::vector<std::array<double, 3>> axes;
  auto add_axis = [&](const std::array<double, 3>& ax) {
    double n = std::sqrt(ax[0] * ax[0] + ax[1] * ax[1] + ax[2] * ax[2]);
    if (n < 1e-12) return;
    std::array<double, 3> u{ax[0] / n, ax[1] / n, ax[2] / n};
    if (u[0] < 0 || (u[0] == 0 && (u[1] < 0 || (u[1] == 0 && u[2] < 0))))
      u = {-u[0], -u[1], -u[2]};
    for (const auto& v : axes) {
      double d = std::fabs(u[0] * v[0] + u[1] * v[1] + u[2] * v[2]);
      if (d > 1 - 1e-9) return;
    }
    axes.push_back(u);
  };
  for (const auto& a : mu.atoms) add_axis(a.q.axis());
  for (const auto& a : mu.atoms)
    for (const auto& b : mu.atoms) add_axis((a.q * b.q).axis());
  add_axis({1, 0, 0});
  add_axis({0, 1, 0});
  add_axis({0, 0, 1});

  if (cluster_axes > 0) {
    // axes of a short pilot walk, clustered by Lloyd iteration on the
    // projective sphere (antipodal axes identified)
    auto pilot = sample_walk(mu, 8, 2000, cluster_seed, {}, Exec::Serial);
    std::vector<std::array<double, 3>> pts;
    for (const auto& q : pilot.endpoints)
      if (so3_angle(q) > 1e-6) pts.push_back(q.axis());
    std::size_t k = std::min<std::size_t>(cluster_axes, pts.size());
    if (k > 0) {
      std::vector<std::array<double, 3>> centers(pts.begin(), pts.begin() + k);
      for (int iter = 0; iter < 20; ++iter) {
        std::vector<std::array<double, 3>> sums(k, {0, 0, 0});
        for (const auto& p : pts) {
          std::size_t best = 0;
          double bd = -1;
          for (std::size_t c = 0; c < k; ++c) {
            double d = std::fabs(p[0] * centers[c][0] + p[1] * centers[c][1] + p[2] * centers[c][2]);
            if (d > bd) {
              bd = d;
              best = c;
            }
          }
          double sgn = (p[0] * centers[best][0] + p[1] * centers[best][1] + p[2] * centers[best][2]) < 0
                           ? -1.0
                           : 1.0;
          for (int i = 0; i < 3; ++i) sums[best][i] += sgn * p[i];
        }
        for (std::size_t c = 0; c < k; ++c) {
          double n = std::sqrt(sums[c][0] * sums[c][0] + sums[c][1] * sums[c][1] +
                               sums[c][2] * sums[c][2]);
          if (n > 1e-12)
            centers[c] = {sums[c][0] / n, sums[c][1] / n, sums[c][2] / n};
        }
      }
      for (const auto& c : centers) add_axis(c);
    }
  }

  int k = 0;
  for (const auto& u : axes) {
    family.push_back(torus_about(u, "torus#" + std::to_string(k)));
    family.push_back(normalizer_about(u, "normalizer#" + std::to_string(k)));
    ++k;
  }
  if (include_finite) {
    family.push_back(tetrahedral_group());
    family.push_back(octahedral_group());
    family.push_back(icosahedral_group());
  }
  return family;
}

DioProfile diophantine_profile(const MeasureSpec& mu, double c1, int n_min, int n_max,
                               std::size_t samples, std::uint64_t seed,
                               const std::vector<SubgroupModel>& family, Exec exec) {
  if (c1 <= 0) throw Error(kModule, "BadParameter", "need C1 > 0");
  if (n_min < 1 || n_max < n_min) throw Error(kModule, "BadParameter", "bad n range");
  mu.validate();
  if (family.empty()) throw Error(kModule, "BadParameter", "empty subgroup family");

  const int rows_n = n_max - n_min + 1;
  const std::size_t nf = family.size();
  WeightedPicker picker(weight_table(mu));

  // Hit thresholds: distance <= delta_n. Torus/normalizer tests reduce to
  // |<., .>| >= cos(delta_n / 2); finite tests compare quaternion dots.
  std::vector<double> cos_half(rows_n);
  for (int r = 0; r < rows_n; ++r) cos_half[r] = std::cos(std::exp(-c1 * (n_min + r)) / 2.0);

  using Counts = std::vector<std::int64_t>;  // rows_n * nf
  Counts total = chunked_reduce<Counts>(
      samples, Counts(rows_n * nf, 0),
      [&](std::size_t begin, std::size_t end) {
        Counts local(rows_n * nf, 0);
        for (std::size_t i = begin; i < end; ++i) {
          CounterRng rng(seed, i);
          Quatd q = Quatd::one();
          for (int step = 1; step <= n_max; ++step) {
            q = q * mu.atoms[picker.pick(rng.at(step - 1) * 0x1.0p-64)].q;
            if (step < n_min) continue;
            int r = step - n_min;
            double ch = cos_half[r];
            double ch2 = ch * ch;
            for (std::size_t f = 0; f < nf; ++f) {
              const SubgroupModel& H = family[f];
              bool hit = false;
              if (H.kind == SubgroupKind::Torus || H.kind == SubgroupKind::Normalizer) {
                double vu = q.x * H.axis[0] + q.y * H.axis[1] + q.z * H.axis[2];
                hit = q.w * q.w + vu * vu >= ch2;
                if (!hit && H.kind == SubgroupKind::Normalizer) {
                  double v2 = q.x * q.x + q.y * q.y + q.z * q.z;
                  hit = v2 - vu * vu >= ch2;
                }
              } else {
                for (const auto& h : H.elements) {
                  double dotv = std::fabs(q.dot(h));
                  if (dotv >= ch) {
                    hit = true;
                    break;
                  }
                }
              }
              if (hit) ++local[static_cast<std::size_t>(r) * nf + f];
            }
          }
        }
        return local;
      },
      [&](Counts acc, const Counts& part) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
        return acc;
      },
      exec);

  DioProfile out;
  out.c1 = c1;
  out.seed = seed;
  std::vector<double> xs, ys;
  for (int r = 0; r < rows_n; ++r) {
    std::int64_t best = -1;
    std::size_t best_f = 0;
    for (std::size_t f = 0; f < nf; ++f) {
      std::int64_t c = total[static_cast<std::size_t>(r) * nf + f];
      if (c > best) {
        best = c;
        best_f = f;
      }
    }
    DioRow row;
    row.n = n_min + r;
    row.delta = std::exp(-c1 * row.n);
    row.worst_probability = static_cast<double>(best) / static_cast<double>(samples);
    row.worst_subgroup = family[best_f].name;
    if (row.worst_probability > 0) {
      xs.push_back(row.n);
      ys.push_back(std::log(row.worst_probability));
    }
    out.rows.push_back(std::move(row));
  }
  LinearFit fit = least_squares(xs, ys);
  out.c2_hat = -fit.slope;
  out.r2 = fit.r2;
  out.fit_points = static_cast<int>(fit.n);
  return out;
}

double subgroup_hit_probability(const MeasureSpec& mu, const SubgroupModel& h, int n,
                                std::size_t samples, std::uint64_t seed, const WalkOptions& opts,
                                Exec exec) {
  if (n == 0) return h.contains_exact(QuatQ::one(), mu.group) ? 1.0 : 0.0;
  if (!mu.all_exact())
    throw Error(kModule, "UndecidableMembership", "exact membership needs exact atom entries");
  h.contains_exact(QuatQ::one(), mu.group);  // subgroup exactness check, outside the parallel region
  WeightedPicker picker(weight_table(mu));

  struct Tally {
    std::int64_t hits = 0;
    std::int64_t overflow = 0;
  };
  Tally total = chunked_reduce<Tally>(
      samples, Tally{},
      [&](std::size_t begin, std::size_t end) {
        Tally local;
        for (std::size_t i = begin; i < end; ++i) {
          CounterRng rng(seed, i);
          QuatQ q = QuatQ::one();
          bool ok = true;
          for (int step = 0; step < n && ok; ++step) {
            q = q * *mu.atoms[picker.pick(rng.at(step) * 0x1.0p-64)].exact;
            if (quat_bits(q) > opts.height_bits) ok = false;
          }
          if (!ok)
            ++local.overflow;
          else if (h.contains_exact(q, mu.group))
            ++local.hits;
        }
        return local;
      },
      [](Tally a, const Tally& b) {
        a.hits += b.hits;
        a.overflow += b.overflow;
        return a;
      },
      exec);
  if (total.overflow > 0)
    throw Error(kModule, "HeightOverflow", "exact product exceeded the bit budget");
  return static_cast<double>(total.hits) / static_cast<double>(samples);
}

HitFit subgroup_hit_profile(const MeasureSpec& mu, const SubgroupModel& h, int n_min, int n_max,
                            std::size_t samples, std::uint64_t seed, const WalkOptions& opts,
                            Exec exec) {
  HitFit out;
  std::vector<double> xs, ys;
  for (int n = n_min; n <= n_max; ++n) {
    double p = subgroup_hit_probability(mu, h, n, samples, seed + n, opts, exec);
    out.rows.push_back({n, p});
    if (p > 0) {
      xs.push_back(n);
      ys.push_back(std::log(p));
    }
  }
  LinearFit fit = least_squares(xs, ys);
  out.kappa_hat = -fit.slope;
  out.r2 = fit.r2;
  return out;
}

KestenReport kesten_baseline(int m, int n_max) {
  if (m < 1 || n_max < 2) throw Error(kModule, "BadParameter", "need m >= 1, n_max >= 2");
  KestenReport rep;
  rep.m = m;
  rep.n_max = n_max;
  rep.theory = std::sqrt(2.0 * m - 1.0) / m;

  // Exact DP for the distance-from-origin walk on the 2m-regular tree:
  // from 0 the walk moves to 1; from d > 0 it moves to d+1 with probability
  // (2m-1)/(2m) and to d-1 with probability 1/(2m).
  int steps = 2 * n_max;
  Rat fwd(2 * m - 1, 2 * m), back(1, 2 * m);
  std::vector<Rat> p(steps + 1, Rat(0));
  p[0] = 1;
  std::vector<Rat> p2n_exact;
  for (int s = 1; s <= steps; ++s) {
    std::vector<Rat> q(steps + 1, Rat(0));
    for (int d = 0; d <= steps; ++d) {
      if (p[d] == 0) continue;
      if (d == 0) {
        q[1] += p[d];
      } else {
        if (d + 1 <= steps) q[d + 1] += p[d] * fwd;
        q[d - 1] += p[d] * back;
      }
    }
    p.swap(q);
    if (s % 2 == 0) p2n_exact.push_back(p[0]);
  }
  for (int k = 0; k < n_max; ++k)
    rep.p2n.emplace_back(2 * (k + 1), to_double(p2n_exact[k]));

  rep.gelfand_max = 0;
  for (const auto& [tn, pv] : rep.p2n)
    rep.gelfand_max = std::max(rep.gelfand_max, std::pow(pv, 1.0 / tn));

  double pn = rep.p2n.back().second;
  double pn1 = rep.p2n[rep.p2n.size() - 2].second;
  double ratio = (pn / pn1) * std::pow(static_cast<double>(n_max) / (n_max - 1), 1.5);
  rep.empirical = std::min(1.0, std::sqrt(ratio));
  return rep;
}

}  // namespace spectra::walk
