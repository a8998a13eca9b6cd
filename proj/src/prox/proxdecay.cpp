#include "spectra/prox/proxdecay.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>

#include "spectra/core/rng.hpp"
#include "spectra/core/subspace.hpp"

namespace spectra::prox {

namespace {
const char* kModule = "proxdecay";
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long long valuation(const Rat& x, long long p) {
  if (x == 0) throw Error(kModule, "BadParameter", "valuation of zero");
  long long v = 0;
  BigInt n = boost::multiprecision::abs(rat_num(x)), d = rat_den(x);
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

double padic_abs(const Rat& x, long long p) {
  if (!is_prime(p)) throw Error(kModule, "NotPrime", std::to_string(p) + " is not prime");
  if (x == 0) return 0.0;
  return std::pow(static_cast<double>(p), -static_cast<double>(valuation(x, p)));
}

std::string Place::describe() const {
  if (archimedean) return embedding > 0 ? "real embedding" : "conjugate real embedding";
  return "p = " + std::to_string(p);
}

namespace {

std::vector<long long> prime_factors(BigInt v) {
  std::vector<long long> ps;
  for (BigInt q = 2; q * q <= v; ++q) {
    if (v % q == 0) {
      ps.push_back(q.convert_to<long long>());
      while (v % q == 0) v /= q;
    }
  }
  if (v > 1) ps.push_back(v.convert_to<long long>());
  return ps;
}

}  // namespace

Place find_expanding_place(const QuadExt& lambda) {
  if (lambda.is_zero()) throw Error(kModule, "BadParameter", "zero has no expanding place");
  double emb = std::fabs(lambda.to_double());
  double emb_conj = std::fabs(lambda.to_double_conj());
  if (emb > 1.0 + 1e-12) return Place{true, +1, 0, emb};
  if (emb_conj > 1.0 + 1e-12) return Place{true, -1, 0, emb_conj};

  // all archimedean sizes <= 1: look for denominators of norm and trace
  Rat norm = lambda.norm();
  Rat trace = lambda.trace();
  BigInt den = boost::multiprecision::lcm(rat_den(norm), rat_den(trace));
  if (den > 1) {
    long long p = prime_factors(den)[0];
    double val =
        std::max(padic_abs(norm, p), lambda.is_rational() ? padic_abs(lambda.a, p) : 0.0);
    return Place{false, +1, p, std::max(val, static_cast<double>(p))};
  }

  // algebraic integer with every conjugate in the closed unit disk: a real
  // root of unity, i.e. +-1
  if (lambda == QuadExt(Rat(1)) || lambda == QuadExt(Rat(-1)))
    throw Error(kModule, "NoExpandingPlace", "lambda is a root of unity");
  // Remaining possibility in a real quadratic field would violate the
  // Kronecker bound; flag it as a construction issue.
  throw Error(kModule, "NoExpandingPlace",
              "no place with |lambda| > 1 found for " + lambda.str());
}

void ProductEnsemble::validate() const {
  if (matrices.empty()) throw Error(kModule, "InconsistentSizes", "empty ensemble");
  std::size_t n = matrices[0].rows();
  if (n < 1) throw Error(kModule, "InconsistentSizes", "empty matrices");
  for (const auto& m : matrices) {
    if (m.rows() != n || m.cols() != n)
      throw Error(kModule, "InconsistentSizes", "matrices must be square of equal size");
    if (det(m) == 0) throw Error(kModule, "SingularProduct", "ensemble matrix is singular");
  }
  if (weights.size() != matrices.size())
    throw Error(kModule, "InconsistentSizes", "weights/matrices length mismatch");
  Rat s = 0;
  for (const auto& w : weights) {
    if (w <= 0) throw Error(kModule, "BadParameter", "non-positive weight");
    s += w;
  }
  if (s != 1) throw Error(kModule, "BadParameter", "weights must sum to 1");
  if (field == FieldKind::Padic && !is_prime(p))
    throw Error(kModule, "NotPrime", "p-adic ensemble needs a prime p");
}

double padic_top_gap(const Mat<Rat>& m, long long p) {
  // d_k = min valuation over k x k minors; |e_k|_p = p^{-(d_k - d_{k-1})}.
  std::size_t n = m.rows();
  auto min_val_minors = [&](int k) {
    long long best = 0;
    bool first = true;
    auto rows = index_subsets(static_cast<int>(n), k);
    for (const auto& r : rows)
      for (const auto& c : rows) {
        Rat d = minor_det(m, r, c);
        if (d == 0) continue;
        long long v = valuation(d, p);
        if (first || v < best) {
          best = v;
          first = false;
        }
      }
    if (first) throw Error(kModule, "SingularProduct", "vanishing minors up to rank 2");
    return best;
  };
  long long d1 = min_val_minors(1);
  long long d2 = min_val_minors(2);
  // log(|e1|/|e2|) = (v(e2) - v(e1)) log p = (d2 - 2 d1) log p
  return static_cast<double>(d2 - 2 * d1) * std::log(static_cast<double>(p));
}

namespace {

std::vector<double> weight_doubles(const ProductEnsemble& ens) {
  std::vector<double> w;
  for (const auto& r : ens.weights) w.push_back(to_double(r));
  return w;
}

Eigen::MatrixXd to_eigen(const Mat<Rat>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = to_double(m(i, j));
  return e;
}

}  // namespace

ProximalityReport proximality_check(const ProductEnsemble& ens, int n_max, std::size_t samples,
                                    std::uint64_t seed, Exec exec) {
  ens.validate();
  if (ens.dim() < 2) throw Error(kModule, "BadParameter", "need dimension >= 2");
  if (n_max < 2 || samples < 1) throw Error(kModule, "BadParameter", "bad n_max or samples");

  std::vector<int> checkpoints;
  for (int n = 2; n <= n_max; n += std::max(1, n_max / 12)) checkpoints.push_back(n);
  std::size_t nc = checkpoints.size();

  std::vector<std::vector<double>> gaps(nc);  // per checkpoint, per sample
  for (auto& g : gaps) g.resize(samples);

  WeightedPicker picker(weight_doubles(ens));
  std::vector<Eigen::MatrixXd> mats;
  for (const auto& m : ens.matrices) mats.push_back(to_eigen(m));

  if (ens.field == FieldKind::Real) {
    // QR-accumulated top-two growth (continuous rescaling): the running
    // log r_11 - log r_22 sums track log(s1/s2) without underflow on long
    // products.
    parallel_for(
        samples,
        [&](std::size_t i) {
          CounterRng rng(seed, i);
          Eigen::MatrixXd q = Eigen::MatrixXd::Identity(ens.dim(), ens.dim());
          double gap = 0;
          std::size_t ck = 0;
          for (int step = 1; step <= n_max && ck < nc; ++step) {
            Eigen::MatrixXd a = mats[picker.pick(rng.at(step - 1) * 0x1.0p-64)] * q;
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
            Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
            q = qr.householderQ();
            // normalize column signs so R has positive diagonal
            for (std::size_t c = 0; c < ens.dim(); ++c)
              if (r(c, c) < 0) q.col(c) = -q.col(c);
            gap += std::log(std::max(std::fabs(r(0, 0)), 1e-280)) -
                   std::log(std::max(std::fabs(r(1, 1)), 1e-280));
            if (step == checkpoints[ck]) {
              gaps[ck][i] = gap;
              ++ck;
            }
          }
        },
        exec);
  } else {
    parallel_for(
        samples,
        [&](std::size_t i) {
          CounterRng rng(seed, i);
          Mat<Rat> prod = Mat<Rat>::identity(ens.dim());
          std::size_t ck = 0;
          for (int step = 1; step <= n_max && ck < nc; ++step) {
            prod = ens.matrices[picker.pick(rng.at(step - 1) * 0x1.0p-64)] * prod;
            if (step == checkpoints[ck]) {
              gaps[ck][i] = padic_top_gap(prod, ens.p);
              ++ck;
            }
          }
        },
        exec);
  }

  ProximalityReport rep;
  std::vector<double> xs, ys;
  for (std::size_t c = 0; c < nc; ++c) {
    std::vector<double> g = gaps[c];
    std::nth_element(g.begin(), g.begin() + g.size() / 2, g.end());
    double med = g[g.size() / 2];
    rep.median_log_gap.emplace_back(checkpoints[c], med);
    xs.push_back(checkpoints[c]);
    ys.push_back(med);
  }
  LinearFit fit = least_squares(xs, ys);
  rep.gap_ratio = fit.slope;
  rep.r2 = fit.r2;
  rep.proximal = fit.slope > 0 && fit.r2 >= 0.9;
  return rep;
}

namespace {

bool real_hit(const Eigen::VectorXd& x, const Eigen::VectorXd& normal, double epsilon) {
  double nx = x.norm();
  if (nx == 0) return true;
  return std::fabs(x.dot(normal)) / (nx * normal.norm()) <= epsilon;
}

bool padic_hit(const std::vector<Rat>& x, const VecR& normal, long long p, double epsilon) {
  Rat dotv = 0;
  long long min_vx = 0;
  bool any = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dotv += x[i] * normal[i];
    if (x[i] != 0) {
      long long v = valuation(x[i], p);
      if (!any || v < min_vx) {
        min_vx = v;
        any = true;
      }
    }
  }
  if (!any) return true;  // zero vector (cannot occur with invertible inputs)
  long long min_vn = 0;
  bool anyn = false;
  for (const auto& c : normal) {
    if (c != 0) {
      long long v = valuation(c, p);
      if (!anyn || v < min_vn) {
        min_vn = v;
        anyn = true;
      }
    }
  }
  if (dotv == 0) return true;
  double rel = std::pow(static_cast<double>(p),
                        -static_cast<double>(valuation(dotv, p) - min_vx - min_vn));
  return rel <= epsilon;
}

}  // namespace

DecayReport decay_estimate(const ProductEnsemble& ens, const VecR& v, const VecR& w_normal,
                           double epsilon, int n_min, int n_max, std::size_t samples,
                           std::uint64_t seed, Exec exec) {
  ens.validate();
  if (is_zero(w_normal)) throw Error(kModule, "BadHyperplane", "zero normal vector");
  if (w_normal.size() != ens.dim() || v.size() != ens.dim())
    throw Error(kModule, "InconsistentSizes", "vector/hyperplane dimension mismatch");
  if (n_min < 0 || n_max < n_min) throw Error(kModule, "BadParameter", "bad n range");

  const int rows_n = n_max - n_min + 1;
  WeightedPicker picker(weight_doubles(ens));

  std::vector<std::int64_t> hits;
  if (ens.field == FieldKind::Real) {
    std::vector<Eigen::MatrixXd> mats;
    for (const auto& m : ens.matrices) mats.push_back(to_eigen(m));
    Eigen::VectorXd v0(ens.dim()), nrm(ens.dim());
    for (std::size_t i = 0; i < ens.dim(); ++i) {
      v0(i) = to_double(v[i]);
      nrm(i) = to_double(w_normal[i]);
    }
    hits = chunked_reduce<std::vector<std::int64_t>>(
        samples, std::vector<std::int64_t>(rows_n, 0),
        [&](std::size_t b, std::size_t e) {
          std::vector<std::int64_t> local(rows_n, 0);
          for (std::size_t i = b; i < e; ++i) {
            CounterRng rng(seed, i);
            Eigen::VectorXd x = v0;
            if (n_min == 0 && real_hit(x, nrm, epsilon)) ++local[0];
            for (int step = 1; step <= n_max; ++step) {
              x = mats[picker.pick(rng.at(step - 1) * 0x1.0p-64)] * x;
              x /= std::max(x.norm(), 1e-280);
              if (step >= n_min) {
                if (real_hit(x, nrm, epsilon)) ++local[step - n_min];
              }
            }
          }
          return local;
        },
        [](std::vector<std::int64_t> a, const std::vector<std::int64_t>& b2) {
          for (std::size_t i = 0; i < a.size(); ++i) a[i] += b2[i];
          return a;
        },
        exec);
  } else {
    hits = chunked_reduce<std::vector<std::int64_t>>(
        samples, std::vector<std::int64_t>(rows_n, 0),
        [&](std::size_t b, std::size_t e) {
          std::vector<std::int64_t> local(rows_n, 0);
          for (std::size_t i = b; i < e; ++i) {
            CounterRng rng(seed, i);
            std::vector<Rat> x(v.begin(), v.end());
            if (n_min == 0 && padic_hit(x, w_normal, ens.p, epsilon)) ++local[0];
            for (int step = 1; step <= n_max; ++step) {
              x = ens.matrices[picker.pick(rng.at(step - 1) * 0x1.0p-64)].apply(x);
              if (step >= n_min && padic_hit(x, w_normal, ens.p, epsilon)) ++local[step - n_min];
            }
          }
          return local;
        },
        [](std::vector<std::int64_t> a, const std::vector<std::int64_t>& b2) {
          for (std::size_t i = 0; i < a.size(); ++i) a[i] += b2[i];
          return a;
        },
        exec);
  }

  DecayReport rep;
  std::vector<double> xs, ys;
  for (int r = 0; r < rows_n; ++r) {
    double pr = static_cast<double>(hits[r]) / static_cast<double>(samples);
    rep.rows.push_back({n_min + r, pr});
    if (pr > 0 && n_min + r >= 1) {
      xs.push_back(n_min + r);
      ys.push_back(std::log(pr));
    }
  }
  LinearFit fit = least_squares(xs, ys);
  rep.kappa_hat = -fit.slope;
  rep.r2 = fit.r2;
  return rep;
}

std::vector<ExactDecayRow> decay_exact_enumeration(const ProductEnsemble& ens, const VecR& v,
                                                   const VecR& w_normal, double epsilon,
                                                   int n_max) {
  ens.validate();
  if (is_zero(w_normal)) throw Error(kModule, "BadHyperplane", "zero normal vector");

  std::vector<ExactDecayRow> rows;
  std::map<std::vector<Rat>, Rat> cur;  // distribution of g.v
  cur[std::vector<Rat>(v.begin(), v.end())] = 1;
  for (int n = 1; n <= n_max; ++n) {
    std::map<std::vector<Rat>, Rat> next;
    for (const auto& [x, pr] : cur)
      for (std::size_t a = 0; a < ens.matrices.size(); ++a)
        next[ens.matrices[a].apply(x)] += pr * ens.weights[a];
    cur.swap(next);

    ExactDecayRow row;
    row.n = n;
    row.exact_membership = 0;
    double hit_mass = 0;
    for (const auto& [x, pr] : cur) {
      Rat dotv = 0;
      for (std::size_t i = 0; i < x.size(); ++i) dotv += x[i] * w_normal[i];
      if (dotv == 0) row.exact_membership += pr;
      bool hit;
      if (ens.field == FieldKind::Real) {
        double nx = 0, nn = 0, nd = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          nx += to_double(x[i]) * to_double(x[i]);
          nn += to_double(w_normal[i]) * to_double(w_normal[i]);
        }
        nd = to_double(dotv);
        hit = std::fabs(nd) / std::sqrt(std::max(nx * nn, 1e-300)) <= epsilon;
      } else {
        hit = padic_hit(x, w_normal, ens.p, epsilon);
      }
      if (hit) hit_mass += to_double(pr);
    }
    row.hit_probability = hit_mass;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace spectra::prox
