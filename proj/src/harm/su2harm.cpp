#include "spectra/harm/su2harm.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace spectra::harm {

namespace {

const char* kModule = "su2harm";
using cd = std::complex<double>;

double log_factorial(int n) { return std::lgamma(n + 1.0); }

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

Eigen::Matrix2cd su2_matrix(const Quatd& g) {
  Eigen::Matrix2cd u;
  u(0, 0) = cd(g.w, g.x);
  u(0, 1) = cd(g.y, g.z);
  u(1, 0) = cd(-g.y, g.z);
  u(1, 1) = cd(g.w, -g.x);
  return u;
}

}  // namespace

WignerBlock wigner_matrix(const Quatd& g, SpinLevel j) {
  int tj = j.two_j;
  int n = tj + 1;
  Eigen::Matrix2cd u = su2_matrix(g);
  std::vector<cd> p00(tj + 1), p01(tj + 1), p10(tj + 1), p11(tj + 1);
  p00[0] = p01[0] = p10[0] = p11[0] = 1.0;
  for (int k = 1; k <= tj; ++k) {
    p00[k] = p00[k - 1] * u(0, 0);
    p01[k] = p01[k - 1] * u(0, 1);
    p10[k] = p10[k - 1] * u(1, 0);
    p11[k] = p11[k - 1] * u(1, 1);
  }
  WignerBlock b;
  b.j = j;
  b.m = Eigen::MatrixXcd::Zero(n, n);
  // row r: m' = j - r; column c: m = j - c.
  for (int c = 0; c < n; ++c) {
    int jm = tj - c;   // j + m
    int jmm = c;       // j - m
    for (int r = 0; r < n; ++r) {
      int jmp = tj - r;  // j + m'
      int jmpm = r;      // j - m'
      double logpref = 0.5 * (log_factorial(jmp) + log_factorial(jmpm) - log_factorial(jm) -
                              log_factorial(jmm));
      cd sum = 0.0;
      int plo = std::max(0, jmp - jmm);
      int phi = std::min(jm, jmp);
      for (int p = plo; p <= phi; ++p) {
        int q = jmp - p;
        double logc = log_factorial(jm) - log_factorial(p) - log_factorial(jm - p) +
                      log_factorial(jmm) - log_factorial(q) - log_factorial(jmm - q);
        sum += std::exp(logc + logpref) * p00[p] * p10[jm - p] * p01[q] * p11[jmm - q];
      }
      b.m(r, c) = sum;
    }
  }
  return b;
}

double character(SpinLevel j, double phi) {
  double s = std::sin(phi);
  int n = j.two_j + 1;
  if (std::fabs(s) < 1e-9) return n * std::cos(n * phi) / std::cos(phi);  // limit at 0 and pi
  return std::sin(n * phi) / s;
}

WignerBlock fourier_coefficient(const walk::MeasureSpec& mu, SpinLevel j) {
  mu.validate();
  WignerBlock b;
  b.j = j;
  b.m = Eigen::MatrixXcd::Zero(j.dim(), j.dim());
  if (mu.group == walk::GroupKind::SO3 && j.two_j % 2 == 1) return b;  // symmetrized lift
  for (const auto& a : mu.atoms) b.m += a.w * wigner_matrix(a.q, j).m;
  return b;
}

HaarGrid haar_grid(int n_psi, int n_theta, int n_phi) {
  HaarGrid grid;
  // psi: Gauss-Chebyshev 2nd kind for the sin^2(psi) weight
  std::vector<double> upsi(n_psi), wpsi(n_psi);
  for (int k = 1; k <= n_psi; ++k) {
    double t = k * std::numbers::pi / (n_psi + 1);
    upsi[k - 1] = std::cos(t);
    wpsi[k - 1] = std::numbers::pi / (n_psi + 1) * std::sin(t) * std::sin(t);
  }
  std::vector<double> xth, wth;
  gauss_legendre(n_theta, xth, wth);
  double total_weight = 0;
  for (int a = 0; a < n_psi; ++a)
    for (int b = 0; b < n_theta; ++b)
      for (int c = 0; c < n_phi; ++c) {
        double cpsi = upsi[a], spsi = std::sqrt(1 - cpsi * cpsi);
        double cth = xth[b], sth = std::sqrt(1 - cth * cth);
        double ph = 2 * std::numbers::pi * c / n_phi;
        grid.points.push_back(Quatd(cpsi, spsi * sth * std::cos(ph), spsi * sth * std::sin(ph),
                                    spsi * cth));
        // Haar normalization: (1/2pi^2) sin^2 psi dpsi dOmega
        double w = wpsi[a] * wth[b] * (2 * std::numbers::pi / n_phi) / (2 * std::numbers::pi *
                                                                        std::numbers::pi);
        grid.weights.push_back(w);
        total_weight += w;
      }
  // renormalize the O(1e-15) rounding drift so weights sum to exactly 1
  for (auto& w : grid.weights) w /= total_weight;
  return grid;
}

HaarGrid haar_grid_for(int two_jmax) {
  int deg = 2 * two_jmax;  // polynomial degree of |f|^2 in (a,b,c,d)
  int n1 = deg / 2 + 2;
  return haar_grid(n1, n1, deg + 3);
}

walk::MeasureSpec haar_grid_measure(int two_jmax) {
  HaarGrid g = haar_grid_for(two_jmax);
  return walk::measure_from_atoms(g.points, g.weights, false, walk::GroupKind::SU2);
}

namespace {

double norm2_on_grid(const FourierSpectrum& spectrum, const HaarGrid& grid) {
  double acc = 0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    cd f = 0.0;
    for (const auto& [tj, block] : spectrum.blocks) {
      WignerBlock d = wigner_matrix(grid.points[i], SpinLevel{tj});
      f += static_cast<double>(tj + 1) * (block * d.m.adjoint()).trace();
    }
    acc += grid.weights[i] * std::norm(f);
  }
  return acc;
}

}  // namespace

ParsevalResult parseval_check(const FourierSpectrum& spectrum) {
  ParsevalResult r{0, 0};
  for (const auto& [tj, block] : spectrum.blocks)
    r.rhs += (tj + 1) * block.squaredNorm();
  int tmax = std::max(0, spectrum.jmax_two());
  double a = norm2_on_grid(spectrum, haar_grid_for(tmax));
  double b = norm2_on_grid(spectrum, haar_grid_for(tmax + 3));
  if (std::fabs(a - b) > 1e-9 * std::max(1.0, std::fabs(b)))
    throw Error(kModule, "QuadratureDivergence", "quadrature did not stabilize under refinement");
  r.lhs = b;
  return r;
}

SmoothingResult smoothing_spectrum(double delta, SpinLevel j) {
  if (!(delta > 0) || !(delta < std::numbers::pi))
    throw Error(kModule, "DeltaOutOfRange", "need 0 < delta < pi");
  // Weyl-reduced ball integral: c = int_0^delta chi_j sin^2 / ((2j+1) int_0^delta sin^2)
  int nq = 64 + j.two_j;
  std::vector<double> x, w;
  gauss_legendre(nq, x, w);
  double num = 0, den = 0;
  for (int i = 0; i < nq; ++i) {
    double phi = 0.5 * delta * (x[i] + 1.0);
    double s2 = std::sin(phi) * std::sin(phi);
    num += w[i] * character(j, phi) * s2;
    den += w[i] * s2;
  }
  double c = num / ((j.two_j + 1) * den);
  SmoothingResult r;
  r.block.j = j;
  r.block.m = c * Eigen::MatrixXcd::Identity(j.dim(), j.dim());
  r.dist_to_id = std::fabs(c - 1.0);
  return r;
}

double smoothing_scalar_closed_form(double delta, SpinLevel j) {
  double vball = delta / 2 - std::sin(2 * delta) / 4;
  if (j.two_j == 0) return 1.0;
  double tj = j.two_j;
  double num = 0.5 * (std::sin(tj * delta) / tj - std::sin((tj + 2) * delta) / (tj + 2));
  return num / ((tj + 1) * vball);
}

WignerBlock smoothing_block_grid3d(double delta, SpinLevel j, int level) {
  if (!(delta > 0) || !(delta < std::numbers::pi))
    throw Error(kModule, "DeltaOutOfRange", "need 0 < delta < pi");
  int npsi = level, nth = level, nph = 2 * level + 1;
  std::vector<double> xps, wps, xth, wth;
  gauss_legendre(npsi, xps, wps);
  gauss_legendre(nth, xth, wth);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(j.dim(), j.dim());
  double vol = 0;
  for (int a = 0; a < npsi; ++a) {
    double psi = 0.5 * delta * (xps[a] + 1.0);
    double jac = wps[a] * std::sin(psi) * std::sin(psi);
    for (int b = 0; b < nth; ++b) {
      double cth = xth[b], sth = std::sqrt(1 - cth * cth);
      for (int c = 0; c < nph; ++c) {
        double ph = 2 * std::numbers::pi * c / nph;
        Quatd g(std::cos(psi), std::sin(psi) * sth * std::cos(ph),
                std::sin(psi) * sth * std::sin(ph), std::sin(psi) * cth);
        double wgt = jac * wth[b] / nph;
        acc += wgt * wigner_matrix(g, j).m;
        vol += wgt;
      }
    }
  }
  WignerBlock out;
  out.j = j;
  out.m = acc / vol;
  return out;
}

SpectralRadiusReport spectral_radius_estimate(const walk::MeasureSpec& mu, SpinLevel jmax, int n,
                                              Exec exec) {
  if (n < 1) throw Error(kModule, "BadParameter", "need n >= 1");
  SpectralRadiusReport rep;
  rep.n = n;
  int step = (mu.group == walk::GroupKind::SO3) ? 2 : 1;
  std::vector<int> levels;
  for (int tj = step; tj <= jmax.two_j; tj += step) levels.push_back(tj);
  std::vector<double> gelfand(levels.size()), eigmod(levels.size(), -1.0);

  // Sequential multiplication with per-step norm rescaling; at desk sizes
  // (dim <= 2*jmax+1, n a few hundred) this is exact enough and cheap.
  parallel_for(
      levels.size(),
      [&](std::size_t idx) {
        int tj = levels[idx];
        Eigen::MatrixXcd base = fourier_coefficient(mu, SpinLevel{tj}).m;
        Eigen::MatrixXcd acc = base;
        double logn = 0;
        for (int k = 1; k < n; ++k) {
          double nn = acc.operatorNorm();
          if (nn == 0) {
            logn = -1e300;
            break;
          }
          acc /= nn;
          logn += std::log(nn);
          acc = acc * base;
        }
        double total = logn + std::log(std::max(acc.operatorNorm(), 1e-300));
        gelfand[idx] = std::exp(total / n);
        if (tj + 1 <= 64) {
          Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(base, false);
          eigmod[idx] = es.eigenvalues().cwiseAbs().maxCoeff();
        }
      },
      exec);

  for (std::size_t i = 0; i < levels.size(); ++i) {
    rep.per_twoj[levels[i]] = gelfand[i];
    if (eigmod[i] >= 0) rep.eig_modulus[levels[i]] = eigmod[i];
    rep.sup = std::max(rep.sup, gelfand[i]);
  }
  return rep;
}

int smoothing_half_norm_level(double delta, int two_j_limit) {
  int best = 0;
  for (int tj = 1; tj <= two_j_limit; ++tj) {
    double c = smoothing_scalar_closed_form(delta, SpinLevel{tj});
    if (std::fabs(c - 1.0) <= 0.5)
      best = tj;
    else
      break;
  }
  return best;
}

}  // namespace spectra::harm
