#pragma once

#include <Eigen/Dense>

#include <map>
#include <vector>

#include "spectra/core/parallel.hpp"
#include "spectra/walk/measure.hpp"

namespace spectra::harm {

/// Spin level j as the integer 2j.
struct SpinLevel {
  int two_j = 0;

  int dim() const { return two_j + 1; }
  double j() const { return two_j / 2.0; }
};

struct WignerBlock {
  SpinLevel j;
  Eigen::MatrixXcd m;
};

/// Fourier data of a function/measure: one block per spin level.
struct FourierSpectrum {
  std::map<int, Eigen::MatrixXcd> blocks;  // keyed by 2j

  int jmax_two() const { return blocks.empty() ? -1 : blocks.rbegin()->first; }
};

/// Irreducible representation matrix of a unit quaternion at spin j, on the
/// monomial basis x^{j+m} y^{j-m} / sqrt((j+m)!(j-m)!), m = j..-j. Unitary;
/// multiplicative in g.
WignerBlock wigner_matrix(const Quatd& g, SpinLevel j);

/// Character of spin j at the element with SU(2) angle phi.
double character(SpinLevel j, double phi);

/// sum_i w_i D^j(g_i). For SO(3) measures the odd levels vanish identically
/// (symmetrized lift of the double cover). Throws NotProbability.
WignerBlock fourier_coefficient(const walk::MeasureSpec& mu, SpinLevel j);

/// Deterministic product quadrature on SU(2), exact for band-limited
/// integrands: Gauss-Chebyshev (2nd kind) in the cone angle, Gauss-Legendre
/// in cos(theta), uniform in the azimuth. Weights sum to 1 (Haar).
struct HaarGrid {
  std::vector<Quatd> points;
  std::vector<double> weights;
};
HaarGrid haar_grid(int n_psi, int n_theta, int n_phi);

/// Grid sized to integrate |f|^2 exactly for spectra up to 2j = two_jmax.
HaarGrid haar_grid_for(int two_jmax);

/// Haar quadrature as a float-atom measure (for tests of near-Haar data).
walk::MeasureSpec haar_grid_measure(int two_jmax);

struct ParsevalResult {
  double lhs;  // ||f||_2^2 via quadrature of the reconstructed function
  double rhs;  // sum over j of (2j+1) ||B_j||_HS^2
};

/// Evaluates f(g) = sum_j (2j+1) tr(B_j D^j(g)^*) on a quadrature grid and
/// compares the two sides of the Parseval identity. The quadrature estimate
/// is recomputed on a refined grid; QuadratureDivergence if not stable.
ParsevalResult parseval_check(const FourierSpectrum& spectrum);

struct SmoothingResult {
  WignerBlock block;       // P_delta^(j), a scalar multiple of the identity
  double dist_to_id;       // operator norm distance to the identity
};

/// Fourier block of the normalized indicator of the ball B(1, delta) in the
/// SU(2) geodesic metric. The ball is conjugation-invariant, so the block
/// is scalar; the scalar is the Weyl-reduced ball integral of the
/// character, evaluated by Gauss quadrature. Throws DeltaOutOfRange unless
/// 0 < delta < pi.
SmoothingResult smoothing_spectrum(double delta, SpinLevel j);

/// Same scalar from the antiderivative in closed form (test oracle).
double smoothing_scalar_closed_form(double delta, SpinLevel j);

/// Full 3-D quadrature over the ball, no symmetry reduction (reference
/// implementation for cross-validation at small j).
WignerBlock smoothing_block_grid3d(double delta, SpinLevel j, int level);

struct SpectralRadiusReport {
  std::map<int, double> per_twoj;       // ||mu^(j)^n||^(1/n)
  std::map<int, double> eig_modulus;    // direct spectral radius, dim <= 64
  double sup = 0;
  int n = 0;
};

/// Gelfand estimates ||mu^(j)^n||_op^(1/n) for 1/2 <= j <= jmax (integer j
/// only for SO(3) measures), with the direct eigenvalue modulus alongside
/// for cross-validation. Parallel over levels; deterministic.
SpectralRadiusReport spectral_radius_estimate(const walk::MeasureSpec& mu, SpinLevel jmax, int n,
                                              Exec exec = Exec::OpenMP);

/// Largest 2j with ||P_delta^(j) - Id|| <= 1/2 (scans upward).
int smoothing_half_norm_level(double delta, int two_j_limit);

}  // namespace spectra::harm
