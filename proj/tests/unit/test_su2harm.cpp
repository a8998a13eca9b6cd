#include <doctest.h>

#include <cmath>

#include "spectra/core/rng.hpp"
#include "spectra/core/fit.hpp"
#include "spectra/harm/su2harm.hpp"

using namespace spectra;
using namespace spectra::harm;

namespace {

Quatd random_quat(CounterRng& rng) {
  // four gaussians via Box-Muller, normalized
  auto gauss = [&]() {
    double u1 = rng.next_uniform01(), u2 = rng.next_uniform01();
    return std::sqrt(-2 * std::log(u1 + 1e-300)) * std::cos(2 * M_PI * u2);
  };
  return Quatd(gauss(), gauss(), gauss(), gauss()).normalized();
}

double op_dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).operatorNorm();
}

}  // namespace

TEST_SUITE("su2harm") {

TEST_CASE("wigner: trivial and defining representations") {
  CounterRng rng(7, 1);
  for (int t = 0; t < 5; ++t) {
    Quatd g = random_quat(rng);
    WignerBlock b0 = wigner_matrix(g, SpinLevel{0});
    CHECK(b0.m.rows() == 1);
    CHECK(std::abs(b0.m(0, 0) - std::complex<double>(1, 0)) < 1e-14);

    // spin 1/2 is the SU(2) matrix itself
    WignerBlock bh = wigner_matrix(g, SpinLevel{1});
    CHECK(std::abs(bh.m(0, 0) - std::complex<double>(g.w, g.x)) < 1e-13);
    CHECK(std::abs(bh.m(0, 1) - std::complex<double>(g.y, g.z)) < 1e-13);
  }
  // identity element gives identity matrices
  for (int tj : {0, 1, 2, 5, 9}) {
    WignerBlock b = wigner_matrix(Quatd::one(), SpinLevel{tj});
    CHECK(op_dist(b.m, Eigen::MatrixXcd::Identity(tj + 1, tj + 1)) < 1e-12);
  }
}

TEST_CASE("wigner: unitary, multiplicative, character oracle") {
  CounterRng rng(11, 2);
  for (int t = 0; t < 20; ++t) {
    Quatd g = random_quat(rng), h = random_quat(rng);
    SpinLevel j{6};  // j = 3
    auto dg = wigner_matrix(g, j).m, dh = wigner_matrix(h, j).m;
    CHECK(op_dist(dg * dg.adjoint(), Eigen::MatrixXcd::Identity(7, 7)) < 1e-10);
    CHECK(op_dist(wigner_matrix(g * h, j).m, dg * dh) < 1e-10);
    // independent oracle: trace equals sin((2j+1)phi)/sin(phi)
    double phi = su2_angle(g);
    CHECK(std::abs(dg.trace().real() - character(j, phi)) < 1e-9);
    CHECK(std::abs(dg.trace().imag()) < 1e-10);
  }
}

TEST_CASE("fourier coefficient: point mass, haar, symmetry") {
  auto de = walk::delta_e(walk::GroupKind::SU2);
  WignerBlock b = fourier_coefficient(de, SpinLevel{4});
  CHECK(op_dist(b.m, Eigen::MatrixXcd::Identity(5, 5)) < 1e-12);

  // Haar quadrature measure: coefficients at j >= 1/2 vanish
  auto haar = haar_grid_measure(4);
  for (int tj : {1, 2}) {
    WignerBlock hb = fourier_coefficient(haar, SpinLevel{tj});
    CHECK(hb.m.operatorNorm() < 1e-6);
  }

  // symmetric measures give Hermitian coefficients (real spectrum)
  auto mu = walk::free_rational_pair_measure();
  WignerBlock sb = fourier_coefficient(mu, SpinLevel{4});
  CHECK(op_dist(sb.m, sb.m.adjoint()) < 1e-12);

  // SO(3) measures: odd levels vanish under the symmetrized lift
  WignerBlock odd = fourier_coefficient(mu, SpinLevel{3});
  CHECK(odd.m.operatorNorm() == 0.0);

  walk::MeasureSpec bad = walk::delta_e();
  bad.atoms[0].w = 0.5;
  bad.atoms[0].weight_exact = Rat(1, 2);
  CHECK_THROWS_AS(fourier_coefficient(bad, SpinLevel{2}), Error);
}

TEST_CASE("operator norm of coefficients is at most 1") {
  CounterRng rng(13, 3);
  for (int t = 0; t < 5; ++t) {
    std::vector<Quatd> qs;
    std::vector<double> ws;
    double tot = 0;
    for (int k = 0; k < 4; ++k) {
      qs.push_back(random_quat(rng));
      double w = rng.next_uniform01() + 0.1;
      ws.push_back(w);
      tot += w;
    }
    for (auto& w : ws) w /= tot;
    auto mu = walk::measure_from_atoms(qs, ws, false, walk::GroupKind::SU2);
    for (int tj : {1, 3, 8}) {
      CHECK(fourier_coefficient(mu, SpinLevel{tj}).m.operatorNorm() <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("convolution property (mu*nu)^ = mu^ nu^") {
  CounterRng rng(17, 4);
  std::vector<Quatd> qa, qb;
  for (int k = 0; k < 3; ++k) qa.push_back(random_quat(rng));
  for (int k = 0; k < 2; ++k) qb.push_back(random_quat(rng));
  auto mu = walk::measure_from_atoms(qa, {0.5, 0.25, 0.25}, false, walk::GroupKind::SU2);
  auto nu = walk::measure_from_atoms(qb, {0.5, 0.5}, false, walk::GroupKind::SU2);
  // convolution as the product measure pushed through multiplication
  std::vector<Quatd> qc;
  std::vector<double> wc;
  for (std::size_t i = 0; i < qa.size(); ++i)
    for (std::size_t j = 0; j < qb.size(); ++j) {
      qc.push_back(mu.atoms[i].q * nu.atoms[j].q);
      wc.push_back(mu.atoms[i].w * nu.atoms[j].w);
    }
  auto conv = walk::measure_from_atoms(qc, wc, false, walk::GroupKind::SU2);
  for (int tj : {1, 2, 5}) {
    Eigen::MatrixXcd lhs = fourier_coefficient(conv, SpinLevel{tj}).m;
    Eigen::MatrixXcd rhs =
        fourier_coefficient(mu, SpinLevel{tj}).m * fourier_coefficient(nu, SpinLevel{tj}).m;
    CHECK(op_dist(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("parseval: constants, characters, random band-limited spectra") {
  // constant function 1: B_0 = [1]
  FourierSpectrum s1;
  s1.blocks[0] = Eigen::MatrixXcd::Identity(1, 1);
  auto r1 = parseval_check(s1);
  CHECK(r1.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r1.rhs == doctest::Approx(1.0).epsilon(1e-12));

  // character of spin 1/2: B_{1/2} = I/2, squared norm 1
  FourierSpectrum s2;
  s2.blocks[1] = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  auto r2 = parseval_check(s2);
  CHECK(r2.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r2.rhs == doctest::Approx(1.0).epsilon(1e-12));

  // random spectra up to j = 5
  CounterRng rng(19, 5);
  for (int t = 0; t < 5; ++t) {
    FourierSpectrum s;
    for (int tj = 0; tj <= 10; ++tj) {
      Eigen::MatrixXcd b(tj + 1, tj + 1);
      for (int i = 0; i <= tj; ++i)
        for (int k = 0; k <= tj; ++k)
          b(i, k) = std::complex<double>(rng.next_uniform01() - 0.5, rng.next_uniform01() - 0.5);
      s.blocks[tj] = b;
    }
    auto r = parseval_check(s);
    CHECK(std::fabs(r.lhs - r.rhs) / r.rhs < 1e-8);
  }
}

TEST_CASE("smoothing kernel block") {
  // j = 0 block is exactly [1]
  auto r0 = smoothing_spectrum(0.3, SpinLevel{0});
  CHECK(std::abs(r0.block.m(0, 0) - std::complex<double>(1, 0)) < 1e-12);
  CHECK(r0.dist_to_id < 1e-12);

  // quadrature matches the closed form
  for (double delta : {0.5, 0.2, 0.1})
    for (int tj : {1, 2, 5, 10}) {
      auto r = smoothing_spectrum(delta, SpinLevel{tj});
      double cf = smoothing_scalar_closed_form(delta, SpinLevel{tj});
      CHECK(std::abs(r.block.m(0, 0).real() - cf) < 1e-10);
    }

  // and the full 3-D grid agrees at small j
  for (int tj : {1, 2, 3}) {
    auto r3 = smoothing_block_grid3d(0.4, SpinLevel{tj}, 24);
    double cf = smoothing_scalar_closed_form(0.4, SpinLevel{tj});
    CHECK(op_dist(r3.m, cf * Eigen::MatrixXcd::Identity(tj + 1, tj + 1)) < 1e-6);
  }

  // delta -> 0 at fixed j: distance to identity -> 0
  double prev = 1;
  for (double delta : {0.4, 0.2, 0.1, 0.05}) {
    auto r = smoothing_spectrum(delta, SpinLevel{4});
    CHECK(r.dist_to_id < prev);
    prev = r.dist_to_id;
  }
  CHECK(prev < 1e-2);

  CHECK_THROWS_AS(smoothing_spectrum(0.0, SpinLevel{2}), Error);
  CHECK_THROWS_AS(smoothing_spectrum(4.0, SpinLevel{2}), Error);
}

TEST_CASE("smoothing threshold level scales like 1/delta") {
  std::vector<double> inv_delta, level;
  for (double delta : {0.4, 0.2, 0.1}) {
    inv_delta.push_back(1.0 / delta);
    level.push_back(smoothing_half_norm_level(delta, 4000) / 2.0);
  }
  double k = fit_through_origin(inv_delta, level);
  CHECK(k > 0);
  for (std::size_t i = 0; i < level.size(); ++i)
    CHECK(std::fabs(level[i] - k * inv_delta[i]) <= 0.25 * k * inv_delta[i]);
}

TEST_CASE("spectral radius estimates") {
  // point mass at e: every estimate is 1
  auto rep = spectral_radius_estimate(walk::delta_e(walk::GroupKind::SU2), SpinLevel{6}, 8);
  for (const auto& [tj, v] : rep.per_twoj) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.sup == doctest::Approx(1.0).epsilon(1e-12));

  // torus-supported measure: no gap, sup = 1 at every n
  auto torus = walk::torus_supported_measure();
  for (int n : {4, 16, 64}) {
    auto r = spectral_radius_estimate(torus, SpinLevel{8}, n);
    CHECK(r.sup >= 1.0 - 1e-9);
    CHECK(r.sup <= 1.0 + 1e-9);
  }

  // generic pair: sup < 1, stabilizing in n; Gelfand dominates eigenvalues
  auto mu = walk::free_rational_pair_measure();
  auto r32 = spectral_radius_estimate(mu, SpinLevel{10}, 32);
  auto r64 = spectral_radius_estimate(mu, SpinLevel{10}, 64);
  CHECK(r64.sup < 1.0);
  CHECK(std::fabs(r64.sup - r32.sup) < 0.05);
  for (const auto& [tj, v] : r64.per_twoj) {
    auto it = r64.eig_modulus.find(tj);
    if (it != r64.eig_modulus.end()) CHECK(it->second <= v + 1e-9);
  }
}

TEST_CASE("gelfand estimates nearly nonincreasing in n") {
  auto mu = walk::free_rational_pair_measure();
  double prev = 2;
  for (int n : {1, 2, 4, 8, 16, 32}) {
    auto r = spectral_radius_estimate(mu, SpinLevel{4}, n);
    double v = r.per_twoj.at(4);
    CHECK(v <= prev + 1e-6);
    prev = v;
  }
}

TEST_CASE("serial and parallel spectral radius agree bitwise") {
  auto mu = walk::free_rational_pair_measure();
  auto a = spectral_radius_estimate(mu, SpinLevel{8}, 16, Exec::Serial);
  auto b = spectral_radius_estimate(mu, SpinLevel{8}, 16, Exec::OpenMP);
  CHECK(a.sup == b.sup);
  CHECK(a.per_twoj == b.per_twoj);
}

}  // TEST_SUITE
