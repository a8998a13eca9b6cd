// Benchmark comparing the serial reference kernels against the OpenMP
// variants. Both paths use the same fixed chunking, so outputs must match
// bitwise; what differs is wall time.

#include <chrono>
#include <cstdio>
#include <string>

#include "spectra/harm/su2harm.hpp"
#include "spectra/prox/proxdecay.hpp"
#include "spectra/scale/multiscale.hpp"
#include "spectra/walk/walkdio.hpp"

using namespace spectra;

namespace {

template <class Fn>
double time_of(Fn fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-28s %9.3fs %9.3fs %7.2fx   %s\n", name, serial, parallel, serial / parallel,
              identical ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("%-28s %10s %10s %8s   %s\n", "kernel", "serial", "openmp", "speedup", "check");
  std::printf("threads available: %d\n", max_threads());

  {
    auto mu = walk::free_rational_pair_measure();
    auto fam = walk::default_subgroup_family(mu, true);
    walk::DioProfile a, b;
    double ts = time_of([&] { a = walk::diophantine_profile(mu, 0.15, 5, 30, 200000, 7, fam, Exec::Serial); });
    double tp = time_of([&] { b = walk::diophantine_profile(mu, 0.15, 5, 30, 200000, 7, fam, Exec::OpenMP); });
    bool same = true;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
      same &= a.rows[i].worst_probability == b.rows[i].worst_probability;
    row("dio-profile 2e5 chains", ts, tp, same);
  }

  {
    auto mu = walk::free_rational_pair_measure();
    harm::SpectralRadiusReport a, b;
    double ts = time_of([&] { a = harm::spectral_radius_estimate(mu, harm::SpinLevel{40}, 64, Exec::Serial); });
    double tp = time_of([&] { b = harm::spectral_radius_estimate(mu, harm::SpinLevel{40}, 64, Exec::OpenMP); });
    row("harm-gap jmax 20, n 64", ts, tp, a.per_twoj == b.per_twoj && a.sup == b.sup);
  }

  {
    auto mu = walk::free_rational_pair_measure();
    scale::FlatteningResult a, b;
    double ts = time_of([&] { a = scale::flattening_ratio(mu, 1.0 / 128, 12, 60000, 5, Exec::Serial); });
    double tp = time_of([&] { b = scale::flattening_ratio(mu, 1.0 / 128, 12, 60000, 5, Exec::OpenMP); });
    row("flatten collisions 6e4", ts, tp, a.ratio == b.ratio && a.l2_norm == b.l2_norm);
  }

  {
    prox::ProductEnsemble ens;
    ens.matrices = {Mat<Rat>(2, 2), Mat<Rat>(2, 2)};
    ens.matrices[0](0, 0) = 2; ens.matrices[0](0, 1) = 1;
    ens.matrices[0](1, 0) = 1; ens.matrices[0](1, 1) = 1;
    ens.matrices[1](0, 0) = 1; ens.matrices[1](0, 1) = 1;
    ens.matrices[1](1, 0) = 1; ens.matrices[1](1, 1) = 2;
    ens.weights = {Rat(1, 2), Rat(1, 2)};
    VecR v{Rat(1), Rat(0)}, normal{Rat(1), Rat(-3)};
    prox::DecayReport a, b;
    double ts = time_of([&] { a = prox::decay_estimate(ens, v, normal, 0.01, 1, 24, 300000, 3, Exec::Serial); });
    double tp = time_of([&] { b = prox::decay_estimate(ens, v, normal, 0.01, 1, 24, 300000, 3, Exec::OpenMP); });
    bool same = true;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
      same &= a.rows[i].hit_probability == b.rows[i].hit_probability;
    row("decay chains 3e5 x 24", ts, tp, same);
  }

  return 0;
}
