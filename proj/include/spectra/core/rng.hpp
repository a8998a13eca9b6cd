#pragma once

#include <cstdint>
#include <vector>

namespace spectra {

/// Counter-based generator: value = mix(seed, stream, counter). Chains and
/// sample indices map to streams/counters, so draws are reproducible
/// independently of thread count and evaluation order.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() { return at(counter_++); }

  double next_uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Stateless access: the k-th draw of this (seed, stream).
  std::uint64_t at(std::uint64_t counter) const {
    std::uint64_t x = seed_;
    x = mix(x ^ (stream_ * 0x9e3779b97f4a7c15ULL));
    x = mix(x ^ (counter * 0xbf58476d1ce4e5b9ULL));
    return mix(x);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

/// Cumulative-weight table for drawing atom indices.
class WeightedPicker {
public:
  explicit WeightedPicker(const std::vector<double>& weights) {
    double acc = 0;
    for (double w : weights) {
      acc += w;
      cum_.push_back(acc);
    }
    if (!cum_.empty()) cum_.back() = 1.0;  // guard against rounding at the top
  }

  /// First index i with u01 < cum_[i].
  int pick(double u01) const {
    std::size_t lo = 0, hi = cum_.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (u01 < cum_[mid])
        hi = mid;
      else
        lo = mid + 1;
    }
    return static_cast<int>(lo);
  }

private:
  std::vector<double> cum_;
};

}  // namespace spectra
