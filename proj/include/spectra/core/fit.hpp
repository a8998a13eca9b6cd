#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace spectra {

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  std::size_t n = 0;
};

inline LinearFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  LinearFit f;
  f.n = xs.size();
  if (f.n < 2) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < f.n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  double n = static_cast<double>(f.n);
  double den = n * sxx - sx * sx;
  if (den == 0) return f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0;
  for (std::size_t i = 0; i < f.n; ++i) {
    double e = ys[i] - (f.slope * xs[i] + f.intercept);
    ss_res += e * e;
  }
  f.r2 = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

/// Least squares for y = k*x (line through the origin).
inline double fit_through_origin(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += xs[i] * ys[i];
    sxx += xs[i] * xs[i];
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace spectra
