#pragma once

#include <cmath>
#include <string>

#include "spectra/core/rational.hpp"

namespace spectra {

/// Exact scalar in Q or a real quadratic field Q(sqrt(d)):  a + b*sqrt(d),
/// d a squarefree integer >= 2, or d = 0 for plain rationals (then b = 0).
/// A value never mixes two distinct fields; arithmetic merges d = 0 with
/// any concrete field.
struct QuadExt {
  Rat a{0};
  Rat b{0};
  long long d{0};

  QuadExt() = default;
  QuadExt(Rat ra) : a(std::move(ra)) {}            // NOLINT(google-explicit-constructor)
  QuadExt(long long v) : a(v) {}                   // NOLINT(google-explicit-constructor)
  QuadExt(Rat ra, Rat rb, long long dd) : a(std::move(ra)), b(std::move(rb)), d(dd) {
    if (b == 0) d = 0;
  }

  bool is_rational() const { return b == 0; }

  static long long merge_field(const QuadExt& x, const QuadExt& y) {
    if (x.d == 0) return y.d;
    if (y.d == 0) return x.d;
    if (x.d != y.d)
      throw Error("core", "FieldMismatch",
                  "mixed quadratic fields sqrt(" + std::to_string(x.d) + ") and sqrt(" +
                      std::to_string(y.d) + ")");
    return x.d;
  }

  QuadExt conjugate() const { return QuadExt(a, -b, d); }

  /// Field norm a^2 - d b^2 (a rational).
  Rat norm() const { return a * a - Rat(d) * b * b; }
  Rat trace() const { return 2 * a; }

  double to_double() const {
    double v = spectra::to_double(a);
    if (b != 0) v += spectra::to_double(b) * std::sqrt(static_cast<double>(d));
    return v;
  }
  /// Value of the other real embedding (sqrt(d) -> -sqrt(d)).
  double to_double_conj() const { return conjugate().to_double(); }

  bool is_zero() const { return a == 0 && b == 0; }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a + y.a, x.b + y.b, merge_field(x, y));
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a - y.a, x.b - y.b, merge_field(x, y));
  }
  friend QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a, -x.b, x.d); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    long long dd = merge_field(x, y);
    return QuadExt(x.a * y.a + Rat(dd) * x.b * y.b, x.a * y.b + x.b * y.a, dd);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    if (y.is_zero()) throw Error("core", "DivideByZero", "division by zero in Q(sqrt d)");
    Rat n = y.norm();
    QuadExt inv(y.a / n, -y.b / n, y.d);
    return x * inv;
  }
  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
  QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    if (x.b == 0 && y.b == 0) return x.a == y.a;
    return x.a == y.a && x.b == y.b && merge_field(x, y) >= 0;
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  /// Ordering for use as container key (field-consistent values only).
  friend bool operator<(const QuadExt& x, const QuadExt& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }

  std::string str() const {
    if (b == 0) return rat_to_string(a);
    return rat_to_string(a) + "+" + rat_to_string(b) + "*sqrt(" + std::to_string(d) + ")";
  }
};

inline std::size_t quadext_bits(const QuadExt& x) {
  std::size_t ba = rat_bits(x.a), bb = rat_bits(x.b);
  return ba > bb ? ba : bb;
}

}  // namespace spectra
