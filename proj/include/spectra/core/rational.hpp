#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "spectra/core/error.hpp"

namespace spectra {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using VecR = std::vector<Rat>;

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }

inline BigInt rat_num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline BigInt rat_den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rat& x) { return rat_den(x) == 1; }

/// Number of bits in the larger of numerator/denominator magnitude.
/// Used for height caps on exact products.
inline std::size_t rat_bits(const Rat& x) {
  BigInt n = boost::multiprecision::abs(rat_num(x));
  BigInt d = rat_den(x);
  std::size_t bn = (n == 0) ? 0 : boost::multiprecision::msb(n) + 1;
  std::size_t bd = (d == 1) ? 0 : boost::multiprecision::msb(d) + 1;
  return bn > bd ? bn : bd;
}

/// Parses "p" or "p/q" with optional sign. Throws on malformed input or q = 0.
inline Rat rat_from_string(const std::string& s) {
  auto bad = [&]() -> Error { return Error("core", "ParseError", "bad rational '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(BigInt(s));
    }
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rat(num, den);
  } catch (const std::exception&) {
    throw bad();
  }
}

inline std::string rat_to_string(const Rat& x) {
  if (is_integer(x)) return rat_num(x).str();
  return rat_num(x).str() + "/" + rat_den(x).str();
}

inline Rat dot(const VecR& a, const VecR& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline VecR vadd(const VecR& a, const VecR& b) {
  VecR r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline VecR vsub(const VecR& a, const VecR& b) {
  VecR r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline VecR vscale(const Rat& c, const VecR& a) {
  VecR r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool is_zero(const VecR& a) {
  for (const auto& x : a) {
    if (x != 0) return false;
  }
  return true;
}

}  // namespace spectra
