#pragma once

#include <array>
#include <cmath>

#include "spectra/core/quadext.hpp"

namespace spectra {

/// Quaternion over an exact scalar. Unit quaternions model SU(2); the pair
/// {q, -q} models one rotation in SO(3).
template <class T>
struct Quat {
  T w{0}, x{0}, y{0}, z{0};

  Quat() = default;
  Quat(T w_, T x_, T y_, T z_) : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  static Quat one() { return Quat(T(1), T(0), T(0), T(0)); }

  friend Quat operator*(const Quat& p, const Quat& q) {
    return Quat(p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
                p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
                p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
                p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w);
  }

  Quat conj() const { return Quat(w, -x, -y, -z); }
  T norm2() const { return w * w + x * x + y * y + z * z; }

  friend bool operator==(const Quat& p, const Quat& q) {
    return p.w == q.w && p.x == q.x && p.y == q.y && p.z == q.z;
  }
  friend bool operator<(const Quat& p, const Quat& q) {
    if (!(p.w == q.w)) return p.w < q.w;
    if (!(p.x == q.x)) return p.x < q.x;
    if (!(p.y == q.y)) return p.y < q.y;
    return p.z < q.z;
  }
};

using QuatQ = Quat<QuadExt>;

/// Double-precision quaternion for the numeric paths.
struct Quatd {
  double w{1}, x{0}, y{0}, z{0};

  Quatd() = default;
  Quatd(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static Quatd one() { return Quatd(1, 0, 0, 0); }

  friend Quatd operator*(const Quatd& p, const Quatd& q) {
    return Quatd(p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
                 p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
                 p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
                 p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w);
  }

  Quatd conj() const { return Quatd(w, -x, -y, -z); }
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  Quatd normalized() const {
    double n = norm();
    return Quatd(w / n, x / n, y / n, z / n);
  }
  double dot(const Quatd& q) const { return w * q.w + x * q.x + y * q.y + z * q.z; }

  /// Canonical representative of {q, -q}: first nonzero component positive.
  Quatd sign_canonical() const {
    const double eps = 0.0;
    if (w > eps || (w == 0 && (x > eps || (x == 0 && (y > eps || (y == 0 && z > 0)))))) return *this;
    return Quatd(-w, -x, -y, -z);
  }

  std::array<double, 3> vec() const { return {x, y, z}; }

  /// Rotation axis (unit) of the corresponding SO(3) element; arbitrary
  /// fixed axis for the identity.
  std::array<double, 3> axis() const {
    double n = std::sqrt(x * x + y * y + z * z);
    if (n < 1e-15) return {0.0, 0.0, 1.0};
    return {x / n, y / n, z / n};
  }

  /// 3x3 rotation matrix of the image in SO(3).
  std::array<std::array<double, 3>, 3> rotation_matrix() const {
    double a = w, b = x, c = y, d = z;
    return {{{a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)},
             {2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)},
             {2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d}}};
  }
};

template <class T>
Quatd to_quatd(const Quat<T>& q) {
  return Quatd(q.w.to_double(), q.x.to_double(), q.y.to_double(), q.z.to_double());
}

inline Quatd axis_angle_quat(double ux, double uy, double uz, double angle) {
  double n = std::sqrt(ux * ux + uy * uy + uz * uz);
  double s = std::sin(angle / 2), c = std::cos(angle / 2);
  return Quatd(c, s * ux / n, s * uy / n, s * uz / n);
}

// Metrics. The SU(2) geodesic angle of g is phi = angle between g and 1 on
// the 3-sphere (eigenvalues e^{+-i phi}); the SO(3) rotation angle of the
// image is theta = 2*phi computed mod the double cover. Both are
// bi-invariant.

inline double su2_angle(const Quatd& g) {
  double v = std::sqrt(g.x * g.x + g.y * g.y + g.z * g.z);
  return std::atan2(v, g.w);
}

inline double so3_angle(const Quatd& g) {
  double v = std::sqrt(g.x * g.x + g.y * g.y + g.z * g.z);
  return 2.0 * std::atan2(v, std::fabs(g.w));
}

inline double dist_su2(const Quatd& g, const Quatd& h) { return su2_angle(g * h.conj()); }

/// Bi-invariant geodesic distance on SO(3): rotation angle of g h^{-1},
/// insensitive to quaternion signs.
inline double dist_so3(const Quatd& g, const Quatd& h) { return so3_angle(g * h.conj()); }

}  // namespace spectra
