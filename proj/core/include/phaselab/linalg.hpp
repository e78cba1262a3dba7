#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace phaselab {

using Complex = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * pi);
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

inline double deg_to_rad(double d) { return d * pi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / pi; }

/// Two-component complex amplitude pair (h, v). Not necessarily normalized.
struct Vec2 {
  Complex h{};
  Complex v{};
};

inline Vec2 operator+(const Vec2 &a, const Vec2 &b) { return {a.h + b.h, a.v + b.v}; }
inline Vec2 operator-(const Vec2 &a, const Vec2 &b) { return {a.h - b.h, a.v - b.v}; }
inline Vec2 operator*(Complex c, const Vec2 &a) { return {c * a.h, c * a.v}; }

/// Inner product <a|b>, conjugate-linear in the first argument.
inline Complex inner(const Vec2 &a, const Vec2 &b) {
  return std::conj(a.h) * b.h + std::conj(a.v) * b.v;
}

inline double norm(const Vec2 &a) { return std::sqrt(std::norm(a.h) + std::norm(a.v)); }

/// Complex 2x2 matrix, row-major.
struct Mat2 {
  Complex m00{}, m01{}, m10{}, m11{};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 zero() { return {}; }

  Mat2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }
  Complex trace() const { return m00 + m11; }
  Complex det() const { return m00 * m11 - m01 * m10; }
};

inline Mat2 operator+(const Mat2 &a, const Mat2 &b) {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}
inline Mat2 operator-(const Mat2 &a, const Mat2 &b) {
  return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}
inline Mat2 operator*(Complex c, const Mat2 &a) {
  return {c * a.m00, c * a.m01, c * a.m10, c * a.m11};
}
inline Mat2 operator*(const Mat2 &a, const Mat2 &b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}
inline Vec2 operator*(const Mat2 &a, const Vec2 &x) {
  return {a.m00 * x.h + a.m01 * x.v, a.m10 * x.h + a.m11 * x.v};
}

inline double frobenius_norm(const Mat2 &a) {
  return std::sqrt(std::norm(a.m00) + std::norm(a.m01) + std::norm(a.m10) + std::norm(a.m11));
}

/// Distance min over unit-modulus lambda of ||A - lambda B||_F.
/// The minimizer is lambda = tr(B^dag A)/|tr(B^dag A)|; computed directly so that
/// equal-up-to-phase inputs give a residual at machine precision rather than
/// sqrt(eps) cancellation noise.
inline double distance_up_to_phase(const Mat2 &a, const Mat2 &b) {
  const Complex t = (b.adjoint() * a).trace();
  const double at = std::abs(t);
  if (at < 1e-300) {
    // Optimum is degenerate; every phase gives the same distance.
    return std::sqrt(frobenius_norm(a) * frobenius_norm(a) +
                     frobenius_norm(b) * frobenius_norm(b));
  }
  const Complex lambda = t / at;
  return frobenius_norm(a - lambda * b);
}

inline bool equal_up_to_phase(const Mat2 &a, const Mat2 &b, double tol = 1e-10) {
  return distance_up_to_phase(a, b) <= tol;
}

inline bool is_unitary(const Mat2 &u, double tol = 1e-12) {
  const Mat2 g = u.adjoint() * u - Mat2::identity();
  return frobenius_norm(g) <= tol && std::abs(std::abs(u.det()) - 1.0) <= tol;
}

/// Real 3-vector; used for rotation axes and Stokes parameters.
struct Vec3 {
  double x{}, y{}, z{};
};

inline Vec3 operator+(const Vec3 &a, const Vec3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double c, const Vec3 &a) { return {c * a.x, c * a.y, c * a.z}; }
inline double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3 &a, const Vec3 &b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }

} // namespace phaselab
