#pragma once

#include <vector>

#include "phaselab/linalg.hpp"

namespace phaselab {

/// Thrown when a relative phase is requested between (numerically) orthogonal states.
struct OrthogonalStatesError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Normalized polarization state. The constructor normalizes and rejects
/// near-zero input.
struct JonesVector {
  Complex h{1.0, 0.0};
  Complex v{0.0, 0.0};

  JonesVector() = default;
  JonesVector(Complex h_, Complex v_);

  Vec2 amplitudes() const { return {h, v}; }
};

inline JonesVector horizontal() { return {}; }
inline JonesVector vertical() { return {Complex{0.0}, Complex{1.0}}; }

/// Rotation axis on the Poincare sphere in polar coordinates,
/// n = (sin(theta) cos(phi), sin(theta) sin(phi), cos(theta)).
struct RotationAxis {
  double theta{};
  double phi{};

  Vec3 unit() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
  }
};

/// Stokes parameters (p1, p2, p3); unit length for pure states.
struct Stokes {
  double p1{}, p2{}, p3{};
};

/// Pauli matrices in the optics convention: the matrix diagonal in the
/// {|h>, |v>} basis is sigma_x, and the remaining two follow by relabeling the
/// standard triple cyclically (sigma_z -> sigma_x). index is 1, 2 or 3.
Mat2 pauli(int index);

/// n.sigma for a unit axis, in the optics convention.
Mat2 axis_dot_sigma(const RotationAxis &axis);

/// SU(2) rotor exp(-i s n.sigma / 2) = cos(s/2) I - i sin(s/2) n.sigma.
Mat2 su2_rotor(const RotationAxis &axis, double s);

/// arg<a|b> in (-pi, pi]. Throws OrthogonalStatesError if |<a|b>| <= 1e-12.
double arg_overlap(const JonesVector &a, const JonesVector &b);

/// Apply a matrix to a state and renormalize.
JonesVector apply(const Mat2 &u, const JonesVector &psi);

/// Stokes parameters p_k = <psi|sigma_k|psi>.
Stokes jones_to_stokes(const JonesVector &psi);

/// Sample jones_to_stokes(su2_rotor(axis, s_k)|h>) at `steps` uniform points
/// s_k in [0, s_max], endpoints included. Requires steps >= 2.
std::vector<Stokes> poincare_path(const RotationAxis &axis, double s_max, int steps);

} // namespace phaselab
