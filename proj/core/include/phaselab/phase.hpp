#pragma once

#include <span>

#include "phaselab/jones.hpp"

namespace phaselab {

/// Thrown inside the exclusion window around s = pi (mod 2 pi), where the
/// extraction formulas lose their meaning (the fringe minimum reaches zero and
/// the branch offset jumps).
struct SingularityError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Thrown when measured extrema fall outside [0, 1] by more than the clamping
/// tolerance, or when a ratio denominator degenerates.
struct ExtremaDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Default half-width of the exclusion window around s = pi.
inline constexpr double default_singular_window = 1e-6;

/// Distance from s to the nearest odd multiple of pi.
inline double distance_to_singularity(double s) {
  return std::abs(wrap_angle(s - pi));
}

/// Total (Pancharatnam) phase arg<h|U_n(s)|h> with the full atan2 branch.
/// Throws SingularityError when |s - pi| (mod 2 pi) < window.
double pancharatnam_phase(const RotationAxis &axis, double s,
                          double window = default_singular_window);

/// Dynamical phase -(s/2) sin(theta) cos(phi) of the rotor path started at |h>.
double dynamical_phase(const RotationAxis &axis, double s);

/// Geometric phase of the circular rotor path: pancharatnam - dynamical, with
/// the atan2-resolved branch for pi < s < 3 pi.
double geometric_phase_theory(const RotationAxis &axis, double s,
                              double window = default_singular_window);

/// Total, dynamical and geometric phase of one configuration.
struct PhaseBreakdown {
  double total{};
  double dynamical{};
  double geometric{};
  double s{};
  RotationAxis axis{};
};

PhaseBreakdown phase_breakdown(const RotationAxis &axis, double s,
                               double window = default_singular_window);

/// Discrete geometric-phase functional of a sampled path:
///   arg<psi_0|psi_N> - sum_k Im<psi_k|psi_{k+1} - psi_k>.
/// Gauge invariant to second order in the step; needs >= 3 samples and
/// non-orthogonal consecutive states.
double kinematic_integral(std::span<const JonesVector> states);

/// Max over the grid of |Im<psi'|dpsi'/ds>| for the gauge-shifted path
/// psi'(s) = e^{i alpha(s)} U_n(s)|h>, via central finite differences.
double nullified_derivative_check(const RotationAxis &axis,
                                  std::span<const double> s_grid,
                                  double fd_step = 1e-5);

/// Fringe intensity of the seven-plate arrangement as a closed form:
///   cos^2(s/2) + sin^2(s/2) [cos(theta) cos(alpha - phi_shift)
///                            + sin(theta) sin(phi) sin(alpha - phi_shift)]^2.
double intensity_model(const RotationAxis &axis, double s, double phi_shift);

/// Fringe extrema over the analyzer phase.
struct ExtremaPair {
  double i_min{};
  double i_max{};
};

/// Closed-form extrema: I_min = cos^2(s/2),
/// I_max = cos^2(s/2) + sin^2(s/2) [cos^2(theta) + sin^2(theta) sin^2(phi)].
ExtremaPair intensity_extrema(const RotationAxis &axis, double s);

/// Result of extracting the geometric phase from measured extrema. The value
/// is the positive branch (sin(theta) cos(phi) >= 0); sign_ambiguous marks that
/// the data determine the axis only through |sin(theta) cos(phi)|.
struct PhaseExtraction {
  double phi_g{};
  bool clamped{false};
  bool sign_ambiguous{false};
};

/// Geometric phase from fringe extrema at known s. Valid for -pi < s < 3 pi
/// away from the s = pi window; extrema outside [0,1] are clamped up to
/// clamp_tol and flagged, beyond that an ExtremaDomainError is thrown.
PhaseExtraction extract_phase(const ExtremaPair &extrema, double s,
                              double window = default_singular_window,
                              double clamp_tol = 0.02);

} // namespace phaselab
