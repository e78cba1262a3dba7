#pragma once

#include <array>
#include <vector>

#include "phaselab/phase.hpp"

namespace phaselab {

/// Thrown when the gradient of f(theta, phi) = sin^2(theta) cos^2(phi)
/// vanishes at the nominal axis: the linearized system carries no information.
struct GradientZeroError : std::domain_error {
  using std::domain_error::domain_error;
};

/// One measured campaign point entering the axis recovery.
struct RecoveryRow {
  double s{};
  double i_min{};
  double i_max{};
  double sigma{};  // uncertainty of the visibility ratio y
};

struct RecoveryInput {
  std::vector<RecoveryRow> rows;
  RotationAxis nominal{};
};

/// Visibility ratio y = (1 - I_max)/(1 - I_min), clamped to [0, 1].
struct YRatio {
  double value{};
  bool clamped{false};
  bool excluded{false};  // I_min within 1e-6 of 1: denominator degenerates
};

YRatio y_ratio(double i_min, double i_max);

/// f(theta, phi) = sin^2(theta) cos^2(phi) and its gradient row
/// (sin 2theta cos^2 phi, -sin^2 theta sin 2phi).
double visibility_target(const RotationAxis &axis);
std::array<double, 2> visibility_gradient(const RotationAxis &axis);

struct RecoveryResult {
  double delta_theta{};
  double delta_phi{};
  double residual{};  // weighted rms of y - f
  bool converged{false};
  int rows_used{};
  /// Per-iterate (delta_theta, delta_phi, residual), cumulative updates.
  std::vector<std::array<double, 3>> history;
};

/// One linearized weighted-least-squares update. The design matrix has
/// identical rows, so the normal matrix is rank one; the update is the
/// minimal-norm solution, computed with a spectral pseudoinverse.
RecoveryResult lsq_update(const RecoveryInput &input);

/// Rank-one closed form a (sum w b)/(|a|^2 sum w); oracle for the
/// pseudoinverse route.
std::array<double, 2> lsq_update_rank1(const RecoveryInput &input);

/// Re-linearize and update until the residual change drops below tol.
RecoveryResult iterate_recovery(const RecoveryInput &input, int max_iters = 20,
                                double tol = 1e-10);

/// Inaccuracy estimator |s - s(I_min)| with the arccos branch picked by which
/// side of pi the nominal s falls on (s reduced mod 2 pi first).
double delta_s_estimate(double s, double i_min);

/// Minimal-norm pseudoinverse solve of (A^T W A) x = A^T W b for a symmetric
/// 2x2 normal matrix, by analytic eigendecomposition. Exposed for tests.
std::array<double, 2> pinv_solve2(const std::array<double, 4> &normal,
                                  const std::array<double, 2> &rhs,
                                  double rank_tol = 1e-13);

/// Brute-force alternative to the linearized recovery: scan
/// (delta_theta, delta_phi) over a square grid and minimize the squared
/// distance between predicted and measured geometric phases.
struct HandSearchResult {
  double delta_theta{};
  double delta_phi{};
  double cost{};
};

struct MeasuredPhase {
  double s{};
  double phi_g{};
};

HandSearchResult hand_search(const RotationAxis &nominal,
                             std::span<const MeasuredPhase> measured,
                             double halfwidth = deg_to_rad(10.0),
                             double step = deg_to_rad(0.25));

} // namespace phaselab
