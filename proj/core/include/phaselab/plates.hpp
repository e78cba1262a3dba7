#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phaselab/jones.hpp"

namespace phaselab {

enum class PlateKind { Quarter, Half };

/// One retarder: kind plus the angle between its major axis and the vertical,
/// in radians.
struct PlateSetting {
  PlateKind kind{PlateKind::Quarter};
  double angle{};

  PlateSetting() = default;
  PlateSetting(PlateKind k, double a);
};

inline PlateSetting q_plate(double angle) { return {PlateKind::Quarter, angle}; }
inline PlateSetting h_plate(double angle) { return {PlateKind::Half, angle}; }

/// Ordered retarder sequence in physical traversal order: plates.front() is the
/// first plate the beam passes. Product formulas written on paper run in the
/// opposite order, so builders that transcribe a written product reverse it.
struct PlateTrain {
  std::vector<PlateSetting> plates;
};

/// Quarter-wave plate Q(x) = (I - i M(x))/sqrt(2), with
/// M(x) = cos(2x) sigma1 + sin(2x) sigma2. The sign conventions are fixed so
/// that dQ(x)/dx = sqrt(2) i R(x) holds exactly (see perturbation.hpp).
Mat2 quarter(double x);

/// Half-wave plate H(x) = -i M(x); satisfies dH(x)/dx = 2 i R(x) and H(x)^2 = -I.
Mat2 half(double x);

Mat2 plate_matrix(const PlateSetting &p);

/// Matrix of the whole train: last-traversed plate leftmost. Empty train gives
/// the identity.
Mat2 compose(const PlateTrain &train);

/// Five-plate Q Q H Q Q gadget realizing su2_rotor(axis, s) up to a global phase.
PlateTrain simon_mukunda(const RotationAxis &axis, double s);

/// Three-plate gadget V(gamma) = Q(pi/4) H((gamma-pi)/4) H(pi/4); sends |h> to
/// (|h> - i e^{i gamma} |v>)/sqrt(2) up to a global phase.
PlateTrain v_gadget(double gamma);

/// Gauge angle alpha(s) = (s/2) sin(theta) cos(phi) that cancels the dynamical
/// phase accumulated along the rotor path started at |h>.
double gauge_alpha(const RotationAxis &axis, double s);

/// The seven-plate train (one half-wave plate at the center, six quarter-wave
/// plates) realizing V^dag(gamma) U_n(axis, s) V(gamma) with
/// gamma = phi_shift - alpha(s), up to a global phase.
PlateTrain u_tot_train(const RotationAxis &axis, double s, double phi_shift);

/// Plain-text table (index, kind, angle in degrees), one plate per row in
/// traversal order.
std::string train_table(const PlateTrain &train);

/// Parse the output of train_table back into a train.
PlateTrain parse_train_table(std::string_view text);

} // namespace phaselab
