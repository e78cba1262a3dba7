#pragma once

#include <array>

#include "phaselab/plates.hpp"

namespace phaselab {

/// Per-plate orientation errors for the seven-plate train, radians, indexed in
/// traversal order (entry 3 is the half-wave plate). Values beyond the
/// first-order regime guard are rejected.
struct MisalignmentVector {
  std::array<double, 7> delta{};

  MisalignmentVector() = default;
  explicit MisalignmentVector(const std::array<double, 7> &d, double limit = 0.1);
};

/// The orientation-derivative generator
///   R(x) = [[sin 2x, -cos 2x], [-cos 2x, -sin 2x]];
/// Hermitian, traceless, R^2 = I. dQ(x)/dx = sqrt(2) i R(x), dH(x)/dx = 2 i R(x).
Mat2 r_matrix(double x);

/// First-order expansion of the misaligned train:
///   U + sum_i (product with the i-th factor replaced by its derivative times
///   delta_i). Not exactly unitary; it is a truncation.
Mat2 first_order_train(const PlateTrain &train, const MisalignmentVector &delta);

/// Ground truth: compose the train with each angle shifted by its delta.
Mat2 exact_perturbed(const PlateTrain &train, const MisalignmentVector &delta);

/// Intensity |<h|U_tot|h>|^2 corrected to first order in the plate errors:
///   I + 2 sum_i Re( conj(<h|U|h>) <h|U_i^delta|h> ).
double perturbed_intensity(const RotationAxis &axis, double s, double phi_shift,
                           const MisalignmentVector &delta);

/// dI/d(delta_i) at the given analyzer phase, one entry per plate.
std::array<double, 7> plate_sensitivities(const RotationAxis &axis, double s,
                                          double phi_shift);

} // namespace phaselab
