#include "phaselab/perturbation.hpp"

namespace phaselab {

namespace {
constexpr Complex kI{0.0, 1.0};

void check_layout(const PlateTrain &train) {
  if (train.plates.size() != 7) {
    throw std::invalid_argument("perturbation: train must have exactly 7 plates");
  }
  for (size_t i = 0; i < 7; ++i) {
    const PlateKind want = i == 3 ? PlateKind::Half : PlateKind::Quarter;
    if (train.plates[i].kind != want) {
      throw std::invalid_argument(
          "perturbation: train must be the Q Q Q H Q Q Q arrangement");
    }
  }
}

Mat2 plate_derivative(const PlateSetting &p) {
  const double scale = p.kind == PlateKind::Quarter ? std::sqrt(2.0) : 2.0;
  return (scale * kI) * r_matrix(p.angle);
}

// Product over the train with the k-th factor replaced.
Mat2 product_with_replacement(const PlateTrain &train, size_t k, const Mat2 &factor) {
  Mat2 u = Mat2::identity();
  for (size_t i = 0; i < train.plates.size(); ++i) {
    u = (i == k ? factor : plate_matrix(train.plates[i])) * u;
  }
  return u;
}
} // namespace

MisalignmentVector::MisalignmentVector(const std::array<double, 7> &d, double limit)
    : delta(d) {
  for (double x : delta) {
    if (!(std::abs(x) <= limit)) {
      throw std::out_of_range(
          "MisalignmentVector: |delta| exceeds the first-order regime guard");
    }
  }
}

Mat2 r_matrix(double x) {
  const double s = std::sin(2.0 * x);
  const double c = std::cos(2.0 * x);
  return {Complex{s, 0.0}, Complex{-c, 0.0}, Complex{-c, 0.0}, Complex{-s, 0.0}};
}

Mat2 first_order_train(const PlateTrain &train, const MisalignmentVector &delta) {
  check_layout(train);
  Mat2 u = compose(train);
  for (size_t i = 0; i < 7; ++i) {
    if (delta.delta[i] == 0.0) continue;
    const Mat2 d = Complex{delta.delta[i], 0.0} * plate_derivative(train.plates[i]);
    u = u + product_with_replacement(train, i, d);
  }
  return u;
}

Mat2 exact_perturbed(const PlateTrain &train, const MisalignmentVector &delta) {
  check_layout(train);
  PlateTrain moved = train;
  for (size_t i = 0; i < 7; ++i) {
    moved.plates[i].angle += delta.delta[i];
  }
  return compose(moved);
}

double perturbed_intensity(const RotationAxis &axis, double s, double phi_shift,
                           const MisalignmentVector &delta) {
  const PlateTrain train = u_tot_train(axis, s, phi_shift);
  const Complex a = compose(train).m00;
  double intensity = std::norm(a);
  for (size_t i = 0; i < 7; ++i) {
    if (delta.delta[i] == 0.0) continue;
    const Mat2 d = Complex{delta.delta[i], 0.0} * plate_derivative(train.plates[i]);
    intensity += 2.0 * std::real(std::conj(a) * product_with_replacement(train, i, d).m00);
  }
  return intensity;
}

std::array<double, 7> plate_sensitivities(const RotationAxis &axis, double s,
                                          double phi_shift) {
  const PlateTrain train = u_tot_train(axis, s, phi_shift);
  const Complex a = compose(train).m00;
  std::array<double, 7> out{};
  for (size_t i = 0; i < 7; ++i) {
    const Mat2 d = plate_derivative(train.plates[i]);
    out[i] = 2.0 * std::real(std::conj(a) * product_with_replacement(train, i, d).m00);
  }
  return out;
}

} // namespace phaselab
