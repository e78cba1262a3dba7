#include "phaselab/jones.hpp"

namespace phaselab {

namespace {
constexpr Complex kI{0.0, 1.0};

void check_unitary_builder(const Mat2 &u, const char *what) {
  if (!is_unitary(u, 1e-12)) {
    throw std::logic_error(std::string(what) + ": built matrix failed the unitarity check");
  }
}
} // namespace

JonesVector::JonesVector(Complex h_, Complex v_) {
  const double n = std::sqrt(std::norm(h_) + std::norm(v_));
  if (n < 1e-300) {
    throw std::invalid_argument("JonesVector: cannot normalize a zero vector");
  }
  h = h_ / n;
  v = v_ / n;
}

Mat2 pauli(int index) {
  switch (index) {
  case 1: // diagonal in {|h>, |v>}
    return {1.0, 0.0, 0.0, -1.0};
  case 2:
    return {0.0, 1.0, 1.0, 0.0};
  case 3:
    return {0.0, -kI, kI, 0.0};
  default:
    throw std::invalid_argument("pauli: index must be 1, 2 or 3");
  }
}

Mat2 axis_dot_sigma(const RotationAxis &axis) {
  const Vec3 n = axis.unit();
  // n1 sigma1 + n2 sigma2 + n3 sigma3
  return {Complex{n.x, 0.0}, Complex{n.y, -n.z}, Complex{n.y, n.z}, Complex{-n.x, 0.0}};
}

Mat2 su2_rotor(const RotationAxis &axis, double s) {
  const double c = std::cos(0.5 * s);
  const double sn = std::sin(0.5 * s);
  const Mat2 u = c * Mat2::identity() + (-kI * sn) * axis_dot_sigma(axis);
  check_unitary_builder(u, "su2_rotor");
  return u;
}

double arg_overlap(const JonesVector &a, const JonesVector &b) {
  const Complex ov = inner(a.amplitudes(), b.amplitudes());
  if (std::abs(ov) <= 1e-12) {
    throw OrthogonalStatesError("arg_overlap: states are orthogonal, phase undefined");
  }
  double phase = std::atan2(ov.imag(), ov.real());
  if (phase <= -pi) phase += 2.0 * pi;
  return phase;
}

JonesVector apply(const Mat2 &u, const JonesVector &psi) {
  const Vec2 out = u * psi.amplitudes();
  return {out.h, out.v};
}

Stokes jones_to_stokes(const JonesVector &psi) {
  const Vec2 a = psi.amplitudes();
  Stokes p;
  p.p1 = inner(a, pauli(1) * a).real();
  p.p2 = inner(a, pauli(2) * a).real();
  p.p3 = inner(a, pauli(3) * a).real();
  return p;
}

std::vector<Stokes> poincare_path(const RotationAxis &axis, double s_max, int steps) {
  if (steps < 2) {
    throw std::invalid_argument("poincare_path: steps must be >= 2");
  }
  std::vector<Stokes> out;
  out.reserve(static_cast<size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double s = s_max * static_cast<double>(k) / static_cast<double>(steps - 1);
    out.push_back(jones_to_stokes(apply(su2_rotor(axis, s), horizontal())));
  }
  return out;
}

} // namespace phaselab
