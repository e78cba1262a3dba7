#include "phaselab/plates.hpp"

#include <cstdio>
#include <sstream>

namespace phaselab {

namespace {
constexpr Complex kI{0.0, 1.0};

// M(x) = cos(2x) sigma1 + sin(2x) sigma2: the plate axis on the Poincare
// equator at longitude 2x.
Mat2 plate_axis_matrix(double x) {
  const double c = std::cos(2.0 * x);
  const double s = std::sin(2.0 * x);
  return {Complex{c, 0.0}, Complex{s, 0.0}, Complex{s, 0.0}, Complex{-c, 0.0}};
}
} // namespace

PlateSetting::PlateSetting(PlateKind k, double a) : kind(k), angle(a) {
  if (!std::isfinite(a)) {
    throw std::invalid_argument("PlateSetting: angle must be finite");
  }
}

Mat2 quarter(double x) {
  const double r = 1.0 / std::sqrt(2.0);
  return Complex{r, 0.0} * (Mat2::identity() + (-kI) * plate_axis_matrix(x));
}

Mat2 half(double x) { return -kI * plate_axis_matrix(x); }

Mat2 plate_matrix(const PlateSetting &p) {
  return p.kind == PlateKind::Quarter ? quarter(p.angle) : half(p.angle);
}

Mat2 compose(const PlateTrain &train) {
  Mat2 u = Mat2::identity();
  for (const PlateSetting &p : train.plates) {
    u = plate_matrix(p) * u; // each successive plate acts from the left
  }
  if (!is_unitary(u, 1e-12)) {
    throw std::logic_error("compose: train product failed the unitarity check");
  }
  return u;
}

PlateTrain simon_mukunda(const RotationAxis &axis, double s) {
  const double th = axis.theta;
  const double ph = axis.phi;
  // Written product Q((pi+phi)/2) Q((th+phi)/2) H((-pi+th+phi)/2 + s/4)
  // Q((th+phi)/2) Q(phi/2), stored reversed (traversal order).
  return {{
      q_plate(0.5 * ph),
      q_plate(0.5 * (th + ph)),
      h_plate(0.5 * (-pi + th + ph) + 0.25 * s),
      q_plate(0.5 * (th + ph)),
      q_plate(0.5 * (pi + ph)),
  }};
}

PlateTrain v_gadget(double gamma) {
  // Written product Q(pi/4) H((gamma-pi)/4) H(pi/4), stored reversed.
  return {{
      h_plate(0.25 * pi),
      h_plate(0.25 * (gamma - pi)),
      q_plate(0.25 * pi),
  }};
}

double gauge_alpha(const RotationAxis &axis, double s) {
  return 0.5 * s * std::sin(axis.theta) * std::cos(axis.phi);
}

PlateTrain u_tot_train(const RotationAxis &axis, double s, double phi_shift) {
  const double th = axis.theta;
  const double ph = axis.phi;
  const double g = 0.5 * (phi_shift - gauge_alpha(axis, s)); // gamma/2
  // Written product (acts last -> first):
  //   Q(pi/4 - g) Q(-pi - phi/2 - g) Q((pi-th-phi)/2 - g)
  //   H(-(th+phi)/2 - s/4 - g) Q((pi-th-phi)/2 - g) Q((pi-phi)/2 - g)
  //   Q(-pi/4 - g)
  // stored reversed, traversal order.
  return {{
      q_plate(-0.25 * pi - g),
      q_plate(0.5 * (pi - ph) - g),
      q_plate(0.5 * (pi - th - ph) - g),
      h_plate(-0.5 * (th + ph) - 0.25 * s - g),
      q_plate(0.5 * (pi - th - ph) - g),
      q_plate(-pi - 0.5 * ph - g),
      q_plate(0.25 * pi - g),
  }};
}

std::string train_table(const PlateTrain &train) {
  std::string out = "index kind angle_deg\n";
  char buf[64];
  for (size_t i = 0; i < train.plates.size(); ++i) {
    const PlateSetting &p = train.plates[i];
    std::snprintf(buf, sizeof(buf), "%zu %c %.17g\n", i + 1,
                  p.kind == PlateKind::Quarter ? 'Q' : 'H', rad_to_deg(p.angle));
    out += buf;
  }
  return out;
}

PlateTrain parse_train_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  std::getline(in, header);
  PlateTrain train;
  size_t index = 0;
  char kind = 0;
  double deg = 0.0;
  while (in >> index >> kind >> deg) {
    if (kind != 'Q' && kind != 'H') {
      throw std::invalid_argument("parse_train_table: unknown plate kind");
    }
    train.plates.push_back(
        {kind == 'Q' ? PlateKind::Quarter : PlateKind::Half, deg_to_rad(deg)});
  }
  return train;
}

} // namespace phaselab
