#include "phaselab/phase.hpp"

#include "phaselab/plates.hpp"

namespace phaselab {

namespace {
void check_singular_window(double s, double window, const char *what) {
  if (distance_to_singularity(s) < window) {
    throw SingularityError(std::string(what) + ": s inside the exclusion window around pi");
  }
}
} // namespace

double pancharatnam_phase(const RotationAxis &axis, double s, double window) {
  check_singular_window(s, window, "pancharatnam_phase");
  const double n1 = std::sin(axis.theta) * std::cos(axis.phi);
  const double re = std::cos(0.5 * s);
  const double im = -n1 * std::sin(0.5 * s);
  double phase = std::atan2(im, re);
  if (phase <= -pi) phase += 2.0 * pi;
  return phase;
}

double dynamical_phase(const RotationAxis &axis, double s) {
  return -0.5 * s * std::sin(axis.theta) * std::cos(axis.phi);
}

double geometric_phase_theory(const RotationAxis &axis, double s, double window) {
  return pancharatnam_phase(axis, s, window) - dynamical_phase(axis, s);
}

PhaseBreakdown phase_breakdown(const RotationAxis &axis, double s, double window) {
  PhaseBreakdown b;
  b.total = pancharatnam_phase(axis, s, window);
  b.dynamical = dynamical_phase(axis, s);
  b.geometric = b.total - b.dynamical;
  b.s = s;
  b.axis = axis;
  return b;
}

double kinematic_integral(std::span<const JonesVector> states) {
  if (states.size() < 3) {
    throw std::invalid_argument("kinematic_integral: need at least 3 samples");
  }
  double connection = 0.0;
  for (size_t k = 0; k + 1 < states.size(); ++k) {
    const Complex step = inner(states[k].amplitudes(),
                               states[k + 1].amplitudes() - states[k].amplitudes());
    const Complex ov = inner(states[k].amplitudes(), states[k + 1].amplitudes());
    if (std::abs(ov) <= 1e-12) {
      throw OrthogonalStatesError("kinematic_integral: consecutive states orthogonal");
    }
    connection += step.imag();
  }
  return arg_overlap(states.front(), states.back()) - connection;
}

double nullified_derivative_check(const RotationAxis &axis,
                                  std::span<const double> s_grid, double fd_step) {
  const JonesVector h0 = horizontal();
  const auto gauged_state = [&](double s) {
    const Complex phase = std::exp(Complex{0.0, gauge_alpha(axis, s)});
    const Vec2 a = su2_rotor(axis, s) * h0.amplitudes();
    return Vec2{phase * a.h, phase * a.v};
  };
  double worst = 0.0;
  for (double s : s_grid) {
    const Vec2 plus = gauged_state(s + fd_step);
    const Vec2 minus = gauged_state(s - fd_step);
    const Vec2 deriv = (1.0 / (2.0 * fd_step)) * (plus - minus);
    worst = std::max(worst, std::abs(inner(gauged_state(s), deriv).imag()));
  }
  return worst;
}

double intensity_model(const RotationAxis &axis, double s, double phi_shift) {
  const double a = gauge_alpha(axis, s) - phi_shift;
  const double bracket = std::cos(axis.theta) * std::cos(a) +
                         std::sin(axis.theta) * std::sin(axis.phi) * std::sin(a);
  const double c = std::cos(0.5 * s);
  const double sn = std::sin(0.5 * s);
  return c * c + sn * sn * bracket * bracket;
}

ExtremaPair intensity_extrema(const RotationAxis &axis, double s) {
  const double c2 = std::cos(0.5 * s) * std::cos(0.5 * s);
  const double s2 = std::sin(0.5 * s) * std::sin(0.5 * s);
  const double ct = std::cos(axis.theta);
  const double stsp = std::sin(axis.theta) * std::sin(axis.phi);
  return {c2, c2 + s2 * (ct * ct + stsp * stsp)};
}

PhaseExtraction extract_phase(const ExtremaPair &extrema, double s, double window,
                              double clamp_tol) {
  check_singular_window(s, window, "extract_phase");
  if (s <= -pi || s >= 3.0 * pi) {
    throw std::invalid_argument("extract_phase: s must lie in (-pi, 3 pi)");
  }

  PhaseExtraction out;
  double i_min = extrema.i_min;
  double i_max = extrema.i_max;
  if (i_min > i_max) {
    throw ExtremaDomainError("extract_phase: I_min exceeds I_max");
  }
  const auto clamp01 = [&](double &x, const char *name) {
    if (x < 0.0 || x > 1.0) {
      if (x < -clamp_tol || x > 1.0 + clamp_tol) {
        throw ExtremaDomainError(std::string("extract_phase: ") + name +
                                 " outside [0,1] beyond the clamping tolerance");
      }
      x = std::min(1.0, std::max(0.0, x));
      out.clamped = true;
    }
  };
  clamp01(i_min, "I_min");
  clamp01(i_max, "I_max");

  if (1.0 - i_min < 1e-12) {
    throw ExtremaDomainError("extract_phase: I_min ~ 1, visibility ratio undefined "
                             "(s near 0 mod 2 pi)");
  }

  // |sin(theta) cos(phi)| from the visibility ratio.
  double y = (1.0 - i_max) / (1.0 - i_min);
  if (y < 0.0) { // noise pushed I_max above 1 within the clamp
    y = 0.0;
    out.clamped = true;
  }
  const double m = std::sqrt(y);

  // Half-angle u = s/2 reconstructed from the fringe minimum; the known s only
  // selects the arccos branch.
  const double base = std::acos(std::min(1.0, std::sqrt(std::max(0.0, i_min))));
  double u = 0.0;
  const double sa = std::abs(s);
  if (sa < pi) {
    u = base;
  } else if (sa < 2.0 * pi) {
    u = pi - base;
  } else {
    u = pi + base;
  }

  // Overlap reconstructed on the positive branch: cos(u) - i m sin(u). Its arg
  // carries the +-pi offset of the printed extraction formulas automatically.
  double total = std::atan2(-m * std::sin(u), std::cos(u));
  if (total <= -pi) total += 2.0 * pi;
  out.phi_g = total + m * u;
  out.sign_ambiguous = m > 1e-12;
  return out;
}

} // namespace phaselab
