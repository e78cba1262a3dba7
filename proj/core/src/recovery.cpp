#include "phaselab/recovery.hpp"

#include <algorithm>
#include <limits>

namespace phaselab {

namespace {

struct AssembledSystem {
  std::array<double, 4> normal{};  // A^T W A, row-major 2x2
  std::array<double, 2> rhs{};     // A^T W b
  std::array<double, 2> row{};     // the common design row
  double sum_w{};
  double sum_wb{};
  double weighted_ssr{};
  int rows_used{};
};

AssembledSystem assemble(const RecoveryInput &input, const RotationAxis &at) {
  AssembledSystem sys;
  sys.row = visibility_gradient(at);
  const double f = visibility_target(at);
  for (const RecoveryRow &r : input.rows) {
    const YRatio y = y_ratio(r.i_min, r.i_max);
    if (y.excluded) continue;
    const double sigma = std::max(r.sigma, 1e-9);
    const double w = 1.0 / (sigma * sigma);
    const double b = y.value - f;
    sys.sum_w += w;
    sys.sum_wb += w * b;
    sys.weighted_ssr += w * b * b;
    ++sys.rows_used;
  }
  sys.normal = {sys.row[0] * sys.row[0] * sys.sum_w, sys.row[0] * sys.row[1] * sys.sum_w,
                sys.row[1] * sys.row[0] * sys.sum_w, sys.row[1] * sys.row[1] * sys.sum_w};
  sys.rhs = {sys.row[0] * sys.sum_wb, sys.row[1] * sys.sum_wb};
  return sys;
}

double weighted_rms(const AssembledSystem &sys) {
  return sys.sum_w > 0.0 ? std::sqrt(sys.weighted_ssr / sys.sum_w) : 0.0;
}

void check_usable(const AssembledSystem &sys) {
  if (sys.rows_used < 1) {
    throw std::invalid_argument("recovery: no usable rows (all excluded)");
  }
  const double a2 = sys.row[0] * sys.row[0] + sys.row[1] * sys.row[1];
  if (std::sqrt(a2) < 1e-10) {
    throw GradientZeroError("recovery: gradient of sin^2(theta) cos^2(phi) vanishes "
                            "at the nominal axis");
  }
}

} // namespace

YRatio y_ratio(double i_min, double i_max) {
  if (i_min > i_max) {
    throw std::invalid_argument("y_ratio: I_min exceeds I_max");
  }
  YRatio out;
  if (i_min > 1.0 - 1e-6) {
    out.excluded = true;
    return out;
  }
  out.value = (1.0 - i_max) / (1.0 - i_min);
  if (out.value < 0.0 || out.value > 1.0) {
    out.value = std::min(1.0, std::max(0.0, out.value));
    out.clamped = true;
  }
  return out;
}

double visibility_target(const RotationAxis &axis) {
  const double st = std::sin(axis.theta);
  const double cp = std::cos(axis.phi);
  return st * st * cp * cp;
}

std::array<double, 2> visibility_gradient(const RotationAxis &axis) {
  const double st = std::sin(axis.theta);
  const double cp = std::cos(axis.phi);
  return {std::sin(2.0 * axis.theta) * cp * cp, -st * st * std::sin(2.0 * axis.phi)};
}

std::array<double, 2> pinv_solve2(const std::array<double, 4> &normal,
                                  const std::array<double, 2> &rhs, double rank_tol) {
  // Analytic eigendecomposition of the symmetric 2x2 [[a, b], [b, c]].
  const double a = normal[0];
  const double b = 0.5 * (normal[1] + normal[2]);
  const double c = normal[3];
  const double tr = a + c;
  const double disc = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
  const double l1 = 0.5 * tr + disc;
  const double l2 = 0.5 * tr - disc;

  // Eigenvector for l1.
  double v1x, v1y;
  if (std::abs(b) > 1e-300) {
    v1x = l1 - c;
    v1y = b;
  } else if (a >= c) {
    v1x = 1.0;
    v1y = 0.0;
  } else {
    v1x = 0.0;
    v1y = 1.0;
  }
  const double n1 = std::sqrt(v1x * v1x + v1y * v1y);
  v1x /= n1;
  v1y /= n1;
  const double v2x = -v1y;
  const double v2y = v1x;

  const double cut = rank_tol * std::max(std::abs(l1), std::abs(l2));
  const double inv1 = std::abs(l1) > cut && l1 != 0.0 ? 1.0 / l1 : 0.0;
  const double inv2 = std::abs(l2) > cut && l2 != 0.0 ? 1.0 / l2 : 0.0;

  const double p1 = v1x * rhs[0] + v1y * rhs[1];
  const double p2 = v2x * rhs[0] + v2y * rhs[1];
  return {inv1 * p1 * v1x + inv2 * p2 * v2x, inv1 * p1 * v1y + inv2 * p2 * v2y};
}

std::array<double, 2> lsq_update_rank1(const RecoveryInput &input) {
  const AssembledSystem sys = assemble(input, input.nominal);
  check_usable(sys);
  const double a2 = sys.row[0] * sys.row[0] + sys.row[1] * sys.row[1];
  const double scale = sys.sum_wb / (a2 * sys.sum_w);
  return {sys.row[0] * scale, sys.row[1] * scale};
}

RecoveryResult lsq_update(const RecoveryInput &input) {
  const AssembledSystem sys = assemble(input, input.nominal);
  check_usable(sys);
  const std::array<double, 2> d = pinv_solve2(sys.normal, sys.rhs);

  RecoveryResult out;
  out.delta_theta = d[0];
  out.delta_phi = d[1];
  out.rows_used = sys.rows_used;
  out.residual = weighted_rms(sys);
  out.history.push_back({d[0], d[1], out.residual});
  return out;
}

RecoveryResult iterate_recovery(const RecoveryInput &input, int max_iters, double tol) {
  RecoveryResult out;
  RotationAxis at = input.nominal;
  double prev_residual = std::numeric_limits<double>::infinity();

  for (int it = 0; it < max_iters; ++it) {
    const AssembledSystem sys = assemble(input, at);
    check_usable(sys);
    const std::array<double, 2> d = pinv_solve2(sys.normal, sys.rhs);

    at.theta += d[0];
    at.phi += d[1];
    out.delta_theta = at.theta - input.nominal.theta;
    out.delta_phi = at.phi - input.nominal.phi;
    out.rows_used = sys.rows_used;
    out.residual = weighted_rms(assemble(input, at));
    out.history.push_back({out.delta_theta, out.delta_phi, out.residual});

    if (std::abs(prev_residual - out.residual) < tol) {
      out.converged = true;
      break;
    }
    prev_residual = out.residual;
  }
  return out;
}

double delta_s_estimate(double s, double i_min) {
  if (i_min < 0.0 || i_min > 1.0) {
    throw std::invalid_argument("delta_s_estimate: I_min must lie in [0, 1]");
  }
  double sr = std::fmod(s, 2.0 * pi);
  if (sr < 0.0) sr += 2.0 * pi;
  const double base = std::acos(std::min(1.0, std::sqrt(i_min)));
  const double s_rec = sr <= pi ? 2.0 * base : 2.0 * pi - 2.0 * base;
  return std::abs(sr - s_rec);
}

HandSearchResult hand_search(const RotationAxis &nominal,
                             std::span<const MeasuredPhase> measured, double halfwidth,
                             double step) {
  if (measured.empty()) {
    throw std::invalid_argument("hand_search: no measured phases");
  }
  HandSearchResult best;
  best.cost = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(std::round(halfwidth / step));
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const RotationAxis probe{nominal.theta + i * step, nominal.phi + j * step};
      double cost = 0.0;
      for (const MeasuredPhase &m : measured) {
        try {
          const double diff = geometric_phase_theory(probe, m.s) - m.phi_g;
          cost += diff * diff;
        } catch (const SingularityError &) {
          // points in the window carry no usable phase; skip
        }
      }
      if (cost < best.cost) {
        best = {probe.theta - nominal.theta, probe.phi - nominal.phi, cost};
      }
    }
  }
  return best;
}

} // namespace phaselab
