#include "phaselab/selfcheck.hpp"

#include <cstdio>

#include "phaselab/perturbation.hpp"
#include "phaselab/phase.hpp"
#include "phaselab/plates.hpp"
#include "phaselab/rng.hpp"

namespace phaselab {

namespace {

RotationAxis random_axis(Rng &rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  // Uniform over the sphere.
  return {std::acos(1.0 - 2.0 * u01(rng)), (2.0 * u01(rng) - 1.0) * pi};
}

Mat2 v_target(double gamma) {
  const double c1 = std::cos(0.5 * gamma);
  const double s1 = std::sin(0.5 * gamma);
  const Mat2 phase{Complex{c1, -s1}, 0.0, 0.0, Complex{c1, s1}}; // exp(-i gamma sigma1/2)
  const double r = 1.0 / std::sqrt(2.0);
  const Mat2 rot{Complex{r, 0.0}, Complex{0.0, -r}, Complex{0.0, -r},
                 Complex{r, 0.0}}; // exp(-i pi sigma2/4)
  return phase * rot;
}

PlateTrain corrupted(PlateTrain train, double offset) {
  if (!train.plates.empty()) {
    train.plates[train.plates.size() / 2].angle += offset;
  }
  return train;
}

} // namespace

std::vector<CheckResult> run_selfcheck(std::uint64_t seed, double corrupt_offset) {
  std::vector<CheckResult> out;
  Rng rng(derive_seed(seed, 0x5E1F));
  std::uniform_real_distribution<double> angle(-pi, pi);
  std::uniform_real_distribution<double> srange(0.05, 2.0 * pi - 0.05);
  const int trials = 300;

  const auto record = [&](const std::string &name, double residual, double threshold) {
    out.push_back({name, residual, threshold, residual <= threshold});
  };

  {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double a = angle(rng), b = angle(rng);
      worst = std::max(worst,
                       distance_up_to_phase(quarter(a) * half(b), half(b) * quarter(2 * b - a)));
    }
    record("qh-commutation", worst, 1e-10);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double a = angle(rng), b = angle(rng), g = angle(rng);
      worst = std::max(worst,
                       distance_up_to_phase(quarter(a) * half(b) * half(g),
                                            quarter(a + 0.5 * pi) * half(a - b + g - 0.5 * pi)));
    }
    record("qhh-merge", worst, 1e-10);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const RotationAxis ax = random_axis(rng);
      const double s = srange(rng);
      worst = std::max(worst, distance_up_to_phase(compose(simon_mukunda(ax, s)),
                                                   su2_rotor(ax, s)));
    }
    record("simon-mukunda-gadget", worst, 1e-10);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double g = angle(rng);
      worst = std::max(worst, distance_up_to_phase(compose(v_gadget(g)), v_target(g)));
    }
    record("v-gadget", worst, 1e-10);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const RotationAxis ax = random_axis(rng);
      const double s = srange(rng);
      const double phi_shift = angle(rng);
      const double gamma = phi_shift - gauge_alpha(ax, s);
      const Mat2 v = compose(v_gadget(gamma));
      const Mat2 target = v.adjoint() * su2_rotor(ax, s) * v;
      const PlateTrain train = corrupted(u_tot_train(ax, s, phi_shift), corrupt_offset);
      worst = std::max(worst, distance_up_to_phase(compose(train), target));
    }
    record("seven-plate-train", worst, 1e-10);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const RotationAxis ax = random_axis(rng);
      const double s = srange(rng);
      const double phi_shift = angle(rng);
      const PlateTrain train = corrupted(u_tot_train(ax, s, phi_shift), corrupt_offset);
      const double plate = std::norm(compose(train).m00);
      worst = std::max(worst, std::abs(plate - intensity_model(ax, s, phi_shift)));
    }
    record("intensity-closed-form", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const RotationAxis ax = random_axis(rng);
      double s = srange(rng);
      if (distance_to_singularity(s) < 0.05) s += 0.1;
      const int steps = 4000;
      std::vector<JonesVector> path;
      path.reserve(steps + 1);
      for (int k = 0; k <= steps; ++k) {
        path.push_back(apply(su2_rotor(ax, s * k / steps), horizontal()));
      }
      worst = std::max(worst, std::abs(kinematic_integral(path) -
                                       geometric_phase_theory(ax, s)));
    }
    record("kinematic-integral", worst, 1e-6);
  }
  {
    std::vector<double> grid;
    for (int k = 1; k <= 20; ++k) grid.push_back(2.0 * pi * k / 21.0);
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
      worst = std::max(worst, nullified_derivative_check(random_axis(rng), grid));
    }
    record("gauge-nullification", worst, 1e-8);
  }
  {
    std::uniform_real_distribution<double> theta_deg(0.05, pi - 0.05);
    std::uniform_real_distribution<double> phi_pos(-0.5 * pi + 0.05, 0.5 * pi - 0.05);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const RotationAxis ax{theta_deg(rng), phi_pos(rng)};
      double s = srange(rng);
      if (distance_to_singularity(s) < 0.05) s += 0.1;
      const PhaseExtraction ex = extract_phase(intensity_extrema(ax, s), s);
      worst = std::max(worst, std::abs(ex.phi_g - geometric_phase_theory(ax, s)));
    }
    record("extraction-round-trip", worst, 1e-10);
  }
  {
    double worst = 0.0;
    const MisalignmentVector none{};
    for (int t = 0; t < 50; ++t) {
      const RotationAxis ax = random_axis(rng);
      const double s = srange(rng);
      const double phi_shift = angle(rng);
      const PlateTrain train = u_tot_train(ax, s, phi_shift);
      worst = std::max(worst, frobenius_norm(first_order_train(train, none) -
                                             exact_perturbed(train, none)));
    }
    record("perturbation-zero-limit", worst, 1e-12);
  }
  return out;
}

bool all_passed(const std::vector<CheckResult> &results) {
  for (const CheckResult &r : results) {
    if (!r.passed) return false;
  }
  return true;
}

std::string selfcheck_table(const std::vector<CheckResult> &results) {
  std::string out = "check                        residual     threshold    status\n";
  char buf[128];
  for (const CheckResult &r : results) {
    std::snprintf(buf, sizeof(buf), "%-28s %-12.3e %-12.3e %s\n", r.name.c_str(),
                  r.residual, r.threshold, r.passed ? "pass" : "FAIL");
    out += buf;
  }
  return out;
}

} // namespace phaselab
