#include "phaselab/scan.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "phaselab/plates.hpp"
#include "phaselab/rng.hpp"

namespace phaselab {

namespace {

std::vector<double> degree_grid(double start, double stop, double step) {
  std::vector<double> out;
  for (double d = start; d <= stop + 1e-9; d += step) {
    out.push_back(deg_to_rad(d));
  }
  return out;
}

std::array<double, 7> draw_plate_deltas(Rng &rng, double spread, PlateErrorModel model) {
  std::array<double, 7> d{};
  if (model == PlateErrorModel::Uniform) {
    std::uniform_real_distribution<double> dist(-spread, spread);
    for (double &x : d) x = dist(rng);
  } else {
    std::normal_distribution<double> dist(0.0, spread);
    for (double &x : d) x = dist(rng);
  }
  return d;
}

double train_intensity(const PlateTrain &train) {
  const Mat2 u = compose(train);
  return std::norm(u.m00); // |<h|U|h>|^2
}

PlateTrain shifted(PlateTrain train, const std::array<double, 7> &delta) {
  for (size_t i = 0; i < train.plates.size() && i < delta.size(); ++i) {
    train.plates[i].angle += delta[i];
  }
  return train;
}

// Solve the 3x3 symmetric system N x = b by the adjugate; returns false if the
// determinant vanishes.
bool solve3(const std::array<double, 9> &n, const std::array<double, 3> &b,
            std::array<double, 3> &x, std::array<double, 9> &inverse) {
  const double det = n[0] * (n[4] * n[8] - n[5] * n[7]) -
                     n[1] * (n[3] * n[8] - n[5] * n[6]) +
                     n[2] * (n[3] * n[7] - n[4] * n[6]);
  if (std::abs(det) < 1e-300) return false;
  const double inv_det = 1.0 / det;
  inverse = {(n[4] * n[8] - n[5] * n[7]) * inv_det, (n[2] * n[7] - n[1] * n[8]) * inv_det,
             (n[1] * n[5] - n[2] * n[4]) * inv_det, (n[5] * n[6] - n[3] * n[8]) * inv_det,
             (n[0] * n[8] - n[2] * n[6]) * inv_det, (n[2] * n[3] - n[0] * n[5]) * inv_det,
             (n[3] * n[7] - n[4] * n[6]) * inv_det, (n[1] * n[6] - n[0] * n[7]) * inv_det,
             (n[0] * n[4] - n[1] * n[3]) * inv_det};
  for (int i = 0; i < 3; ++i) {
    x[i] = inverse[3 * i] * b[0] + inverse[3 * i + 1] * b[1] + inverse[3 * i + 2] * b[2];
  }
  return true;
}

FitResult fit_points(const std::vector<double> &phi, const std::vector<double> &y,
                     const std::vector<double> &sigma) {
  std::vector<double> distinct = phi;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 distinct.end());
  if (distinct.size() < 4) {
    throw UnderdeterminedFitError("fit_sinusoid: need at least 4 distinct phi points");
  }

  const bool weighted =
      std::any_of(sigma.begin(), sigma.end(), [](double s) { return s > 0.0; });
  std::array<double, 9> nrm{};
  std::array<double, 3> rhs{};
  for (size_t j = 0; j < phi.size(); ++j) {
    const double w = weighted ? 1.0 / (sigma[j] * sigma[j]) : 1.0;
    const double x1 = std::cos(2.0 * phi[j]);
    const double x2 = std::sin(2.0 * phi[j]);
    const double row[3] = {1.0, x1, x2};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) nrm[3 * a + b] += w * row[a] * row[b];
      rhs[a] += w * row[a] * y[j];
    }
  }

  std::array<double, 3> c{};
  std::array<double, 9> cov{};
  if (!solve3(nrm, rhs, c, cov)) {
    throw UnderdeterminedFitError("fit_sinusoid: singular normal equations");
  }

  FitResult fit;
  fit.c0 = c[0];
  fit.c1 = c[1];
  fit.c2 = c[2];

  double ssr = 0.0;
  double wsum = 0.0;
  for (size_t j = 0; j < phi.size(); ++j) {
    const double w = weighted ? 1.0 / (sigma[j] * sigma[j]) : 1.0;
    const double model = c[0] + c[1] * std::cos(2.0 * phi[j]) + c[2] * std::sin(2.0 * phi[j]);
    ssr += w * (y[j] - model) * (y[j] - model);
    wsum += w;
  }
  fit.residual = std::sqrt(ssr / wsum);
  if (!weighted && phi.size() > 3) {
    // Ordinary least squares: scale the covariance by the residual variance.
    const double var = ssr / static_cast<double>(phi.size() - 3);
    for (double &x : cov) x *= var;
  }
  fit.covariance = cov;
  return fit;
}

double quadratic_form(const std::array<double, 9> &cov, const double g[3]) {
  double out = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out += g[a] * cov[3 * a + b] * g[b];
  return std::max(0.0, out);
}

} // namespace

std::vector<double> default_phi_grid() { return degree_grid(0.0, 360.0, 40.0); }
std::vector<double> default_s_grid() { return degree_grid(40.0, 320.0, 40.0); }

IntensityScan run_scan(const ScanConfig &config) {
  if (config.repeats < 1) {
    throw std::invalid_argument("run_scan: repeats must be >= 1");
  }
  if (config.signal_counts < 0.0 || config.accidental_counts < 0.0) {
    throw std::invalid_argument("run_scan: counts must be >= 0");
  }
  for (size_t j = 1; j < config.phi_grid.size(); ++j) {
    if (config.phi_grid[j] <= config.phi_grid[j - 1]) {
      throw std::invalid_argument("run_scan: phi grid must be strictly increasing");
    }
  }

  const RotationAxis realized{config.axis.theta + config.delta_theta,
                              config.axis.phi + config.delta_phi};
  Rng rng(derive_seed(config.seed, 0x5C4E));

  std::array<double, 7> systematic{};
  if (config.fixed_plate_delta) {
    systematic = *config.fixed_plate_delta;
  } else if (config.misalignment == MisalignmentMode::Systematic) {
    systematic = draw_plate_deltas(rng, config.plate_spread, config.plate_error_model);
  }

  IntensityScan scan;
  scan.s = config.s;
  scan.phi = config.phi_grid;
  scan.normalization = config.signal_counts > 0.0 ? config.signal_counts : 1.0;
  scan.accidental = config.accidental_counts;
  scan.counts.resize(scan.phi.size());
  scan.mean_intensity.resize(scan.phi.size());
  scan.sigma.resize(scan.phi.size());

  for (size_t j = 0; j < scan.phi.size(); ++j) {
    PlateTrain train = u_tot_train(realized, config.s, scan.phi[j]);
    if (config.misalignment == MisalignmentMode::Random) {
      train = shifted(train, draw_plate_deltas(rng, config.plate_spread,
                                               config.plate_error_model));
    } else if (config.misalignment == MisalignmentMode::Systematic ||
               config.fixed_plate_delta) {
      train = shifted(train, systematic);
    }
    const double i_true = train_intensity(train);
    const double mean_counts = config.signal_counts * i_true + config.accidental_counts;

    auto &row = scan.counts[j];
    row.resize(static_cast<size_t>(config.repeats));
    if (config.noise == NoiseModel::Poisson) {
      std::poisson_distribution<long long> poisson(std::max(mean_counts, 0.0));
      for (double &c : row) {
        c = mean_counts > 0.0 ? static_cast<double>(poisson(rng)) : 0.0;
      }
    } else {
      std::fill(row.begin(), row.end(), mean_counts);
    }

    const double r = static_cast<double>(config.repeats);
    const double mean = std::accumulate(row.begin(), row.end(), 0.0) / r;
    double sq = 0.0;
    for (double c : row) sq += (c - mean) * (c - mean);
    double var = 0.0;
    if (config.repeats > 1) {
      var = config.sigma_estimator == SigmaEstimator::Sample ? sq / (r - 1.0) : sq / r;
    }
    scan.mean_intensity[j] = (mean - scan.accidental) / scan.normalization;
    scan.sigma[j] = std::sqrt(var / r) / scan.normalization;
    if (config.noise == NoiseModel::Poisson) {
      // Counting floor: a handful of identical low counts must not collapse to
      // an infinite fit weight.
      const double floor_sigma =
          std::sqrt(std::max(mean, 1.0) / r) / scan.normalization;
      scan.sigma[j] = std::max(scan.sigma[j], 0.5 * floor_sigma);
    }
  }
  return scan;
}

double FitResult::i_max_sigma() const {
  const double r = std::max(amplitude(), 1e-300);
  const double g[3] = {1.0, c1 / r, c2 / r};
  return std::sqrt(quadratic_form(covariance, g));
}

double FitResult::i_min_sigma() const {
  const double r = std::max(amplitude(), 1e-300);
  const double g[3] = {1.0, -c1 / r, -c2 / r};
  return std::sqrt(quadratic_form(covariance, g));
}

FitResult fit_sinusoid(const IntensityScan &scan) {
  return fit_points(scan.phi, scan.mean_intensity, scan.sigma);
}

PhaseEstimate bootstrap_phase(const IntensityScan &scan, double s, int subsample,
                              int iterations, std::uint64_t seed) {
  const int repeats = scan.counts.empty() ? 0 : static_cast<int>(scan.counts[0].size());
  if (subsample < 1 || subsample > repeats) {
    throw std::invalid_argument("bootstrap_phase: subsample must be in [1, repeats]");
  }
  if (iterations < 1) {
    throw std::invalid_argument("bootstrap_phase: iterations must be >= 1");
  }

  PhaseEstimate est;
  est.iterations = iterations;

  Rng rng(derive_seed(seed, 0xB0057));
  std::vector<double> phases;
  std::vector<double> ys;
  phases.reserve(static_cast<size_t>(iterations));

  std::vector<size_t> idx(static_cast<size_t>(repeats));
  std::vector<double> mean(scan.phi.size()), sig(scan.phi.size());

  for (int it = 0; it < iterations; ++it) {
    for (size_t j = 0; j < scan.phi.size(); ++j) {
      std::iota(idx.begin(), idx.end(), size_t{0});
      // Partial Fisher-Yates: the first `subsample` entries are a uniform
      // draw without replacement.
      for (int k = 0; k < subsample; ++k) {
        std::uniform_int_distribution<size_t> pick(static_cast<size_t>(k), idx.size() - 1);
        std::swap(idx[static_cast<size_t>(k)], idx[pick(rng)]);
      }
      const auto &row = scan.counts[j];
      double m = 0.0;
      for (int k = 0; k < subsample; ++k) m += row[idx[static_cast<size_t>(k)]];
      m /= subsample;
      double sq = 0.0;
      for (int k = 0; k < subsample; ++k) {
        const double c = row[idx[static_cast<size_t>(k)]];
        sq += (c - m) * (c - m);
      }
      const double var = subsample > 1 ? sq / (subsample - 1.0) : 0.0;
      mean[j] = (m - scan.accidental) / scan.normalization;
      sig[j] = std::sqrt(var / subsample) / scan.normalization;
    }
    try {
      const FitResult fit = fit_points(scan.phi, mean, sig);
      const PhaseExtraction ex = extract_phase({fit.i_min(), fit.i_max()}, s);
      phases.push_back(ex.phi_g);
      est.clamped = est.clamped || ex.clamped;
      double i_min = std::min(std::max(fit.i_min(), 0.0), 1.0);
      double i_max = std::min(std::max(fit.i_max(), 0.0), 1.0);
      ys.push_back(1.0 - i_min < 1e-12 ? 0.0 : (1.0 - i_max) / (1.0 - i_min));
    } catch (const SingularityError &) {
      est.singular = true;
      break;
    }
  }

  if (est.singular || phases.empty()) {
    est.singular = true;
    est.mean = std::numeric_limits<double>::quiet_NaN();
    return est;
  }

  est.mean = std::accumulate(phases.begin(), phases.end(), 0.0) /
             static_cast<double>(phases.size());
  double lo = est.mean, hi = est.mean;
  for (double p : phases) {
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  est.err_lo = est.mean - lo;
  est.err_hi = hi - est.mean;

  const double ymean =
      std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double ysq = 0.0;
  for (double y : ys) ysq += (y - ymean) * (y - ymean);
  est.sigma_y = ys.size() > 1 ? std::sqrt(ysq / (static_cast<double>(ys.size()) - 1.0)) : 0.0;
  return est;
}

std::vector<CampaignPoint> run_campaign(const ScanConfig &base,
                                        std::span<const double> s_grid,
                                        int bootstrap_subsample, int bootstrap_iterations) {
  ScanConfig tmpl = base;
  if (base.misalignment == MisalignmentMode::Systematic && !base.fixed_plate_delta) {
    Rng rng(derive_seed(base.seed, 0xDE17A));
    tmpl.fixed_plate_delta =
        draw_plate_deltas(rng, base.plate_spread, base.plate_error_model);
  }

  std::vector<CampaignPoint> out;
  out.reserve(s_grid.size());
  for (size_t i = 0; i < s_grid.size(); ++i) {
    ScanConfig cfg = tmpl;
    cfg.s = s_grid[i];
    cfg.seed = derive_seed(base.seed, 2 * i + 1);
    const IntensityScan scan = run_scan(cfg);

    CampaignPoint point;
    point.s = cfg.s;
    try {
      const FitResult fit = fit_sinusoid(scan);
      point.i_min = fit.i_min();
      point.i_max = fit.i_max();
    } catch (const UnderdeterminedFitError &) {
      point.i_min = point.i_max = std::numeric_limits<double>::quiet_NaN();
    }
    point.estimate = bootstrap_phase(scan, cfg.s, bootstrap_subsample,
                                     bootstrap_iterations, derive_seed(base.seed, 2 * i + 2));
    out.push_back(point);
  }
  return out;
}

G2Result g2_statistic(double n_g, double n_gt, double n_gr, double n_gtr) {
  if (n_gt <= 0.0 || n_gr <= 0.0) {
    throw std::domain_error("g2_statistic: gated counts N_GT and N_GR must be positive");
  }
  G2Result out;
  out.value = n_gtr * n_g / (n_gt * n_gr);
  out.nonclassical = out.value < 1.0;
  return out;
}

} // namespace phaselab
