#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "phaselab/phase.hpp"

namespace phaselab {

enum class NoiseModel { Poisson, None };
enum class MisalignmentMode { None, Systematic, Random };
enum class PlateErrorModel { Uniform, Gaussian };
enum class SigmaEstimator { Sample, Mle };

/// 0, 40, ..., 360 degrees (both endpoints), in radians.
std::vector<double> default_phi_grid();

/// 40, 80, ..., 320 degrees, in radians.
std::vector<double> default_s_grid();

/// Everything needed to simulate one intensity scan over the analyzer phase.
struct ScanConfig {
  RotationAxis axis{};             // nominal axis
  double s{};                      // rotation angle, radians
  std::vector<double> phi_grid = default_phi_grid();
  int repeats{30};
  double signal_counts{1000.0};    // mean counts per acquisition at unit intensity
  double accidental_counts{0.0};   // constant accidental-count mean
  NoiseModel noise{NoiseModel::Poisson};
  MisalignmentMode misalignment{MisalignmentMode::None};
  double plate_spread{deg_to_rad(1.0)}; // per-plate orientation error scale
  PlateErrorModel plate_error_model{PlateErrorModel::Uniform};
  // Systematic axis offset applied to the axis that the plates realize; the
  // nominal axis above stays the reference for theory comparisons.
  double delta_theta{0.0};
  double delta_phi{0.0};
  // Campaign-level systematic plate misalignment, drawn once per campaign.
  std::optional<std::array<double, 7>> fixed_plate_delta{};
  SigmaEstimator sigma_estimator{SigmaEstimator::Sample};
  std::uint64_t seed{0};
};

/// Simulated counts plus normalized per-phi statistics.
struct IntensityScan {
  double s{};
  std::vector<double> phi;                  // analyzer phases, radians
  std::vector<std::vector<double>> counts;  // [phi][repeat]
  double normalization{1.0};                // counts divided by this
  double accidental{0.0};                   // subtracted before normalizing
  std::vector<double> mean_intensity;       // per phi
  std::vector<double> sigma;                // std. error of the normalized mean
};

/// Draw one scan. Deterministic for a fixed config (including seed).
IntensityScan run_scan(const ScanConfig &config);

/// Weighted least-squares fit of I(phi) = c0 + c1 cos(2 phi) + c2 sin(2 phi).
struct FitResult {
  double c0{}, c1{}, c2{};
  std::array<double, 9> covariance{}; // row-major 3x3 of the coefficients
  double residual{};                  // weighted rms residual

  double amplitude() const { return std::sqrt(c1 * c1 + c2 * c2); }
  double i_max() const { return c0 + amplitude(); }
  double i_min() const { return c0 - amplitude(); }
  /// Delta-method standard deviations of the derived extrema.
  double i_max_sigma() const;
  double i_min_sigma() const;
};

struct UnderdeterminedFitError : std::domain_error {
  using std::domain_error::domain_error;
};

FitResult fit_sinusoid(const IntensityScan &scan);

/// Geometric-phase estimate with resampling error bars: the bars are the
/// maximal departures of the resampled estimates from their mean.
struct PhaseEstimate {
  double mean{};
  double err_lo{};
  double err_hi{};
  int iterations{};
  bool clamped{false};
  bool singular{false};
  double sigma_y{};  // resampling std of the visibility ratio y
};

/// Resample `subsample` of the repeats at each phi without replacement,
/// refit, re-extract; repeat `iterations` times.
PhaseEstimate bootstrap_phase(const IntensityScan &scan, double s, int subsample = 10,
                              int iterations = 40, std::uint64_t seed = 1);

/// One row of a phase-versus-s campaign.
struct CampaignPoint {
  double s{};
  PhaseEstimate estimate{};
  double i_min{};  // full-sample fit extrema
  double i_max{};
};

/// Run a scan + bootstrap at every s in the grid. The base config's s is
/// ignored; per-point seeds and the campaign-level systematic plate offsets
/// derive from base.seed.
std::vector<CampaignPoint> run_campaign(const ScanConfig &base,
                                        std::span<const double> s_grid,
                                        int bootstrap_subsample = 10,
                                        int bootstrap_iterations = 40);

/// Degree of second-order coherence from heralded photocounts.
struct G2Result {
  double value{};
  bool nonclassical{false};
};

G2Result g2_statistic(double n_g, double n_gt, double n_gr, double n_gtr);

} // namespace phaselab
