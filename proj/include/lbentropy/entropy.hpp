#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "lbentropy/estimators.hpp"
#include "lbentropy/sample.hpp"

namespace lbentropy {

struct EntropyEstimate {
  double value = 0.0;             // nats
  double floored_fraction = 0.0;  // share of grid nodes clamped to the log floor
  double trim = 0.0;
  std::size_t grid_points = 0;
  double bandwidth = 0.0;

  /// More than 5% of nodes floored: the bandwidth is too small for n.
  bool warning() const noexcept { return floored_fraction > 0.05; }
};

struct LogIntegral {
  double value;
  double floored_fraction;
};

/// m equally spaced nodes on [trim, 1 - trim], endpoints included.
std::vector<double> probability_grid(double trim, std::size_t m);

/// Composite trapezoid of log(max(v_j, floor)) over [trim, 1 - trim], where
/// values are taken on probability_grid(trim, values.size()).
LogIntegral log_integral(std::span<const double> values, double trim, double floor);

/// -int log f_n(Q_n(u)) du over the trimmed grid.
EntropyEstimate xi1(const LBSample& s, const EstimatorConfig& cfg);

/// int log q2n(u) du over the trimmed grid, floor-guarded.
EntropyEstimate xi2(const LBSample& s, const EstimatorConfig& cfg);

enum class DensityVariant { h1, h2 };

/// -int f log f dx for the Bhattacharyya (h1) or Jones (h2) density, by
/// trapezoid on [max(Y_(1) - h, x_min), Y_(n) + h]; t log t := 0 where
/// f <= floor.
EntropyEstimate h_integral(const LBSample& s, const EstimatorConfig& cfg, DensityVariant v);

enum class EstimatorId { xi1, xi2, h1, h2 };

EstimatorId parse_estimator(std::string_view name);
std::string_view estimator_name(EstimatorId id) noexcept;
EntropyEstimate estimate(EstimatorId id, const LBSample& s, const EstimatorConfig& cfg);

}  // namespace lbentropy
