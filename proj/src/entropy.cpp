#include "lbentropy/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lbentropy/errors.hpp"
#include "lbentropy/grid.hpp"

namespace lbentropy {
namespace {

std::vector<double> linspace(double a, double b, std::size_t m) {
  std::vector<double> x(m);
  const double step = (b - a) / static_cast<double>(m - 1);
  for (std::size_t j = 0; j + 1 < m; ++j) x[j] = a + static_cast<double>(j) * step;
  x.back() = b;
  return x;
}

double trapezoid(std::span<const double> f, double width) {
  double acc = 0.5 * (f.front() + f.back());
  for (std::size_t j = 1; j + 1 < f.size(); ++j) acc += f[j];
  return acc * width / static_cast<double>(f.size() - 1);
}

}  // namespace

std::vector<double> probability_grid(double trim, std::size_t m) {
  if (m < 2) throw validation_error("probability grid needs at least 2 nodes");
  return linspace(trim, 1.0 - trim, m);
}

LogIntegral log_integral(std::span<const double> values, double trim, double floor) {
  if (values.size() < 11) throw validation_error("log_integral needs at least 11 nodes");
  if (!(floor > 0.0)) throw validation_error("log floor must be positive");
  if (!(trim >= 0.0 && trim < 0.5)) throw validation_error("trim must lie in [0, 0.5)");
  std::vector<double> logs(values.size());
  std::size_t floored = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double v = values[j];
    if (!(v >= floor)) ++floored;  // NaN counts as floored
    logs[j] = std::log(v >= floor ? v : floor);
  }
  return {trapezoid(logs, 1.0 - 2.0 * trim),
          static_cast<double>(floored) / static_cast<double>(values.size())};
}

EntropyEstimate xi1(const LBSample& s, const EstimatorConfig& cfg) {
  cfg.validate();
  const double h = resolve_bandwidth(s, cfg);
  const auto u = probability_grid(cfg.trim, cfg.grid_points);
  std::vector<double> f(u.size());
  grid::jones_at_sen_quantile(s, h, cfg.kernel, u, f);
  const auto li = log_integral(f, cfg.trim, cfg.log_floor);
  return {-li.value, li.floored_fraction, cfg.trim, cfg.grid_points, h};
}

EntropyEstimate xi2(const LBSample& s, const EstimatorConfig& cfg) {
  cfg.validate();
  const double h = resolve_bandwidth(s, cfg);
  const auto u = probability_grid(cfg.trim, cfg.grid_points);
  std::vector<double> q(u.size());
  grid::q2n(s, h, cfg.kernel, u, q);
  const auto li = log_integral(q, cfg.trim, cfg.log_floor);
  return {li.value, li.floored_fraction, cfg.trim, cfg.grid_points, h};
}

EntropyEstimate h_integral(const LBSample& s, const EstimatorConfig& cfg, DensityVariant v) {
  cfg.validate();
  const double h = resolve_bandwidth(s, cfg);
  const double a = std::max(s.front() - h, cfg.x_min);
  const double b = s.back() + h;
  const auto x = linspace(a, b, cfg.x_grid_points);
  std::vector<double> f(x.size());
  if (v == DensityVariant::h1)
    grid::bhatta_density(s, h, cfg.kernel, x, f);
  else if (cfg.h2_unweighted)
    grid::unweighted_density(s, h, cfg.kernel, x, f);
  else
    grid::jones_density(s, h, cfg.kernel, x, f);

  std::size_t floored = 0;
  for (double& fj : f) {
    if (fj > cfg.log_floor) {
      fj = -fj * std::log(fj);
    } else {
      fj = 0.0;
      ++floored;
    }
  }
  return {trapezoid(f, b - a),
          static_cast<double>(floored) / static_cast<double>(f.size()), cfg.trim,
          cfg.x_grid_points, h};
}

EstimatorId parse_estimator(std::string_view name) {
  if (name == "xi1") return EstimatorId::xi1;
  if (name == "xi2") return EstimatorId::xi2;
  if (name == "H1" || name == "h1") return EstimatorId::h1;
  if (name == "H2" || name == "h2") return EstimatorId::h2;
  throw validation_error("unknown estimator '" + std::string(name) +
                         "' (expected xi1, xi2, H1 or H2)");
}

std::string_view estimator_name(EstimatorId id) noexcept {
  switch (id) {
    case EstimatorId::xi1: return "xi1";
    case EstimatorId::xi2: return "xi2";
    case EstimatorId::h1: return "H1";
    case EstimatorId::h2: return "H2";
  }
  return "?";
}

EntropyEstimate estimate(EstimatorId id, const LBSample& s, const EstimatorConfig& cfg) {
  switch (id) {
    case EstimatorId::xi1: return xi1(s, cfg);
    case EstimatorId::xi2: return xi2(s, cfg);
    case EstimatorId::h1: return h_integral(s, cfg, DensityVariant::h1);
    case EstimatorId::h2: return h_integral(s, cfg, DensityVariant::h2);
  }
  throw validation_error("unknown estimator");
}

}  // namespace lbentropy
