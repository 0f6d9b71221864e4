#include "lbentropy/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lbentropy/errors.hpp"
#include "lbentropy/grid.hpp"

namespace lbentropy {

void EstimatorConfig::validate() const {
  if (!(trim > 0.0 && trim < 0.5)) throw validation_error("trim must lie in (0, 0.5)");
  if (grid_points < 11) throw validation_error("grid_points must be at least 11");
  if (x_grid_points < 11) throw validation_error("x_grid_points must be at least 11");
  if (!(log_floor > 0.0) || !std::isfinite(log_floor))
    throw validation_error("log_floor must be positive");
  if (bandwidth.kind == BandwidthRule::Kind::fixed &&
      (!(bandwidth.value > 0.0) || !std::isfinite(bandwidth.value)))
    throw validation_error("fixed bandwidth must be positive");
  if (!std::isfinite(x_min)) throw validation_error("x_min must be finite");
}

double cox_mean(const LBSample& s) noexcept {
  return static_cast<double>(s.size()) / s.inv_sum();
}

double jones_density(const LBSample& s, double h, KernelSpec k, double x) {
  return cox_mean(s) / (static_cast<double>(s.size()) * h) * detail::weighted_kernel_sum(s, h, k, x);
}

double bhatta_density(const LBSample& s, double h, KernelSpec k, double x) {
  if (!(x > 0.0)) throw std::domain_error("bhatta_density: x must be positive");
  return detail::kernel_sum(s, h, k, x) / h / (x * s.inv_sum());
}

double unweighted_density(const LBSample& s, double h, KernelSpec k, double x) {
  return detail::kernel_sum(s, h, k, x) / h / s.inv_sum();
}

std::size_t sen_index(const LBSample& s, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("sen_quantile: u must lie in [0, 1]");
  const auto pre = s.inv_prefix();
  const double threshold = u * s.inv_sum();
  const auto count = static_cast<std::size_t>(
      std::upper_bound(pre.begin(), pre.end(), threshold) - pre.begin());
  return std::max<std::size_t>(count, 1);
}

double sen_quantile(const LBSample& s, double u) {
  return s.values()[sen_index(s, u) - 1];
}

std::vector<double> jump_points(const LBSample& s) {
  const auto pre = s.inv_prefix();
  std::vector<double> t(s.size() - 1);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) t[i] = pre[i] / s.inv_sum();
  return t;
}

double q1n(const LBSample& s, double h, KernelSpec k, double u) {
  return 1.0 / jones_density(s, h, k, sen_quantile(s, u));
}

double q2n(const LBSample& s, double h, KernelSpec k, double u) {
  const auto t = jump_points(s);
  return detail::spacing_kernel_sum(s, t, h, k, u) / h;
}

double rot_bandwidth(const LBSample& s, KernelSpec k) {
  const double n = static_cast<double>(s.size());
  const double mu = cox_mean(s);
  double sum_y = 0.0, sum_inv2 = 0.0;
  for (double y : s.values()) {
    sum_y += y;
    sum_inv2 += 1.0 / (y * y);
  }
  const double m_inv = mu * sum_inv2 / n;     // estimate of E_f(1/X)
  const double var = mu * sum_y / n - mu * mu;  // estimate of Var_f(X)
  if (!(var > 0.0) || !std::isfinite(var))
    throw numerical_error("rule-of-thumb bandwidth: degenerate sample (variance estimate " +
                          std::to_string(var) + ")");
  const double sigma = std::sqrt(var);
  const double roughness_f2 = 3.0 / (8.0 * std::sqrt(std::numbers::pi) * std::pow(sigma, 5));
  const auto kc = kernel_constants(k);
  const double h = std::pow(kc.roughness * mu * m_inv /
                                (kc.second_moment * kc.second_moment * roughness_f2),
                            0.2) *
                   std::pow(n, -0.2);
  if (!(h > 0.0) || !std::isfinite(h))
    throw numerical_error("rule-of-thumb bandwidth is not finite");
  return h;
}

double resolve_bandwidth(const LBSample& s, const EstimatorConfig& cfg) {
  return cfg.bandwidth.kind == BandwidthRule::Kind::fixed ? cfg.bandwidth.value
                                                          : rot_bandwidth(s, cfg.kernel);
}

}  // namespace lbentropy
