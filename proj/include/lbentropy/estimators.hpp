#pragma once

#include <cstddef>
#include <vector>

#include "lbentropy/kernels.hpp"
#include "lbentropy/sample.hpp"

namespace lbentropy {

struct BandwidthRule {
  enum class Kind { rule_of_thumb, fixed };
  Kind kind = Kind::rule_of_thumb;
  double value = 0.0;  // used when kind == fixed

  static BandwidthRule fixed_at(double h) { return {Kind::fixed, h}; }
  static BandwidthRule rot() { return {}; }
};

struct EstimatorConfig {
  KernelSpec kernel{};
  BandwidthRule bandwidth{};
  std::size_t grid_points = 501;     // m, nodes on [trim, 1 - trim]
  double trim = 0.01;                // delta
  double log_floor = 1e-12;
  std::size_t x_grid_points = 1001;  // nodes for the x-space integrals
  double x_min = 0.0;                // lower limit of the x-space integrals
  bool h2_unweighted = false;        // unweighted kernel sum over sum(1/Y)

  /// Throws validation_error: 0 < trim < 0.5, grid_points >= 11,
  /// log_floor > 0, fixed bandwidth > 0.
  void validate() const;
};

/// Cox / harmonic-mean estimate of mu: n / sum(1/Y_i).
double cox_mean(const LBSample& s) noexcept;

/// Jones density estimate of the unbiased density f:
///   (mu/(n h)) sum (1/Y_i) K((x - Y_i)/h).
double jones_density(const LBSample& s, double h, KernelSpec k, double x);

/// Bhattacharyya-type estimate: (1/h) sum K((x - Y_i)/h) / (x sum 1/Y_i).
/// Requires x > 0.
double bhatta_density(const LBSample& s, double h, KernelSpec k, double x);

/// (1/h) sum K((x - Y_i)/h) / sum(1/Y_i). Does not integrate to one; kept
/// only for comparison with the weighted Jones form.
double unweighted_density(const LBSample& s, double h, KernelSpec k, double x);

/// 1-based k_n = max{k : S_k <= u S_n}, or 1 when no such k exists.
std::size_t sen_index(const LBSample& s, double u);

/// Empirical quantile Q_n(u) = Y_(k_n). u in [0, 1].
double sen_quantile(const LBSample& s, double u);

/// T_i = S_i / S_n, i = 1..n-1.
std::vector<double> jump_points(const LBSample& s);

/// 1 / f_n(Q_n(u)).
double q1n(const LBSample& s, double h, KernelSpec k, double u);

/// (1/h) sum_{i<n} K((T_i - u)/h) (Y_(i+1) - Y_(i)). May be exactly 0.
double q2n(const LBSample& s, double h, KernelSpec k, double u);

/// Normal-reference AMISE bandwidth for the Jones estimator:
///   h = [R(K) mu m_{-1} / (mu2(K)^2 R(f''))]^{1/5} n^{-1/5},
/// with mu = cox_mean, m_{-1} = mu mean(Y^-2), sigma^2 = mu mean(Y) - mu^2
/// and R(f'') = 3 / (8 sqrt(pi) sigma^5). Throws numerical_error when the
/// variance estimate is not positive.
double rot_bandwidth(const LBSample& s, KernelSpec k);

/// Fixed value or rule of thumb, per cfg.bandwidth.
double resolve_bandwidth(const LBSample& s, const EstimatorConfig& cfg);

}  // namespace lbentropy
