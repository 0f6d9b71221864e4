#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lbentropy/models.hpp"
#include "lbentropy/sample.hpp"

namespace lbentropy {

/// One positive number per line; an optional non-numeric first line is taken
/// as a header. Accepts LF or CRLF and a UTF-8 BOM. Errors name the line.
LBSample parse_sample(std::string_view text);
LBSample load_sample(const std::filesystem::path& path);

struct FitOptions {
  bool bias_corrected = false;  // likelihood of g(x) = x f(x) / mu
  std::size_t starts = 8;
  double tolerance = 1e-8;      // simplex size at convergence
  std::size_t max_iterations = 20000;
  int threads = 0;
};

struct FitResult {
  PowerPareto params{};
  double log_likelihood = 0.0;
  bool converged = false;
  std::size_t n_starts_used = 0;
  bool bias_corrected = false;
  std::vector<PowerPareto> start_points;
  std::vector<double> start_log_likelihoods;

  QuantileModel model() const { return QuantileModel(params); }
};

/// u_i = F(x_i) under a Power-Pareto; |Q(u_i) - x_i| <= 1e-10 max(1, x_i).
/// Values outside the support map to 0 or 1.
std::vector<double> power_pareto_uniforms(std::span<const double> x, const PowerPareto& p);

/// sum log f(x_i) (or log g(x_i) when bias_corrected); -inf when any x_i is
/// outside the support, cannot be located to tolerance in double precision, or
/// the parameters are invalid.
double power_pareto_log_likelihood(std::span<const double> x, const PowerPareto& p,
                                   bool bias_corrected = false);

/// Maximum likelihood by multi-start Nelder-Mead in (log C, log l1, log l2).
/// Shape parameters below 1e-6 are reported as 0. The best start wins; ties
/// go to the lowest start index.
FitResult fit_power_pareto(const LBSample& s, const FitOptions& opts = {});

/// D = max_i max(|i/n - F(x_(i))|, |(i-1)/n - F(x_(i))|).
double ks_statistic(const LBSample& s, const QuantileModel& model);

/// Asymptotic one-sample KS reference value c(alpha)/sqrt(n).
double ks_critical_value(double alpha, std::size_t n);

/// (Q((i - 0.5)/n), x_(i)) for i = 1..n.
std::vector<std::pair<double, double>> qq_points(const LBSample& s, const QuantileModel& model);

std::string qq_csv(const std::vector<std::pair<double, double>>& points);

}  // namespace lbentropy
