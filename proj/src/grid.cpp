#include "lbentropy/grid.hpp"

#include <algorithm>
#include <stdexcept>

#include "lbentropy/estimators.hpp"

namespace lbentropy {
namespace {

// Widened so that floating-point rounding in (x - Y)/h can never drop a
// term with nonzero weight; extra terms evaluate to exactly 0.
constexpr double window_slack = 1.0 + 1e-9;

struct Range {
  std::size_t begin, end;
};

Range window(std::span<const double> sorted, double centre, double h) {
  const double r = h * window_slack;
  const auto lo = std::lower_bound(sorted.begin(), sorted.end(), centre - r);
  const auto hi = std::upper_bound(lo, sorted.end(), centre + r);
  return {static_cast<std::size_t>(lo - sorted.begin()),
          static_cast<std::size_t>(hi - sorted.begin())};
}

void check_sizes(std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size()) throw std::invalid_argument("grid: input/output size mismatch");
}

// Below this much work a parallel region costs more than it saves.
constexpr std::size_t parallel_threshold = 1 << 14;

std::vector<double> node_values(const LBSample& s, std::span<const double> us) {
  std::vector<double> x(us.size());
  for (std::size_t j = 0; j < us.size(); ++j) x[j] = sen_quantile(s, us[j]);
  return x;
}

}  // namespace

namespace detail {

double weighted_kernel_sum(const LBSample& s, double h, KernelSpec k, double x) {
  const auto y = s.values();
  const auto [b, e] = window(y, x, h);
  double acc = 0.0;
  for (std::size_t i = b; i < e; ++i) acc += eval_kernel(k, (x - y[i]) / h) / y[i];
  return acc;
}

double kernel_sum(const LBSample& s, double h, KernelSpec k, double x) {
  const auto y = s.values();
  const auto [b, e] = window(y, x, h);
  double acc = 0.0;
  for (std::size_t i = b; i < e; ++i) acc += eval_kernel(k, (x - y[i]) / h);
  return acc;
}

double spacing_kernel_sum(const LBSample& s, std::span<const double> jumps, double h,
                          KernelSpec k, double u) {
  const auto y = s.values();
  const auto [b, e] = window(jumps, u, h);
  double acc = 0.0;
  for (std::size_t i = b; i < e; ++i) acc += eval_kernel(k, (jumps[i] - u) / h) * (y[i + 1] - y[i]);
  return acc;
}

}  // namespace detail

namespace grid {

void jones_density(const LBSample& s, double h, KernelSpec k, std::span<const double> xs,
                   std::span<double> out) {
  check_sizes(xs, out);
  const double scale = cox_mean(s) / (static_cast<double>(s.size()) * h);
  const auto m = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static) if (xs.size() * s.size() > parallel_threshold)
  for (std::ptrdiff_t j = 0; j < m; ++j)
    out[j] = scale * detail::weighted_kernel_sum(s, h, k, xs[j]);
}

void bhatta_density(const LBSample& s, double h, KernelSpec k, std::span<const double> xs,
                    std::span<double> out) {
  check_sizes(xs, out);
  const double inv_sum = s.inv_sum();
  const auto m = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static) if (xs.size() * s.size() > parallel_threshold)
  for (std::ptrdiff_t j = 0; j < m; ++j)
    out[j] = xs[j] > 0.0 ? detail::kernel_sum(s, h, k, xs[j]) / h / (xs[j] * inv_sum) : 0.0;
}

void unweighted_density(const LBSample& s, double h, KernelSpec k,
                        std::span<const double> xs, std::span<double> out) {
  check_sizes(xs, out);
  const double inv_sum = s.inv_sum();
  const auto m = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static) if (xs.size() * s.size() > parallel_threshold)
  for (std::ptrdiff_t j = 0; j < m; ++j)
    out[j] = detail::kernel_sum(s, h, k, xs[j]) / h / inv_sum;
}

void q2n(const LBSample& s, double h, KernelSpec k, std::span<const double> us,
         std::span<double> out) {
  check_sizes(us, out);
  const auto t = jump_points(s);
  const auto m = static_cast<std::ptrdiff_t>(us.size());
#pragma omp parallel for schedule(static) if (us.size() * s.size() > parallel_threshold)
  for (std::ptrdiff_t j = 0; j < m; ++j)
    out[j] = detail::spacing_kernel_sum(s, t, h, k, us[j]) / h;
}

void jones_at_sen_quantile(const LBSample& s, double h, KernelSpec k,
                           std::span<const double> us, std::span<double> out) {
  check_sizes(us, out);
  const auto x = node_values(s, us);
  jones_density(s, h, k, x, out);
}

}  // namespace grid

namespace serial {

void jones_density(const LBSample& s, double h, KernelSpec k, std::span<const double> xs,
                   std::span<double> out) {
  check_sizes(xs, out);
  const auto y = s.values();
  const double scale = cox_mean(s) / (static_cast<double>(s.size()) * h);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += eval_kernel(k, (xs[j] - y[i]) / h) / y[i];
    out[j] = scale * acc;
  }
}

void bhatta_density(const LBSample& s, double h, KernelSpec k, std::span<const double> xs,
                    std::span<double> out) {
  check_sizes(xs, out);
  const auto y = s.values();
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (!(xs[j] > 0.0)) {
      out[j] = 0.0;
      continue;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += eval_kernel(k, (xs[j] - y[i]) / h);
    out[j] = acc / h / (xs[j] * s.inv_sum());
  }
}

void unweighted_density(const LBSample& s, double h, KernelSpec k,
                        std::span<const double> xs, std::span<double> out) {
  check_sizes(xs, out);
  const auto y = s.values();
  for (std::size_t j = 0; j < xs.size(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += eval_kernel(k, (xs[j] - y[i]) / h);
    out[j] = acc / h / s.inv_sum();
  }
}

void q2n(const LBSample& s, double h, KernelSpec k, std::span<const double> us,
         std::span<double> out) {
  check_sizes(us, out);
  const auto y = s.values();
  const auto t = jump_points(s);
  for (std::size_t j = 0; j < us.size(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
      acc += eval_kernel(k, (t[i] - us[j]) / h) * (y[i + 1] - y[i]);
    out[j] = acc / h;
  }
}

void jones_at_sen_quantile(const LBSample& s, double h, KernelSpec k,
                           std::span<const double> us, std::span<double> out) {
  check_sizes(us, out);
  const auto x = node_values(s, us);
  serial::jones_density(s, h, k, x, out);
}

}  // namespace serial
}  // namespace lbentropy
