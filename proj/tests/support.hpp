#pragma once

// Test-only helpers and oracles. Nothing here calls into the code paths the
// oracles are used to check.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <doctest.h>

#include "lbentropy/sample.hpp"

namespace testing {

inline std::vector<double> linspace(double a, double b, std::size_t m) {
  std::vector<double> x(m);
  for (std::size_t j = 0; j < m; ++j) x[j] = a + (b - a) * static_cast<double>(j) / (m - 1);
  return x;
}

inline double trapezoid(const std::function<double(double)>& f, double a, double b,
                        std::size_t m) {
  const double h = (b - a) / static_cast<double>(m - 1);
  double s = 0.5 * (f(a) + f(b));
  for (std::size_t j = 1; j + 1 < m; ++j) s += f(a + h * static_cast<double>(j));
  return s * h;
}

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t panels) {
  const double h = (b - a) / static_cast<double>(panels);
  double s = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double x0 = a + h * static_cast<double>(i);
    s += f(x0) + 4 * f(x0 + 0.5 * h) + f(x0 + h);
  }
  return s * h / 6.0;
}

/// Random positive sample, log-uniform over [lo, hi].
inline std::vector<double> random_values(std::mt19937_64& g, std::size_t n, double lo = 0.1,
                                         double hi = 10.0) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  std::vector<double> v(n);
  for (auto& x : v) x = std::exp(d(g));
  return v;
}

}  // namespace testing
