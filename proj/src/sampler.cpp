#include "lbentropy/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lbentropy/errors.hpp"
#include "lbentropy/quadrature.hpp"

namespace lbentropy {
namespace {

constexpr double cell_width = 1.0 / static_cast<double>(LBSampler::table_size - 1);

double node(std::size_t j) {
  return j == LBSampler::table_size - 1 ? 1.0 : static_cast<double>(j) * cell_width;
}

}  // namespace

LBSampler::LBSampler(QuantileModel model) : model_(std::move(model)) {
  if (const auto* pp = std::get_if<PowerPareto>(&model_.params()); pp && pp->lambda2 >= 1)
    throw validation_error(model_.id() + ": mean is infinite, length-biased law undefined");

  const auto Q = [this](double u) { return model_.quantile(u); };
  const std::size_t cells = table_size - 1;
  std::vector<double> cum(table_size, 0.0);
  for (std::size_t j = 0; j < cells; ++j) {
    const double a = node(j), b = node(j + 1);
    // End cells may hold integrable singularities of Q or of its derivative.
    const double part = (j == 0 || j + 1 == cells) ? quad::integrate(Q, a, b).value
                                                   : quad::gauss_legendre10(Q, a, b);
    cum[j + 1] = cum[j] + part;
  }
  mu_ = cum.back();
  if (!std::isfinite(mu_) || !(mu_ > 0))
    throw numerical_error(model_.id() + ": mean is not finite and positive");

  phi_.resize(table_size);
  for (std::size_t j = 0; j < table_size; ++j) phi_[j] = cum[j] / mu_;
  phi_.front() = 0.0;
  phi_.back() = 1.0;
  for (std::size_t j = 0; j < cells; ++j)
    if (!(phi_[j + 1] > phi_[j]))
      throw numerical_error(model_.id() + ": length-biased CDF table is not strictly increasing");

  std::vector<double> secant(cells);
  for (std::size_t j = 0; j < cells; ++j) secant[j] = (phi_[j + 1] - phi_[j]) / cell_width;
  slope_.resize(table_size);
  slope_.front() = secant.front();
  slope_.back() = secant.back();
  for (std::size_t j = 1; j < cells; ++j) {
    const double l = secant[j - 1], r = secant[j];
    slope_[j] = (l * r <= 0) ? 0.0 : 2.0 / (1.0 / l + 1.0 / r);
  }
}

double LBSampler::cell_offset(std::size_t j, double v) const {
  const double a = node(j);
  if (v <= a) return 0.0;
  return quad::gauss_legendre10([this](double u) { return model_.quantile(u); }, a, v);
}

double LBSampler::phi(double v) const {
  if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("phi: v must lie in [0, 1]");
  if (v == 1.0) return 1.0;
  const auto j = std::min<std::size_t>(static_cast<std::size_t>(v / cell_width), table_size - 2);
  return phi_[j] + cell_offset(j, v) / mu_;
}

double LBSampler::phi_inverse(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("phi_inverse: p must lie in (0, 1)");
  auto it = std::upper_bound(phi_.begin(), phi_.end(), p);
  const auto j = std::min<std::size_t>(static_cast<std::size_t>(it - phi_.begin()) - 1, table_size - 2);

  // Starting point: invert the monotone Hermite cubic on the cell.
  const double p0 = phi_[j], p1 = phi_[j + 1];
  const double m0 = slope_[j] * cell_width, m1 = slope_[j + 1] * cell_width;
  auto hermite = [&](double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * p1 +
           (t3 - t2) * m1;
  };
  double tl = 0.0, th = 1.0;
  for (int it2 = 0; it2 < 40; ++it2) {
    const double tm = 0.5 * (tl + th);
    (hermite(tm) < p ? tl : th) = tm;
  }

  double lo = node(j), hi = node(j + 1);
  double v = lo + 0.5 * (tl + th) * (hi - lo);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 100; ++iter) {
    const double r = phi_[j] + cell_offset(j, v) / mu_ - p;
    if (std::abs(r) <= 4 * eps) return v;
    (r > 0 ? hi : lo) = v;
    if (hi - lo <= 4 * eps * hi) return 0.5 * (lo + hi);
    const double d = model_.quantile(v) / mu_;
    const double step = d > 0 ? v - r / d : lo - 1.0;
    v = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
  }
  throw numerical_error("length-biased CDF inversion did not converge at p = " +
                        std::to_string(p));
}

double LBSampler::draw(RandomStream& rng) const {
  return model_.quantile(phi_inverse(rng.uniform()));
}

LBSample LBSampler::sample(std::size_t n, RandomStream& rng) const {
  if (n < 2) throw validation_error("sample size must be at least 2");
  std::vector<double> y(n);
  for (auto& v : y) v = draw(rng);
  return LBSample(std::move(y));
}

}  // namespace lbentropy
