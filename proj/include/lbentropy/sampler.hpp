#pragma once

#include <cstddef>
#include <vector>

#include "lbentropy/models.hpp"
#include "lbentropy/rng.hpp"
#include "lbentropy/sample.hpp"

namespace lbentropy {

/// Draws from the length-biased law g(y) = y f(y) / mu of a quantile model by
/// inverting Phi(v) = (1/mu) int_0^v Q(p) dp, then returning Q(v).
///
/// Phi is tabulated once on a uniform grid and interpolated with a monotone
/// (Fritsch-Carlson) cubic; the interpolated inverse is only a starting
/// point, refined by safeguarded Newton against the exact Phi so the sampled
/// law does not carry interpolation error.
class LBSampler {
public:
  static constexpr std::size_t table_size = 4096;

  explicit LBSampler(QuantileModel model);

  const QuantileModel& model() const noexcept { return model_; }
  double mu() const noexcept { return mu_; }

  /// Exact Phi(v) (table cell + Gauss-Legendre offset).
  double phi(double v) const;
  /// v with Phi(v) = p.
  double phi_inverse(double p) const;

  double draw(RandomStream& rng) const;
  LBSample sample(std::size_t n, RandomStream& rng) const;

private:
  double cell_offset(std::size_t j, double v) const;

  QuantileModel model_;
  double mu_ = 0.0;
  std::vector<double> phi_;    // Phi at v_j = j / (table_size - 1)
  std::vector<double> slope_;  // PCHIP derivatives at the nodes
};

}  // namespace lbentropy
