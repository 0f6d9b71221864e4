#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lbentropy {

// Q(u) = theta + sigma((beta+1)u^beta - beta u^(beta+1)); bathtub hazard.
struct Govindarajulu {
  double theta, sigma, beta;
};

// Generalized lambda: Q(u) = l1 + (u^l3 - (1-u)^l4) / l2.
struct Gld {
  double lambda1, lambda2, lambda3, lambda4;
};

// Q(u) = C u^l1 (1-u)^(-l2).
struct PowerPareto {
  double scale, lambda1, lambda2;
};

struct UniformDist {
  double a, b;
};

/// A lifetime distribution defined through its quantile function. Parameters
/// are validated on construction (Q nonnegative and strictly increasing on a
/// validation grid); instances are immutable.
class QuantileModel {
public:
  using Params = std::variant<Govindarajulu, Gld, PowerPareto, UniformDist>;

  explicit QuantileModel(Params params);

  /// family is "govindarajulu" | "gld" | "power_pareto" | "uniform"; params in
  /// the order (theta,sigma,beta), (l1,l2,l3,l4), (C,l1,l2), (a,b).
  static QuantileModel from_family(std::string_view family,
                                   std::span<const double> params);

  const Params& params() const noexcept { return params_; }
  std::string family() const;
  std::vector<double> param_vector() const;
  /// e.g. "govindarajulu(0,1,0.25)"
  std::string id() const;

  /// Q(u) on [0,1]; +inf at u = 1 for a Power-Pareto with l2 > 0.
  double quantile(double u) const;
  /// q(u) = Q'(u) on (0,1).
  double quantile_density(double u) const;
  /// log q(u), evaluated in log space.
  double log_quantile_density(double u) const;
  /// F(x), by safeguarded Newton/bisection on Q(u) = x.
  double cdf(double x) const;

  double support_lower() const { return quantile(0.0); }
  double support_upper() const { return quantile(1.0); }

  /// mu = int_0^1 Q(p) dp (throws validation_error when infinite).
  double mean() const;

private:
  Params params_;
};

/// xi = int_trim^{1-trim} log q(u) du. Closed form where available
/// (Govindarajulu untrimmed: log(sigma beta(beta+1)) - beta), quadrature
/// otherwise.
double true_entropy(const QuantileModel& model, double trim = 0.0);

/// Always by quadrature; the oracle counterpart of the closed forms.
double entropy_by_quadrature(const QuantileModel& model, double trim = 0.0);

}  // namespace lbentropy
