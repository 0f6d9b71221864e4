#include "lbentropy/models.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lbentropy/errors.hpp"
#include "lbentropy/quadrature.hpp"

namespace lbentropy {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double inf = std::numeric_limits<double>::infinity();

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

void check_params(const QuantileModel::Params& p) {
  std::visit(
      overloaded{
          [](const Govindarajulu& m) {
            if (!finite_all({m.theta, m.sigma, m.beta}) || m.theta < 0 ||
                m.sigma <= 0 || m.beta <= 0)
              throw validation_error(
                  "govindarajulu: require theta >= 0, sigma > 0, beta > 0");
          },
          [](const Gld& m) {
            if (!finite_all({m.lambda1, m.lambda2, m.lambda3, m.lambda4}) ||
                m.lambda2 <= 0 || m.lambda3 <= 0 || m.lambda4 <= 0)
              throw validation_error(
                  "gld: require lambda2 > 0, lambda3 > 0, lambda4 > 0");
          },
          [](const PowerPareto& m) {
            if (!finite_all({m.scale, m.lambda1, m.lambda2}) || m.scale <= 0 ||
                m.lambda1 < 0 || m.lambda2 < 0 ||
                (m.lambda1 == 0 && m.lambda2 == 0))
              throw validation_error(
                  "power_pareto: require C > 0, lambda1 >= 0, lambda2 >= 0, "
                  "not both zero");
          },
          [](const UniformDist& m) {
            if (!finite_all({m.a, m.b}) || m.a < 0 || !(m.b > m.a))
              throw validation_error("uniform: require 0 <= a < b");
          },
      },
      p);
}

}  // namespace

QuantileModel::QuantileModel(Params params) : params_(params) {
  check_params(params_);
  if (!(support_lower() >= 0.0))
    throw validation_error(id() + ": support must be nonnegative (Q(0) = " +
                           std::to_string(support_lower()) + ")");
  constexpr int grid = 1024;
  double prev = support_lower();
  for (int i = 1; i < grid; ++i) {
    const double u = static_cast<double>(i) / grid;
    const double q = quantile(u);
    if (!(q > prev) || !(quantile_density(u) > 0.0))
      throw validation_error(id() + ": quantile function is not strictly "
                                    "increasing on the validation grid");
    prev = q;
  }
}

QuantileModel QuantileModel::from_family(std::string_view family,
                                         std::span<const double> p) {
  auto need = [&](std::size_t k) {
    if (p.size() != k)
      throw validation_error(std::string(family) + " expects " +
                             std::to_string(k) + " parameters, got " +
                             std::to_string(p.size()));
  };
  if (family == "govindarajulu") {
    need(3);
    return QuantileModel(Govindarajulu{p[0], p[1], p[2]});
  }
  if (family == "gld") {
    need(4);
    return QuantileModel(Gld{p[0], p[1], p[2], p[3]});
  }
  if (family == "power_pareto") {
    need(3);
    return QuantileModel(PowerPareto{p[0], p[1], p[2]});
  }
  if (family == "uniform") {
    need(2);
    return QuantileModel(UniformDist{p[0], p[1]});
  }
  throw validation_error("unknown model family '" + std::string(family) +
                         "' (expected govindarajulu, gld, power_pareto or "
                         "uniform)");
}

std::string QuantileModel::family() const {
  return std::visit(overloaded{
                        [](const Govindarajulu&) { return "govindarajulu"; },
                        [](const Gld&) { return "gld"; },
                        [](const PowerPareto&) { return "power_pareto"; },
                        [](const UniformDist&) { return "uniform"; },
                    },
                    params_);
}

std::vector<double> QuantileModel::param_vector() const {
  return std::visit(
      overloaded{
          [](const Govindarajulu& m) {
            return std::vector<double>{m.theta, m.sigma, m.beta};
          },
          [](const Gld& m) {
            return std::vector<double>{m.lambda1, m.lambda2, m.lambda3,
                                       m.lambda4};
          },
          [](const PowerPareto& m) {
            return std::vector<double>{m.scale, m.lambda1, m.lambda2};
          },
          [](const UniformDist& m) { return std::vector<double>{m.a, m.b}; },
      },
      params_);
}

std::string QuantileModel::id() const {
  std::ostringstream os;
  os.precision(17);
  os << family() << '(';
  const auto p = param_vector();
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ')';
  return os.str();
}

double QuantileModel::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("quantile: u must lie in [0, 1]");
  return std::visit(
      overloaded{
          [u](const Govindarajulu& m) {
            return m.theta + m.sigma * ((m.beta + 1) * std::pow(u, m.beta) -
                                        m.beta * std::pow(u, m.beta + 1));
          },
          [u](const Gld& m) {
            return m.lambda1 + (std::pow(u, m.lambda3) -
                                std::pow(1 - u, m.lambda4)) /
                                   m.lambda2;
          },
          [u](const PowerPareto& m) {
            if (u == 1.0) return m.lambda2 > 0 ? inf : m.scale;
            return m.scale * std::pow(u, m.lambda1) *
                   std::pow(1 - u, -m.lambda2);
          },
          [u](const UniformDist& m) { return m.a + (m.b - m.a) * u; },
      },
      params_);
}

double QuantileModel::quantile_density(double u) const {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("quantile_density: u must lie in (0, 1)");
  return std::visit(
      overloaded{
          [u](const Govindarajulu& m) {
            return m.sigma * m.beta * (m.beta + 1) * std::pow(u, m.beta - 1) *
                   (1 - u);
          },
          [u](const Gld& m) {
            return (m.lambda3 * std::pow(u, m.lambda3 - 1) +
                    m.lambda4 * std::pow(1 - u, m.lambda4 - 1)) /
                   m.lambda2;
          },
          [u](const PowerPareto& m) {
            return m.scale * std::pow(u, m.lambda1 - 1) *
                   std::pow(1 - u, -m.lambda2 - 1) *
                   (m.lambda1 * (1 - u) + m.lambda2 * u);
          },
          [](const UniformDist& m) { return m.b - m.a; },
      },
      params_);
}

double QuantileModel::log_quantile_density(double u) const {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("log_quantile_density: u must lie in (0, 1)");
  return std::visit(
      overloaded{
          [u](const Govindarajulu& m) {
            return std::log(m.sigma * m.beta * (m.beta + 1)) +
                   (m.beta - 1) * std::log(u) + std::log1p(-u);
          },
          [this, u](const Gld&) { return std::log(quantile_density(u)); },
          [u](const PowerPareto& m) {
            return std::log(m.scale) + (m.lambda1 - 1) * std::log(u) -
                   (m.lambda2 + 1) * std::log1p(-u) +
                   std::log(m.lambda1 * (1 - u) + m.lambda2 * u);
          },
          [](const UniformDist& m) { return std::log(m.b - m.a); },
      },
      params_);
}

double QuantileModel::cdf(double x) const {
  if (std::isnan(x)) throw std::domain_error("cdf: x is NaN");
  if (x <= support_lower()) return 0.0;
  if (x >= support_upper()) return 1.0;
  const double tol = 1e-10 * std::max(1.0, std::abs(x));
  double lo = 0.0, hi = 1.0, u = 0.5;
  for (int it = 0; it < 400; ++it) {
    const double r = quantile(u) - x;
    if (std::abs(r) <= tol) return u;
    if (r > 0) hi = u; else lo = u;
    if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) break;
    const double step = u - r / quantile_density(u);
    // Newton when it stays strictly inside the bracket, bisection otherwise.
    u = (step > lo && step < hi && std::isfinite(step)) ? step : 0.5 * (lo + hi);
  }
  // Bracket collapsed to adjacent doubles: |Q(u) - x| is as small as the
  // representation of u allows.
  return std::abs(quantile(lo) - x) <= std::abs(quantile(hi) - x) ? lo : hi;
}

double QuantileModel::mean() const {
  if (const auto* pp = std::get_if<PowerPareto>(&params_); pp && pp->lambda2 >= 1)
    throw validation_error(id() + ": mean is infinite (lambda2 >= 1)");
  return quad::integrate([this](double u) { return quantile(u); }, 0.0, 1.0)
      .value;
}

double entropy_by_quadrature(const QuantileModel& model, double trim) {
  if (!(trim >= 0.0 && trim < 0.5))
    throw validation_error("entropy trim must lie in [0, 0.5)");
  return quad::integrate(
             [&model](double u) { return model.log_quantile_density(u); },
             trim, 1.0 - trim)
      .value;
}

double true_entropy(const QuantileModel& model, double trim) {
  if (!(trim >= 0.0 && trim < 0.5))
    throw validation_error("entropy trim must lie in [0, 0.5)");
  if (const auto* g = std::get_if<Govindarajulu>(&model.params()); g && trim == 0.0)
    return std::log(g->sigma * g->beta * (g->beta + 1)) - g->beta;
  if (const auto* un = std::get_if<UniformDist>(&model.params()))
    return (1.0 - 2.0 * trim) * std::log(un->b - un->a);
  return entropy_by_quadrature(model, trim);
}

}  // namespace lbentropy
