#include "lbentropy/fitting.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <omp.h>
#include <gsl/gsl_vector.h>

#include "lbentropy/errors.hpp"
#include "lbentropy/format.hpp"
#include "lbentropy/rng.hpp"

namespace lbentropy {
namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

std::string_view trim_ws(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

double log_q(const PowerPareto& p, double u) {
  return std::log(p.scale) + (p.lambda1 - 1) * std::log(u) - (p.lambda2 + 1) * std::log1p(-u) +
         std::log(p.lambda1 * (1 - u) + p.lambda2 * u);
}

double pp_quantile(const PowerPareto& p, double u) {
  return p.scale * std::pow(u, p.lambda1) * std::pow(1 - u, -p.lambda2);
}

// Safeguarded Newton on log Q(u) = log x, which is monotone and much better
// conditioned than Q itself near the ends. Returns false when no double u
// reproduces x to tolerance (u would have to sit closer to 0 or 1 than the
// grid of doubles allows); `u` then holds the closest bracket end.
bool pp_solve(const PowerPareto& p, double x, double& u) {
  const double lower = p.lambda1 > 0 ? 0.0 : p.scale;
  const double upper = p.lambda2 > 0 ? std::numeric_limits<double>::infinity() : p.scale;
  if (x <= lower) {
    u = 0.0;
    return true;
  }
  if (x >= upper) {
    u = 1.0;
    return true;
  }
  const double target = std::log(x);
  const double tol = 1e-10 * std::max(1.0, x);
  double lo = 0.0, hi = 1.0;
  u = 0.5;
  for (int it = 0; it < 400; ++it) {
    const double lq = std::log(p.scale) + p.lambda1 * std::log(u) - p.lambda2 * std::log1p(-u);
    if (std::abs(std::exp(lq) - x) <= tol) return true;
    (lq > target ? hi : lo) = u;
    if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) break;
    const double d = p.lambda1 / u + p.lambda2 / (1 - u);
    const double step = u - (lq - target) / d;
    u = (step > lo && step < hi && std::isfinite(step)) ? step : 0.5 * (lo + hi);
  }
  u = std::abs(pp_quantile(p, lo) - x) <= std::abs(pp_quantile(p, hi) - x) ? lo : hi;
  return std::abs(pp_quantile(p, u) - x) <= tol;
}

double pp_cdf(const PowerPareto& p, double x) {
  double u = 0.0;
  pp_solve(p, x, u);
  return u;
}

PowerPareto from_log(const double* t) {
  auto shape = [](double v) {
    const double e = std::exp(v);
    return e < 1e-6 ? 0.0 : e;
  };
  return {std::exp(t[0]), shape(t[1]), shape(t[2])};
}

struct Objective {
  std::span<const double> x;
  bool bias_corrected;
};

double negative_log_likelihood(const gsl_vector* v, void* params) {
  const auto* obj = static_cast<const Objective*>(params);
  // Same mapping as the reported result, so a boundary optimum (shape -> 0)
  // is a flat region the simplex can contract on.
  const double t[3] = {gsl_vector_get(v, 0), gsl_vector_get(v, 1), gsl_vector_get(v, 2)};
  const PowerPareto p = from_log(t);
  const double ll = power_pareto_log_likelihood(obj->x, p, obj->bias_corrected);
  // Large finite penalty keeps the simplex arithmetic well defined.
  return std::isfinite(ll) ? -ll : 1e100;
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

struct StartOutcome {
  std::array<double, 3> theta;
  double log_likelihood;
  bool converged;
};

StartOutcome run_nelder_mead(const Objective& obj, const PowerPareto& start,
                             const FitOptions& opts) {
  std::unique_ptr<gsl_vector, VectorDeleter> x0(gsl_vector_alloc(3));
  std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(3));
  gsl_vector_set(x0.get(), 0, std::log(start.scale));
  gsl_vector_set(x0.get(), 1, std::log(start.lambda1));
  gsl_vector_set(x0.get(), 2, std::log(start.lambda2));
  gsl_vector_set_all(step.get(), 0.5);

  gsl_multimin_function fn{&negative_log_likelihood, 3, const_cast<Objective*>(&obj)};
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3));
  gsl_multimin_fminimizer_set(m.get(), &fn, x0.get(), step.get());

  bool converged = false;
  const bool feasible = gsl_multimin_fminimizer_minimum(m.get()) < 1e100;
  for (std::size_t it = 0; feasible && it < opts.max_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), opts.tolerance) ==
        GSL_SUCCESS) {
      converged = true;
      break;
    }
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(m.get());
  StartOutcome out{{gsl_vector_get(best, 0), gsl_vector_get(best, 1), gsl_vector_get(best, 2)},
                   -gsl_multimin_fminimizer_minimum(m.get()), converged};
  if (out.log_likelihood <= -1e100) out.log_likelihood = neg_inf;
  return out;
}

double median(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  return n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

std::vector<PowerPareto> start_points(std::span<const double> sorted, std::size_t count,
                                      bool bias_corrected) {
  // Each start puts the model median at the sample median.
  const double med = median(sorted);
  std::vector<PowerPareto> pts;
  for (double scale : {1.0, 0.6})
    for (double l1 : {0.3, 1.0})
      for (double l2 : {0.03, 0.3})
        pts.push_back({med * std::pow(2.0, l1 - l2) * scale, l1, l2});
  pts.resize(std::min(count, pts.size()));
  RandomStream rng(0x5eed5eedULL);
  while (pts.size() < count) {
    const double l1 = 0.05 + 2.0 * rng.uniform();
    const double l2 = 0.01 + 0.6 * rng.uniform();
    pts.push_back({med * std::pow(2.0, l1 - l2) * (0.5 + rng.uniform()), l1, l2});
  }
  // A start that cannot reach every observation sits on the penalty plateau,
  // where the simplex never moves. Widening both tails fixes that.
  for (auto& p : pts) {
    for (int k = 0; k < 60 && !std::isfinite(power_pareto_log_likelihood(sorted, p, bias_corrected)); ++k) {
      p.lambda1 *= 1.25;
      p.lambda2 = bias_corrected ? std::min(p.lambda2 * 1.25, 0.95) : p.lambda2 * 1.25;
    }
  }
  return pts;
}

}  // namespace

LBSample parse_sample(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<double> values;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto line = trim_ws(raw);
    if (line.empty()) continue;
    double v = 0.0;
    if (!parse_double(line, v)) {
      if (!seen_content) {
        seen_content = true;  // header
        continue;
      }
      throw validation_error("line " + std::to_string(line_no) + ": cannot parse '" +
                             std::string(line) + "' as a number");
    }
    seen_content = true;
    if (!std::isfinite(v))
      throw validation_error("line " + std::to_string(line_no) + ": value is not finite");
    if (v <= 0)
      throw validation_error("line " + std::to_string(line_no) + ": value " + std::string(line) +
                             " is not positive");
    values.push_back(v);
  }
  if (values.size() < 2)
    throw validation_error("sample needs at least 2 values, got " + std::to_string(values.size()));
  return LBSample(std::move(values));
}

LBSample load_sample(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open sample file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_sample(ss.str());
  } catch (const validation_error& e) {
    throw validation_error(path.string() + ": " + e.what());
  }
}

std::vector<double> power_pareto_uniforms(std::span<const double> x, const PowerPareto& p) {
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = pp_cdf(p, x[i]);
  return u;
}

double power_pareto_log_likelihood(std::span<const double> x, const PowerPareto& p,
                                   bool bias_corrected) {
  if (!(p.scale > 0) || !(p.lambda1 >= 0) || !(p.lambda2 >= 0) ||
      (p.lambda1 == 0 && p.lambda2 == 0) || !std::isfinite(p.scale) ||
      !std::isfinite(p.lambda1) || !std::isfinite(p.lambda2))
    return neg_inf;
  double log_mu = 0.0;
  if (bias_corrected) {
    if (p.lambda2 >= 1) return neg_inf;
    log_mu = std::log(p.scale) + std::log(std::beta(p.lambda1 + 1, 1 - p.lambda2));
  }
  double ll = 0.0;
  for (double xi : x) {
    double u = 0.0;
    if (!pp_solve(p, xi, u) || !(u > 0.0 && u < 1.0)) return neg_inf;
    ll -= log_q(p, u);
    if (bias_corrected) ll += std::log(xi) - log_mu;
  }
  return std::isfinite(ll) ? ll : neg_inf;
}

FitResult fit_power_pareto(const LBSample& s, const FitOptions& opts) {
  if (opts.starts == 0) throw validation_error("fit needs at least one start");
  if (!(opts.tolerance > 0)) throw validation_error("fit tolerance must be positive");
  gsl_set_error_handler_off();
  const Objective obj{s.values(), opts.bias_corrected};
  const auto starts = start_points(s.values(), opts.starts, opts.bias_corrected);
  std::vector<StartOutcome> outcomes(starts.size());

  const auto count = static_cast<std::ptrdiff_t>(starts.size());
  const int nthreads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < count; ++i) outcomes[i] = run_nelder_mead(obj, starts[i], opts);

  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i].log_likelihood > outcomes[best].log_likelihood) best = i;

  FitResult r;
  r.params = from_log(outcomes[best].theta.data());
  r.log_likelihood = power_pareto_log_likelihood(s.values(), r.params, opts.bias_corrected);
  r.converged = outcomes[best].converged && std::isfinite(r.log_likelihood);
  r.n_starts_used = starts.size();
  r.bias_corrected = opts.bias_corrected;
  r.start_points = starts;
  for (const auto& p : starts)
    r.start_log_likelihoods.push_back(
        power_pareto_log_likelihood(s.values(), p, opts.bias_corrected));
  return r;
}

double ks_statistic(const LBSample& s, const QuantileModel& model) {
  const auto x = s.values();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = model.cdf(x[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f),
                  std::abs(static_cast<double>(i) / n - f)});
  }
  return d;
}

double ks_critical_value(double alpha, std::size_t n) {
  if (!(alpha > 0 && alpha < 1)) throw validation_error("alpha must lie in (0, 1)");
  return std::sqrt(-0.5 * std::log(alpha / 2)) / std::sqrt(static_cast<double>(n));
}

std::vector<std::pair<double, double>> qq_points(const LBSample& s, const QuantileModel& model) {
  const auto x = s.values();
  const double n = static_cast<double>(x.size());
  std::vector<std::pair<double, double>> pts;
  pts.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    pts.emplace_back(model.quantile((static_cast<double>(i) + 0.5) / n), x[i]);
  return pts;
}

std::string qq_csv(const std::vector<std::pair<double, double>>& points) {
  std::string out = "theoretical,empirical\n";
  for (const auto& [t, e] : points) out += full_precision(t) + "," + full_precision(e) + "\n";
  return out;
}

}  // namespace lbentropy
