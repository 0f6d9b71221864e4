#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "lbentropy/errors.hpp"
#include "lbentropy/fitting.hpp"
#include "support.hpp"

using namespace lbentropy;

namespace {

// Unbiased draws x = Q(U).
LBSample plain_sample(const PowerPareto& p, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(0, 1);
  const QuantileModel m(p);
  std::vector<double> x(n);
  for (auto& v : x) v = m.quantile(u(g));
  return LBSample(x);
}

double ks_brute(const LBSample& s, const QuantileModel& m) {
  const auto x = s.values();
  const double n = static_cast<double>(x.size());
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Empirical CDF just below and at x_(i).
    double below = 0, at = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] < x[i]) below += 1;
      if (x[k] <= x[i]) at += 1;
    }
    const double f = m.cdf(x[i]);
    d = std::max({d, std::abs(at / n - f), std::abs(below / n - f)});
  }
  return d;
}

}  // namespace

TEST_CASE("parse plain column") {
  const auto s = parse_sample("1.0\n2.0\n3.0\n");
  REQUIRE(s.size() == 3);
  CHECK(s.values()[0] == 1.0);
  CHECK(s.values()[2] == 3.0);
}

TEST_CASE("parse header, CRLF, BOM and blank lines") {
  const auto s = parse_sample("\xEF\xBB\xBFwidth\r\n0.5\r\n\r\n1.5\r\n");
  REQUIRE(s.size() == 2);
  CHECK(s.values()[1] == 1.5);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_sample("width\n0.5\n"), validation_error);
  try {
    parse_sample("1.0\n2.0\n-1.0\n");
    FAIL("expected an error");
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_sample("1.0\nabc\n3\n");
    FAIL("expected an error");
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_sample("1\n0\n"), validation_error);
  CHECK_THROWS_AS(parse_sample("1\ninf\n"), validation_error);
  CHECK_THROWS_AS(load_sample("/nonexistent/file.csv"), validation_error);
}

TEST_CASE("load sample from disk") {
  const auto p = std::filesystem::temp_directory_path() / "lbentropy_load_test.csv";
  std::ofstream(p) << "y\n2\n1\n4\n";
  const auto s = load_sample(p);
  CHECK(s.size() == 3);
  CHECK(s.front() == 1.0);
  std::filesystem::remove(p);
}

TEST_CASE("inner root solves meet the tolerance") {
  const PowerPareto p{1.5827, 0.6368, 0.1016};
  const QuantileModel m(p);
  const auto s = plain_sample(p, 500, 3);
  const auto u = power_pareto_uniforms(s.values(), p);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s.values()[i];
    CHECK(std::abs(m.quantile(u[i]) - x) <= 1e-10 * std::max(1.0, x));
  }
}

TEST_CASE("log likelihood is -inf outside the support") {
  const std::vector<double> x{0.5, 1.0, 3.0};
  CHECK(std::isinf(power_pareto_log_likelihood(x, {2.0, 1.0, 0.0})));
  CHECK(std::isfinite(power_pareto_log_likelihood(x, {1.0, 0.5, 0.3})));
  CHECK(std::isinf(power_pareto_log_likelihood(x, {1.0, 0.5, 1.5}, true)));
}

TEST_CASE("bias-corrected likelihood uses the beta-function mean") {
  const PowerPareto p{1.3, 0.7, 0.2};
  const std::vector<double> x{0.4, 1.1, 2.0};
  const double mu = QuantileModel(p).mean();
  double expect = power_pareto_log_likelihood(x, p);
  for (double v : x) expect += std::log(v / mu);
  CHECK(power_pareto_log_likelihood(x, p, true) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("fit recovers parameters from 2000 plain draws") {
  const PowerPareto truth{1.5, 0.6, 0.1};
  const auto fit = fit_power_pareto(plain_sample(truth, 2000, 77));
  CHECK(fit.converged);
  CHECK(std::abs(fit.params.scale - truth.scale) < 0.1);
  CHECK(std::abs(fit.params.lambda1 - truth.lambda1) < 0.1);
  CHECK(std::abs(fit.params.lambda2 - truth.lambda2) < 0.1);
  CHECK(fit.n_starts_used == 8);
  for (double ll : fit.start_log_likelihoods) {
    CHECK(std::isfinite(ll));  // infeasible starts are widened before use
    CHECK(fit.log_likelihood >= ll);
  }
}

TEST_CASE("fit with a pure power truth drives lambda2 to the boundary") {
  const auto fit = fit_power_pareto(plain_sample({2.0, 0.8, 0.0}, 2000, 5));
  CHECK(fit.params.lambda2 < 0.05);
  CHECK(std::abs(fit.params.lambda1 - 0.8) < 0.1);
}

TEST_CASE("fit is invariant to sample order and thread count") {
  std::vector<double> x;
  for (double v : plain_sample({1.2, 0.5, 0.15}, 300, 8).values()) x.push_back(v);
  FitOptions a, b;
  a.threads = 1;
  b.threads = 4;
  const auto f1 = fit_power_pareto(LBSample(x), a);
  std::shuffle(x.begin(), x.end(), std::mt19937_64(1));
  const auto f2 = fit_power_pareto(LBSample(x), b);
  CHECK(std::abs(f1.params.scale - f2.params.scale) < 1e-4);
  CHECK(std::abs(f1.params.lambda1 - f2.params.lambda1) < 1e-4);
  CHECK(std::abs(f1.params.lambda2 - f2.params.lambda2) < 1e-4);
}

TEST_CASE("more starts never lose likelihood") {
  const auto s = plain_sample({1.0, 1.0, 0.3}, 200, 12);
  FitOptions many;
  many.starts = 16;
  const auto f8 = fit_power_pareto(s);
  const auto f16 = fit_power_pareto(s, many);
  CHECK(f16.n_starts_used == 16);
  CHECK(f16.log_likelihood >= f8.log_likelihood - 1e-6);
  for (double ll : f16.start_log_likelihoods) CHECK(f16.log_likelihood >= ll);
}

TEST_CASE("bias-corrected fit") {
  FitOptions o;
  o.bias_corrected = true;
  const auto f = fit_power_pareto(plain_sample({1.5, 0.6, 0.1}, 400, 2), o);
  CHECK(f.bias_corrected);
  CHECK(std::isfinite(f.log_likelihood));
  CHECK(f.params.lambda2 < 1.0);
}

TEST_CASE("ks statistic at plotting positions is 0.5/n") {
  for (const auto& m : {QuantileModel(PowerPareto{1.5, 0.6, 0.1}), QuantileModel(Govindarajulu{0, 1, 1}),
                        QuantileModel(Gld{2, 1, 3, 5})}) {
    for (std::size_t n : {5u, 46u, 300u}) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = m.quantile((i + 0.5) / n);
      CHECK(ks_statistic(LBSample(x), m) == doctest::Approx(0.5 / n).epsilon(1e-8));
    }
  }
}

TEST_CASE("ks statistic under total separation") {
  const QuantileModel m(UniformDist{0, 1});
  CHECK(ks_statistic(LBSample({50, 51, 52, 53}), m) == 1.0);
}

TEST_CASE("ks statistic matches the double-loop definition") {
  std::mt19937_64 g(4);
  std::uniform_int_distribution<int> size(2, 50);
  const QuantileModel m(PowerPareto{1.5, 0.6, 0.1});
  for (int trial = 0; trial < 200; ++trial) {
    auto v = testing::random_values(g, size(g), 0.05, 8);
    if (trial % 5 == 0) v.push_back(v.front());  // ties
    const LBSample s(v);
    const double d = ks_statistic(s, m);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    CHECK(d == doctest::Approx(ks_brute(s, m)).epsilon(1e-12));
  }
}

TEST_CASE("ks reference values") {
  CHECK(ks_critical_value(0.05, 46) == doctest::Approx(1.3581 / std::sqrt(46.0)).epsilon(1e-4));
  CHECK(ks_critical_value(0.01, 100) == doctest::Approx(0.16276).epsilon(1e-4));
}

TEST_CASE("qq points") {
  const QuantileModel m(Gld{2, 1, 3, 5});
  const auto pts = qq_points(LBSample({m.quantile(0.25), m.quantile(0.75)}), m);
  REQUIRE(pts.size() == 2);
  for (auto [t, e] : pts) CHECK(t == doctest::Approx(e).epsilon(1e-15));
  std::mt19937_64 g(1);
  const auto many = qq_points(LBSample(testing::random_values(g, 40, 1.0, 3.0)), m);
  CHECK(many.size() == 40);
  for (std::size_t i = 1; i < many.size(); ++i) {
    CHECK(many[i].first >= many[i - 1].first);
    CHECK(many[i].second >= many[i - 1].second);
  }
  const auto csv = qq_csv(pts);
  CHECK(csv.rfind("theoretical,empirical\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
