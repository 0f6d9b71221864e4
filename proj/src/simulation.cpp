#include "lbentropy/simulation.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include <omp.h>

#include "lbentropy/errors.hpp"
#include "lbentropy/format.hpp"
#include "lbentropy/rng.hpp"
#include "lbentropy/sampler.hpp"

namespace lbentropy {

void StudyConfig::validate() const {
  if (cells.empty()) throw validation_error("study has no cells");
  if (replicates < 2) throw validation_error("replicates must be at least 2");
  if (estimators.empty()) throw validation_error("study has no estimators");
  for (const auto& c : cells) {
    if (c.sample_sizes.empty())
      throw validation_error("cell " + c.model.id() + " has no sample sizes");
    for (auto n : c.sample_sizes)
      if (n < 10) throw validation_error("sample sizes must be at least 10");
  }
  est.validate();
}

Aggregate aggregate(std::span<const double> estimates, double truth) {
  if (estimates.size() < 2) throw validation_error("aggregate needs at least 2 estimates");
  if (!std::isfinite(truth)) throw validation_error("aggregate: truth is not finite");
  const double r = static_cast<double>(estimates.size());
  double sum = 0.0, sq = 0.0, abs_err = 0.0;
  for (double e : estimates) {
    if (!std::isfinite(e)) throw validation_error("aggregate: non-finite estimate");
    sum += e;
    sq += (e - truth) * (e - truth);
    abs_err += std::abs(e - truth);
  }
  const double mean = sum / r;
  const double mse = sq / r;
  double var = 0.0, sq_dev = 0.0;
  for (double e : estimates) {
    var += (e - mean) * (e - mean);
    const double d = (e - truth) * (e - truth) - mse;
    sq_dev += d * d;
  }
  return {mse, std::abs(mean - truth), mean, abs_err / r, std::sqrt(sq_dev / (r - 1) / r),
          var / r};
}

double estimand(const QuantileModel& model, EstimatorId id, const EstimatorConfig& cfg,
                TruthDomain truth) {
  const bool trimmed = truth == TruthDomain::trimmed &&
                       (id == EstimatorId::xi1 || id == EstimatorId::xi2);
  return true_entropy(model, trimmed ? cfg.trim : 0.0);
}

std::uint64_t cell_id(const QuantileModel& model, std::size_t n) {
  const std::string key = model.id() + "#" + std::to_string(n);
  return fnv1a(key.data(), key.size());
}

std::vector<ReportRow> run_cell(const QuantileModel& model, std::size_t n, std::size_t replicates,
                                std::span<const EstimatorId> estimators,
                                const EstimatorConfig& cfg, std::uint64_t master_seed,
                                TruthDomain truth, int threads) {
  if (replicates < 2) throw validation_error("replicates must be at least 2");
  if (estimators.empty()) throw validation_error("no estimators requested");
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const LBSampler sampler(model);
  const std::uint64_t cell = cell_id(model, n);
  const std::size_t k = estimators.size();
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> value(replicates * k, nan);
  std::vector<double> floored(replicates * k, nan);

  const auto reps = static_cast<std::ptrdiff_t>(replicates);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (std::ptrdiff_t r = 0; r < reps; ++r) {
    auto rng = RandomStream::for_replicate(master_seed, cell, static_cast<std::uint64_t>(r));
    try {
      const LBSample s = sampler.sample(n, rng);
      for (std::size_t e = 0; e < k; ++e) {
        try {
          const auto est = estimate(estimators[e], s, cfg);
          if (std::isfinite(est.value)) {
            value[r * k + e] = est.value;
            floored[r * k + e] = est.floored_fraction;
          }
        } catch (const std::exception&) {
          // recorded as a failure below
        }
      }
    } catch (const std::exception&) {
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<ReportRow> rows;
  for (std::size_t e = 0; e < k; ++e) {
    ReportRow row;
    row.model = model.family();
    row.params = model.param_vector();
    row.n = n;
    row.estimator = estimators[e];
    row.truth = estimand(model, estimators[e], cfg, truth);
    std::vector<double> ok;
    double floored_sum = 0.0;
    for (std::size_t r = 0; r < replicates; ++r) {
      const double v = value[r * k + e];
      row.estimates.push_back(v);
      if (std::isfinite(v)) {
        ok.push_back(v);
        floored_sum += floored[r * k + e];
      }
    }
    row.failures = replicates - ok.size();
    if (static_cast<double>(row.failures) > 0.01 * static_cast<double>(replicates) ||
        ok.size() < 2)
      throw numerical_error(model.id() + " n=" + std::to_string(n) + " " +
                            std::string(estimator_name(estimators[e])) + ": " +
                            std::to_string(row.failures) + " of " + std::to_string(replicates) +
                            " replicates failed (limit 1%)");
    const auto agg = aggregate(ok, row.truth);
    row.mse = agg.mse;
    row.abs_bias = agg.abs_bias;
    row.mean_estimate = agg.mean;
    row.mae = agg.mae;
    row.mse_se = agg.mse_se;
    row.floored_frac = floored_sum / static_cast<double>(ok.size());
    row.wall_time = elapsed;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string canonical_form(const StudyConfig& cfg) {
  std::ostringstream os;
  os << "replicates=" << cfg.replicates << ";seed=" << cfg.master_seed
     << ";truth=" << (cfg.truth == TruthDomain::trimmed ? "trimmed" : "full") << ";estimators=";
  for (auto e : cfg.estimators) os << estimator_name(e) << ',';
  const auto& est = cfg.est;
  os << ";kernel=" << kernel_name(est.kernel) << ";bandwidth="
     << (est.bandwidth.kind == BandwidthRule::Kind::fixed ? full_precision(est.bandwidth.value)
                                                          : std::string("rot"))
     << ";m=" << est.grid_points << ";trim=" << full_precision(est.trim)
     << ";floor=" << full_precision(est.log_floor) << ";mx=" << est.x_grid_points
     << ";xmin=" << full_precision(est.x_min) << ";h2_unweighted=" << est.h2_unweighted
     << ";cells=";
  for (const auto& c : cfg.cells) {
    os << c.model.id() << '[';
    for (auto n : c.sample_sizes) os << n << ',';
    os << ']';
  }
  return os.str();
}

StudyReport run_study(const StudyConfig& cfg) {
  cfg.validate();
  for (const auto& c : cfg.cells) {
    // Fail before any work if a truth value cannot be computed.
    for (auto e : cfg.estimators) (void)estimand(c.model, e, cfg.est, cfg.truth);
  }
  StudyReport report;
  report.master_seed = cfg.master_seed;
  report.replicates = cfg.replicates;
  const auto canon = canonical_form(cfg);
  report.config_hash = fnv1a(canon.data(), canon.size());
  for (const auto& c : cfg.cells)
    for (auto n : c.sample_sizes) {
      auto rows = run_cell(c.model, n, cfg.replicates, cfg.estimators, cfg.est,
                           cfg.master_seed, cfg.truth, cfg.threads);
      for (auto& r : rows) report.rows.push_back(std::move(r));
    }
  return report;
}

std::string StudyReport::to_csv(bool extra_columns) const {
  std::ostringstream os;
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash));
  os << "# lbentropy " << version_string << " master_seed=" << master_seed
     << " config_hash=" << hash << " replicates=" << replicates << '\n';
  os << "model,params,n,estimator,truth,mse,abs_bias,mean_estimate,failures,floored_frac";
  if (extra_columns) os << ",mae,mse_se,wall_time";
  os << '\n';
  for (const auto& r : rows) {
    os << r.model << ',';
    for (std::size_t i = 0; i < r.params.size(); ++i)
      os << (i ? ";" : "") << full_precision(r.params[i]);
    os << ',' << r.n << ',' << estimator_name(r.estimator) << ',' << full_precision(r.truth)
       << ',' << full_precision(r.mse) << ',' << full_precision(r.abs_bias) << ','
       << full_precision(r.mean_estimate) << ',' << r.failures << ','
       << full_precision(r.floored_frac);
    if (extra_columns)
      os << ',' << full_precision(r.mae) << ',' << full_precision(r.mse_se) << ','
         << full_precision(r.wall_time);
    os << '\n';
  }
  return os.str();
}

}  // namespace lbentropy
