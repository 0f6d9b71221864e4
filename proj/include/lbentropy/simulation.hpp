#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lbentropy/entropy.hpp"
#include "lbentropy/models.hpp"

namespace lbentropy {

inline constexpr const char* version_string = "0.1.0";

// Which integral a xi-estimator row is scored against. H rows always use the
// untrimmed value (the differential entropy).
enum class TruthDomain { trimmed, full };

struct StudyCell {
  QuantileModel model;
  std::vector<std::size_t> sample_sizes;
};

struct StudyConfig {
  std::vector<StudyCell> cells;
  std::size_t replicates = 200;
  std::vector<EstimatorId> estimators{EstimatorId::xi1, EstimatorId::xi2};
  EstimatorConfig est{};
  std::uint64_t master_seed = 20250101;
  TruthDomain truth = TruthDomain::trimmed;
  int threads = 0;  // 0: OpenMP default; never affects results

  /// R >= 2, sizes >= 10, at least one cell and one estimator.
  void validate() const;
};

struct Aggregate {
  double mse;
  double abs_bias;   // |mean - truth|
  double mean;
  double mae;        // mean |estimate - truth|
  double mse_se;     // Monte-Carlo standard error of the MSE
  double variance;   // (1/R) sum (estimate - mean)^2
};

/// Throws validation_error on fewer than 2 estimates or non-finite input.
Aggregate aggregate(std::span<const double> estimates, double truth);

struct ReportRow {
  std::string model;
  std::vector<double> params;
  std::size_t n = 0;
  EstimatorId estimator = EstimatorId::xi1;
  double truth = 0.0;
  double mse = 0.0;
  double abs_bias = 0.0;
  double mean_estimate = 0.0;
  std::size_t failures = 0;
  double floored_frac = 0.0;
  double mae = 0.0;
  double mse_se = 0.0;
  double wall_time = 0.0;
  std::vector<double> estimates;  // per replicate, replicate order; NaN = failed
};

struct StudyReport {
  std::vector<ReportRow> rows;
  std::uint64_t master_seed = 0;
  std::uint64_t config_hash = 0;
  std::size_t replicates = 0;

  /// Provenance comment line, header, one line per row. `extra_columns` adds
  /// mae, mse_se and wall_time (the latter breaks byte-reproducibility).
  std::string to_csv(bool extra_columns = false) const;
};

/// Value the estimator targets for this model.
double estimand(const QuantileModel& model, EstimatorId id, const EstimatorConfig& cfg,
                TruthDomain truth);

/// Stream key of a (model, n) cell; depends only on the model and n.
std::uint64_t cell_id(const QuantileModel& model, std::size_t n);

/// R replicates of length-biased samples, every estimator on each; one row
/// per estimator. Replicate r draws from stream (master_seed, cell_id, r),
/// so results do not depend on thread count or on the estimator list.
/// Failed replicates are excluded and counted; more than 1% failures for an
/// estimator throws numerical_error.
std::vector<ReportRow> run_cell(const QuantileModel& model, std::size_t n, std::size_t replicates,
                                std::span<const EstimatorId> estimators,
                                const EstimatorConfig& cfg, std::uint64_t master_seed,
                                TruthDomain truth = TruthDomain::trimmed, int threads = 0);

StudyReport run_study(const StudyConfig& cfg);

/// Canonical text form of everything in the config that affects results.
std::string canonical_form(const StudyConfig& cfg);

}  // namespace lbentropy
