#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lbentropy/estimators.hpp"
#include "lbentropy/models.hpp"
#include "lbentropy/simulation.hpp"

namespace lbentropy::config {

// JSON config schema. Unknown keys are rejected so typos surface as errors.
//
//   model:     {"family": "govindarajulu"|"gld"|"power_pareto"|"uniform",
//               "params": [...]}
//   estimator: {"kernel", "bandwidth" ("rot" or a positive number),
//               "grid_points", "trim", "log_floor", "x_grid_points", "x_min",
//               "h2_unweighted"}
//   study:     {"cells": [{"model": <model>, "sample_sizes": [...]}],
//               "replicates", "estimators": [...], "estimator": <estimator>,
//               "master_seed", "truth" ("trimmed"|"full"), "threads"}

inline const std::vector<std::string> model_keys = {"family", "params"};
inline const std::vector<std::string> estimator_keys = {
    "kernel", "bandwidth", "grid_points", "trim", "log_floor", "x_grid_points", "x_min",
    "h2_unweighted"};
inline const std::vector<std::string> study_keys = {
    "cells", "replicates", "estimators", "estimator", "master_seed", "truth", "threads"};
inline const std::vector<std::string> cell_keys = {"model", "sample_sizes"};

/// Reads and parses a JSON file; validation_error naming the path on failure.
nlohmann::json load_json(const std::filesystem::path& path);

QuantileModel parse_model(const nlohmann::json& j);
/// Overlays keys present in j onto base.
EstimatorConfig parse_estimator_config(const nlohmann::json& j, EstimatorConfig base = {});
BandwidthRule parse_bandwidth(const std::string& text);
std::vector<EstimatorId> parse_estimator_list(const std::string& csv);
StudyConfig parse_study(const nlohmann::json& j);

}  // namespace lbentropy::config
