#include "lbentropy/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "lbentropy/entropy.hpp"
#include "lbentropy/errors.hpp"

namespace lbentropy::config {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::vector<std::string>& allowed, const char* what) {
  if (!j.is_object()) throw validation_error(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw validation_error(std::string("unknown key '") + key + "' in " + what);
}

template <class T>
T get(const json& j, const char* key, const char* what) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw validation_error(std::string(what) + "." + key + ": " + e.what());
  }
}

std::size_t get_count(const json& j, const char* key, const char* what) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw validation_error(std::string(what) + "." + key + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open config file '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw validation_error("config file '" + path.string() + "': " + e.what());
  }
}

QuantileModel parse_model(const json& j) {
  reject_unknown(j, model_keys, "model");
  const auto family = get<std::string>(j, "family", "model");
  const auto params = get<std::vector<double>>(j, "params", "model");
  return QuantileModel::from_family(family, params);
}

BandwidthRule parse_bandwidth(const std::string& text) {
  if (text == "rot" || text == "rule_of_thumb") return BandwidthRule::rot();
  std::size_t used = 0;
  double h = 0.0;
  try {
    h = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(h > 0) || !std::isfinite(h))
    throw validation_error("bandwidth must be 'rot' or a positive number, got '" + text + "'");
  return BandwidthRule::fixed_at(h);
}

EstimatorConfig parse_estimator_config(const json& j, EstimatorConfig cfg) {
  reject_unknown(j, estimator_keys, "estimator");
  const char* w = "estimator";
  if (j.contains("kernel")) cfg.kernel = parse_kernel(get<std::string>(j, "kernel", w));
  if (j.contains("bandwidth")) {
    const auto& b = j.at("bandwidth");
    if (b.is_number()) {
      const double h = b.get<double>();
      if (!(h > 0)) throw validation_error("estimator.bandwidth must be positive");
      cfg.bandwidth = BandwidthRule::fixed_at(h);
    } else if (b.is_string()) {
      cfg.bandwidth = parse_bandwidth(b.get<std::string>());
    } else {
      throw validation_error("estimator.bandwidth must be \"rot\" or a number");
    }
  }
  if (j.contains("grid_points")) cfg.grid_points = get_count(j, "grid_points", w);
  if (j.contains("trim")) cfg.trim = get<double>(j, "trim", w);
  if (j.contains("log_floor")) cfg.log_floor = get<double>(j, "log_floor", w);
  if (j.contains("x_grid_points")) cfg.x_grid_points = get_count(j, "x_grid_points", w);
  if (j.contains("x_min")) cfg.x_min = get<double>(j, "x_min", w);
  if (j.contains("h2_unweighted")) cfg.h2_unweighted = get<bool>(j, "h2_unweighted", w);
  cfg.validate();
  return cfg;
}

std::vector<EstimatorId> parse_estimator_list(const std::string& csv) {
  std::vector<EstimatorId> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const auto comma = csv.find(',', pos);
    const auto item = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(lbentropy::parse_estimator(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw validation_error("estimator list is empty");
  return out;
}

StudyConfig parse_study(const json& j) {
  reject_unknown(j, study_keys, "study config");
  const char* w = "study";
  StudyConfig cfg;
  if (!j.contains("cells") || !j.at("cells").is_array())
    throw validation_error("study config needs a 'cells' array");
  for (const auto& c : j.at("cells")) {
    reject_unknown(c, cell_keys, "cell");
    if (!c.contains("model") || !c.contains("sample_sizes"))
      throw validation_error("each cell needs 'model' and 'sample_sizes'");
    std::vector<std::size_t> sizes;
    for (const auto& n : c.at("sample_sizes")) {
      if (!n.is_number_integer() || n.get<long long>() < 0)
        throw validation_error("sample_sizes must be nonnegative integers");
      sizes.push_back(n.get<std::size_t>());
    }
    cfg.cells.push_back({parse_model(c.at("model")), std::move(sizes)});
  }
  if (j.contains("replicates")) cfg.replicates = get_count(j, "replicates", w);
  if (j.contains("estimators")) {
    cfg.estimators.clear();
    for (const auto& e : j.at("estimators")) {
      if (!e.is_string()) throw validation_error("estimators must be strings");
      cfg.estimators.push_back(lbentropy::parse_estimator(e.get<std::string>()));
    }
  }
  if (j.contains("estimator")) cfg.est = parse_estimator_config(j.at("estimator"));
  if (j.contains("master_seed")) {
    const auto& s = j.at("master_seed");
    if (!s.is_number_integer()) throw validation_error("master_seed must be an integer");
    cfg.master_seed = s.is_number_unsigned() ? s.get<std::uint64_t>()
                                             : static_cast<std::uint64_t>(s.get<std::int64_t>());
  }
  if (j.contains("truth")) {
    const auto t = get<std::string>(j, "truth", w);
    if (t == "trimmed") cfg.truth = TruthDomain::trimmed;
    else if (t == "full") cfg.truth = TruthDomain::full;
    else throw validation_error("truth must be \"trimmed\" or \"full\"");
  }
  if (j.contains("threads")) cfg.threads = static_cast<int>(get_count(j, "threads", w));
  cfg.validate();
  return cfg;
}

}  // namespace lbentropy::config
