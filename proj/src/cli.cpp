#include "lbentropy/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lbentropy/config.hpp"
#include "lbentropy/entropy.hpp"
#include "lbentropy/errors.hpp"
#include "lbentropy/fitting.hpp"
#include "lbentropy/format.hpp"
#include "lbentropy/sampler.hpp"
#include "lbentropy/simulation.hpp"

namespace lbentropy {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* data_dir_env = "LBENTROPY_DATA_DIR";

const char* estimator_keys_help =
    "Estimator keys (JSON object \"estimator\", or the top level of an estimate/fit config):\n"
    "  kernel         epanechnikov | triangular | uniform (default epanechnikov)\n"
    "  bandwidth      \"rot\" (rule of thumb, default) or a positive number\n"
    "  grid_points    nodes on [trim, 1-trim] (default 501, >= 11)\n"
    "  trim           delta in (0, 0.5) (default 0.01)\n"
    "  log_floor      values below are clamped before log (default 1e-12)\n"
    "  x_grid_points  nodes for the H1/H2 x-integrals (default 1001)\n"
    "  x_min          lower limit of the H1/H2 x-integrals (default 0)\n"
    "  h2_unweighted  H2 uses the unweighted kernel sum over sum(1/Y) (default false)\n";

const char* study_keys_help =
    "Study config keys (JSON):\n"
    "  cells          [{\"model\": {\"family\", \"params\"}, \"sample_sizes\": [n, ...]}, ...]\n"
    "                 family: govindarajulu (theta,sigma,beta) | gld (l1,l2,l3,l4) |\n"
    "                 power_pareto (C,l1,l2) | uniform (a,b)\n"
    "  replicates     Monte-Carlo replicates per cell (default 200, >= 2)\n"
    "  estimators     subset of [\"xi1\", \"xi2\", \"H1\", \"H2\"] (default xi1, xi2)\n"
    "  estimator      estimator settings object (keys below)\n"
    "  master_seed    64-bit seed (default 20250101)\n"
    "  truth          \"trimmed\" (xi rows scored on [trim, 1-trim], default) | \"full\"\n"
    "  threads        worker threads, 0 = all (results never depend on it)\n";

const char* model_keys_help =
    "Model config keys (JSON): {\"family\": ..., \"params\": [...]}\n"
    "  family         govindarajulu | gld | power_pareto | uniform\n"
    "  params         (theta,sigma,beta) | (l1,l2,l3,l4) | (C,l1,l2) | (a,b)\n";

fs::path resolve_data_path(const std::string& p) {
  fs::path path(p);
  if (fs::exists(path) || path.is_absolute()) return path;
  if (const char* dir = std::getenv(data_dir_env)) {
    fs::path alt = fs::path(dir) / path;
    if (fs::exists(alt)) return alt;
    alt = fs::path(dir) / path.filename();
    if (fs::exists(alt)) return alt;
  }
  return path;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw validation_error("cannot write '" + path + "'");
  f << text;
}

std::vector<double> parse_number_list(const std::string& csv) {
  std::vector<double> v;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw validation_error("cannot parse '" + item + "' as a number");
    v.push_back(x);
  }
  return v;
}

// Flags shared by estimate, fit and simulate.
struct EstimatorFlags {
  std::optional<std::string> kernel, bandwidth;
  std::optional<double> trim;
  std::optional<std::size_t> grid_points;

  void add(CLI::App* app) {
    app->add_option("--kernel", kernel, "epanechnikov | triangular | uniform");
    app->add_option("--bandwidth", bandwidth, "\"rot\" or a positive number");
    app->add_option("--trim", trim, "integration trim delta in (0, 0.5)");
    app->add_option("--grid-points", grid_points, "nodes on [trim, 1-trim]");
  }

  EstimatorConfig apply(EstimatorConfig cfg) const {
    if (kernel) cfg.kernel = parse_kernel(*kernel);
    if (bandwidth) cfg.bandwidth = config::parse_bandwidth(*bandwidth);
    if (trim) cfg.trim = *trim;
    if (grid_points) cfg.grid_points = *grid_points;
    cfg.validate();
    return cfg;
  }
};

json estimate_json(const EntropyEstimate& e) {
  return {{"value", e.value},
          {"floored_fraction", e.floored_fraction},
          {"warning", e.warning()},
          {"bandwidth", e.bandwidth}};
}

QuantileModel model_from_flags(const std::optional<std::string>& family,
                               const std::optional<std::string>& params,
                               const std::optional<std::string>& config_path) {
  if (config_path) {
    auto j = config::load_json(*config_path);
    if (j.contains("model")) j = j.at("model");
    return config::parse_model(j);
  }
  if (!family || !params) throw validation_error("give --family and --params, or --config");
  const auto p = parse_number_list(*params);
  return QuantileModel::from_family(*family, p);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantile-based entropy estimation for length-biased samples", "lbentropy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo study: MSE and absolute bias per cell");
  std::string sim_config, sim_output;
  std::optional<std::uint64_t> sim_seed;
  std::optional<std::string> sim_estimators;
  std::optional<std::size_t> sim_replicates;
  std::optional<int> sim_threads;
  bool sim_extra = false;
  EstimatorFlags sim_flags;
  sim->add_option("--config", sim_config, "study config (JSON)")->required();
  sim->add_option("--output,-o", sim_output, "report CSV path (default stdout)");
  sim->add_option("--seed", sim_seed, "overrides master_seed");
  sim->add_option("--estimators", sim_estimators, "comma list of xi1,xi2,H1,H2");
  sim->add_option("--replicates", sim_replicates, "overrides replicates");
  sim->add_option("--threads", sim_threads, "worker threads (default: all cores)");
  sim->add_flag("--extra-columns", sim_extra, "append mae, mse_se, wall_time columns");
  sim_flags.add(sim);
  sim->footer(std::string(study_keys_help) + estimator_keys_help);

  // estimate
  auto* est = app.add_subcommand("estimate", "Entropy estimates for a sample CSV, printed as JSON");
  std::string est_data, est_output;
  std::optional<std::string> est_config;
  std::string est_estimators = "xi1,xi2,H1,H2";
  bool est_verbose = false;
  EstimatorFlags est_flags;
  est->add_option("--data", est_data, "sample CSV (one positive value per line)")->required();
  est->add_option("--config", est_config, "estimator config (JSON)");
  est->add_option("--estimators", est_estimators, "comma list of xi1,xi2,H1,H2");
  est->add_option("--output,-o", est_output, "JSON output path (default stdout)");
  est->add_flag("--verbose,-v", est_verbose, "also report trim sensitivity (delta 0.005, 0.02)");
  est_flags.add(est);
  est->footer(std::string(estimator_keys_help) +
              "Relative --data paths fall back to $" + data_dir_env + ".\n");

  // fit
  auto* fit = app.add_subcommand("fit", "Power-Pareto MLE, KS statistic, Q-Q export and entropy");
  std::string fit_data, fit_output, fit_qq;
  std::optional<std::string> fit_config;
  bool fit_bias = false;
  std::size_t fit_starts = 8;
  EstimatorFlags fit_flags;
  fit->add_option("--data", fit_data, "sample CSV")->required();
  fit->add_option("--config", fit_config, "estimator config (JSON)");
  fit->add_option("--output,-o", fit_output, "fit report JSON path (default stdout)");
  fit->add_option("--qq-output", fit_qq, "write Q-Q pairs CSV (theoretical,empirical)");
  fit->add_flag("--bias-corrected", fit_bias, "fit the length-biased likelihood x f(x)/mu");
  fit->add_option("--starts", fit_starts, "Nelder-Mead multi-starts (default 8)");
  fit_flags.add(fit);
  fit->footer(std::string(estimator_keys_help) +
              "Relative --data paths fall back to $" + data_dir_env + ".\n");

  // sample
  auto* smp = app.add_subcommand("sample", "Draw a length-biased sample from a model (CSV)");
  std::optional<std::string> smp_family, smp_params, smp_config;
  std::size_t smp_n = 100;
  std::uint64_t smp_seed = 1;
  std::string smp_output;
  smp->add_option("--family", smp_family, "govindarajulu | gld | power_pareto | uniform");
  smp->add_option("--params", smp_params, "comma-separated parameters");
  smp->add_option("--config", smp_config, "model config (JSON)");
  smp->add_option("--n", smp_n, "sample size (default 100)");
  smp->add_option("--seed", smp_seed, "random seed (default 1)");
  smp->add_option("--output,-o", smp_output, "CSV path (default stdout)");
  smp->footer(model_keys_help);

  // true-entropy
  auto* ent = app.add_subcommand("true-entropy", "Quantile-based entropy of a model");
  std::optional<std::string> ent_family, ent_params, ent_config;
  double ent_trim = 0.0;
  ent->add_option("--family", ent_family, "govindarajulu | gld | power_pareto | uniform");
  ent->add_option("--params", ent_params, "comma-separated parameters");
  ent->add_option("--config", ent_config, "model config (JSON)");
  ent->add_option("--trim", ent_trim, "integrate over [trim, 1-trim] (default 0)");
  ent->footer(model_keys_help);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << version_string << '\n';
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << sub->help();
    else
      err << app.help();
    return exit_usage;
  }

  try {
    if (sim->parsed()) {
      auto cfg = config::parse_study(config::load_json(sim_config));
      if (sim_seed) cfg.master_seed = *sim_seed;
      if (sim_estimators) cfg.estimators = config::parse_estimator_list(*sim_estimators);
      if (sim_replicates) cfg.replicates = *sim_replicates;
      if (sim_threads) cfg.threads = *sim_threads;
      cfg.est = sim_flags.apply(cfg.est);
      const auto report = run_study(cfg);
      write_text(sim_output, report.to_csv(sim_extra), out);
      for (const auto& r : report.rows)
        err << r.model << " n=" << r.n << ' ' << estimator_name(r.estimator)
            << "  MSE " << four_decimals(r.mse) << "  |bias| " << four_decimals(r.abs_bias)
            << '\n';
      return exit_ok;
    }

    if (est->parsed()) {
      EstimatorConfig cfg;
      if (est_config) cfg = config::parse_estimator_config(config::load_json(*est_config));
      cfg = est_flags.apply(cfg);
      const auto sample = load_sample(resolve_data_path(est_data));
      json j;
      j["n"] = sample.size();
      j["kernel"] = kernel_name(cfg.kernel);
      j["trim"] = cfg.trim;
      j["grid_points"] = cfg.grid_points;
      json details;
      for (auto id : config::parse_estimator_list(est_estimators)) {
        const auto e = estimate(id, sample, cfg);
        const std::string name(estimator_name(id));
        j[name] = e.value;
        j["bandwidth"] = e.bandwidth;
        details[name] = estimate_json(e);
        if (e.warning())
          err << "warning: " << name << " floored " << four_decimals(100 * e.floored_fraction)
              << "% of grid nodes; bandwidth may be too small\n";
        if (est_verbose && (id == EstimatorId::xi1 || id == EstimatorId::xi2)) {
          for (double d : {0.005, 0.02}) {
            auto c2 = cfg;
            c2.trim = d;
            details[name]["trim_" + std::string(d == 0.005 ? "0.005" : "0.02")] = estimate(id, sample, c2).value;
          }
        }
      }
      j["details"] = details;
      write_text(est_output, j.dump(2) + "\n", out);
      return exit_ok;
    }

    if (fit->parsed()) {
      EstimatorConfig cfg;
      if (fit_config) cfg = config::parse_estimator_config(config::load_json(*fit_config));
      cfg = fit_flags.apply(cfg);
      const auto sample = load_sample(resolve_data_path(fit_data));
      FitOptions opts;
      opts.bias_corrected = fit_bias;
      opts.starts = fit_starts;
      const auto r = fit_power_pareto(sample, opts);
      const auto model = r.model();
      const double ks = ks_statistic(sample, model);
      json j;
      j["n"] = sample.size();
      j["params"] = {{"C", r.params.scale}, {"lambda1", r.params.lambda1},
                     {"lambda2", r.params.lambda2}};
      j["loglik"] = r.log_likelihood;
      j["converged"] = r.converged;
      j["bias_corrected"] = r.bias_corrected;
      j["starts"] = r.n_starts_used;
      j["ks"] = ks;
      j["ks_reference"] = {{"0.10", ks_critical_value(0.10, sample.size())},
                           {"0.05", ks_critical_value(0.05, sample.size())},
                           {"0.01", ks_critical_value(0.01, sample.size())}};
      j["true_entropy"] = true_entropy(model, cfg.trim);
      j["true_entropy_untrimmed"] = true_entropy(model, 0.0);
      j["xi1"] = xi1(sample, cfg).value;
      j["xi2"] = xi2(sample, cfg).value;
      j["trim"] = cfg.trim;
      if (!fit_qq.empty()) write_text(fit_qq, qq_csv(qq_points(sample, model)), out);
      write_text(fit_output, j.dump(2) + "\n", out);
      err << "KS D = " << four_decimals(ks) << " (asymptotic 5% reference "
          << four_decimals(ks_critical_value(0.05, sample.size())) << ")\n";
      if (!r.converged) {
        err << "error: Nelder-Mead did not converge from any start\n";
        return exit_numerical;
      }
      return exit_ok;
    }

    if (smp->parsed()) {
      const auto model = model_from_flags(smp_family, smp_params, smp_config);
      const LBSampler sampler(model);
      RandomStream rng(smp_seed);
      const auto s = sampler.sample(smp_n, rng);
      std::string text = "y\n";
      for (double y : s.values()) text += full_precision(y) + "\n";
      write_text(smp_output, text, out);
      return exit_ok;
    }

    if (ent->parsed()) {
      const auto model = model_from_flags(ent_family, ent_params, ent_config);
      out << full_precision(true_entropy(model, ent_trim)) << '\n';
      return exit_ok;
    }
  } catch (const validation_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const numerical_error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  }
  return exit_usage;
}

}  // namespace lbentropy
