#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lbentropy/cli.hpp"
#include "lbentropy/config.hpp"
#include "support.hpp"

using namespace lbentropy;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const auto d = fs::temp_directory_path() / "lbentropy_cli_test";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path write_study() {
  const auto p = scratch_dir() / "study.json";
  std::ofstream(p) << R"({
    "replicates": 16,
    "estimators": ["xi1", "xi2", "H2"],
    "cells": [{"model": {"family": "govindarajulu", "params": [0, 1, 1]},
               "sample_sizes": [40, 80]}]
  })";
  return p;
}

fs::path write_sample() {
  const auto p = scratch_dir() / "sample.csv";
  REQUIRE(cli({"sample", "--family", "power_pareto", "--params", "1.5,0.6,0.1", "--n", "120",
               "--seed", "3", "-o", p.string()})
              .code == 0);
  return p;
}

}  // namespace

TEST_CASE("true-entropy prints the closed form") {
  auto r = cli({"true-entropy", "--family", "govindarajulu", "--params", "0,1,1"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(-0.306853).epsilon(1e-6));
  r = cli({"true-entropy", "--family", "power_pareto", "--params", "1.5827,0.6368,0.1016",
           "--trim", "0.01"});
  CHECK(r.code == 0);
  CHECK(std::abs(std::stod(r.out) - 0.7570) < 0.002);
}

TEST_CASE("missing config names the path and exits 2") {
  const auto r = cli({"simulate", "--config", "missing.json"});
  CHECK(r.code == 2);
  CHECK(r.err.find("missing.json") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"true-entropy", "--nope"}).code == 2);
  CHECK(cli({"true-entropy", "--family", "govindarajulu", "--params", "0,1"}).code == 2);
  CHECK(cli({"true-entropy", "--family", "gld", "--params", "0,1,1,1"}).code == 2);
  CHECK(cli({"sample", "--family", "uniform", "--params", "0,1", "--n", "1"}).code == 2);
}

TEST_CASE("help documents every config key") {
  auto has_all = [](const std::string& text, const std::vector<std::string>& keys) {
    for (const auto& k : keys) {
      CAPTURE(k);
      CHECK(text.find(k) != std::string::npos);
    }
  };
  const auto sim = cli({"simulate", "--help"});
  CHECK(sim.code == 0);
  has_all(sim.out, config::study_keys);
  has_all(sim.out, config::cell_keys);
  has_all(sim.out, config::model_keys);
  has_all(sim.out, config::estimator_keys);
  for (const char* sub : {"estimate", "fit"}) has_all(cli({sub, "--help"}).out, config::estimator_keys);
  for (const char* sub : {"sample", "true-entropy"}) has_all(cli({sub, "--help"}).out, config::model_keys);
}

TEST_CASE("sample is reproducible from its seed") {
  const auto a = cli({"sample", "--family", "gld", "--params", "2,1,3,5", "--n", "50", "--seed", "8"});
  const auto b = cli({"sample", "--family", "gld", "--params", "2,1,3,5", "--n", "50", "--seed", "8"});
  const auto c = cli({"sample", "--family", "gld", "--params", "2,1,3,5", "--n", "50", "--seed", "9"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(a.out.rfind("y\n", 0) == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 51);
}

TEST_CASE("simulate is byte-identical across runs and thread counts") {
  const auto cfg = write_study().string();
  const auto dir = scratch_dir();
  for (const char* t : {"1", "8"}) {
    const auto out = (dir / (std::string("sim_") + t + ".csv")).string();
    REQUIRE(cli({"simulate", "--config", cfg, "--seed", "5", "--threads", t, "-o", out}).code == 0);
  }
  const auto a = slurp(dir / "sim_1.csv");
  CHECK(a == slurp(dir / "sim_8.csv"));
  const auto again = cli({"simulate", "--config", cfg, "--seed", "5"});
  CHECK(again.out == a);
  CHECK(a.find("master_seed=5 ") != std::string::npos);
  CHECK(std::count(a.begin(), a.end(), '\n') == 2 + 6);
}

TEST_CASE("simulate flags override the config") {
  const auto cfg = write_study().string();
  const auto r = cli({"simulate", "--config", cfg, "--estimators", "xi2", "--replicates", "5",
                      "--trim", "0.02", "--extra-columns"});
  CHECK(r.code == 0);
  CHECK(r.out.find("replicates=5") != std::string::npos);
  CHECK(r.out.find(",xi1,") == std::string::npos);
  CHECK(r.out.find(",wall_time") != std::string::npos);
  CHECK(cli({"simulate", "--config", cfg, "--kernel", "gaussian"}).code == 2);
  CHECK(cli({"simulate", "--config", cfg, "--bandwidth", "-1"}).code == 2);
}

TEST_CASE("config errors exit 2") {
  const auto p = scratch_dir() / "bad.json";
  std::ofstream(p) << R"({"cells": [], "replicates": 10})";
  CHECK(cli({"simulate", "--config", p.string()}).code == 2);
  std::ofstream(p) << R"({"cells": [{"model": {"family": "uniform", "params": [0, 1]},
                        "sample_sizes": [20]}], "replicatez": 10})";
  const auto r = cli({"simulate", "--config", p.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("replicatez") != std::string::npos);
  std::ofstream(p) << "{ not json";
  CHECK(cli({"simulate", "--config", p.string()}).code == 2);
}

TEST_CASE("estimate prints all four estimators as JSON") {
  const auto data = write_sample().string();
  const auto r = cli({"estimate", "--data", data, "-v"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* k : {"xi1", "xi2", "H1", "H2"}) CHECK(j.at(k).is_number());
  CHECK(j.at("n") == 120);
  CHECK(r.out.find("trim_0.005") != std::string::npos);
  CHECK(r.out.find("trim_0.02") != std::string::npos);
  const auto two = nlohmann::json::parse(cli({"estimate", "--data", data, "--estimators", "xi1,xi2"}).out);
  CHECK(two.contains("xi1"));
  CHECK_FALSE(two.contains("H1"));
  CHECK(two.at("xi1") == j.at("xi1"));
}

TEST_CASE("estimate resolves relative paths against the data directory") {
  write_sample();
  ::setenv("LBENTROPY_DATA_DIR", scratch_dir().c_str(), 1);
  const auto r = cli({"estimate", "--data", "sample.csv", "--estimators", "xi2"});
  ::unsetenv("LBENTROPY_DATA_DIR");
  CHECK(r.code == 0);
  CHECK(cli({"estimate", "--data", "no_such_file.csv"}).code == 2);
}

TEST_CASE("bad data rows exit 2 with the line number") {
  const auto p = scratch_dir() / "bad.csv";
  std::ofstream(p) << "w\n1.0\n-2\n";
  const auto r = cli({"estimate", "--data", p.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("fit report and Q-Q output") {
  const auto data = write_sample().string();
  const auto qq = (scratch_dir() / "qq.csv").string();
  const auto r = cli({"fit", "--data", data, "--qq-output", qq});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* k : {"C", "lambda1", "lambda2"}) CHECK(j.at("params").at(k).is_number());
  for (const char* k : {"loglik", "converged", "ks", "n", "xi1", "xi2", "true_entropy"})
    CHECK(j.contains(k));
  const auto text = slurp(qq);
  CHECK(text.rfind("theoretical,empirical\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 121);
}

TEST_CASE("shipped study configs are valid") {
  const char* root = std::getenv("LBENTROPY_SOURCE_DIR");
  REQUIRE(root != nullptr);
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(fs::path(root) / "configs")) {
    CAPTURE(entry.path().string());
    const auto cfg = config::parse_study(config::load_json(entry.path()));
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.replicates == 500);
    ++count;
  }
  CHECK(count == 5);
}
