#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gseelab/errors.hpp"
#include "gseelab/harness.hpp"

using namespace gseelab;

namespace {

ExperimentConfig basic_config() {
    ExperimentConfig cfg;
    cfg.algorithm = "basic";
    cfg.backend = "ideal";
    cfg.energies = {0.3, 0.9};
    cfg.weights = {1.0, 0.0};
    cfg.eps = {0.05};
    cfg.delta = {0.1};
    cfg.Delta = {0.4};
    cfg.eta = {1.0};
    cfg.seeds = 100;
    cfg.master_seed = 11;
    return cfg;
}

} // namespace

TEST_CASE("config json round trip and hashing") {
    ExperimentConfig cfg = basic_config();
    const nlohmann::json j = config_to_json(cfg);
    const ExperimentConfig back = config_from_json(j);
    CHECK(back.algorithm == "basic");
    CHECK(back.eps == cfg.eps);
    CHECK(back.seeds == 100);
    CHECK(config_hash(back) == config_hash(cfg));

    ExperimentConfig other = cfg;
    other.eps = {0.04};
    CHECK(config_hash(other) != config_hash(cfg));

    // output location must not perturb the hash
    ExperimentConfig moved = cfg;
    moved.out_dir = "/tmp/somewhere-else";
    moved.threads = 7;
    CHECK(config_hash(moved) == config_hash(cfg));
}

TEST_CASE("scalar grids parse as one-element arrays") {
    nlohmann::json j;
    j["algorithm"] = "basic";
    j["energies"] = {0.1, 0.9};
    j["weights"] = {1.0, 0.0};
    j["eps"] = 0.05;
    j["delta"] = 0.1;
    j["eta"] = 1.0;
    j["seeds"] = 2;
    const ExperimentConfig cfg = config_from_json(j);
    REQUIRE(cfg.eps.size() == 1);
    CHECK(cfg.eps[0] == doctest::Approx(0.05));
}

TEST_CASE("zero trials yields a header-only csv") {
    ExperimentConfig cfg = basic_config();
    cfg.seeds = 0;
    const RunRecord rec = run_experiment(cfg);
    CHECK(rec.rows.empty());
    const std::string csv = record_csv(rec);
    CHECK(csv.find('\n') == csv.size() - 1); // exactly one line
    CHECK(csv.rfind("index,", 0) == 0);
}

TEST_CASE("bisection experiment succeeds at the configured rate") {
    const RunRecord rec = run_experiment(basic_config());
    REQUIRE(rec.rows.size() == 100);
    // delta = 0.1 with a three-sigma binomial allowance
    CHECK(rec.success_rate >= 0.9 - 3.0 * std::sqrt(0.9 * 0.1 / 100.0));
    for (const auto& row : rec.rows) CHECK(row.status == "ok");
}

TEST_CASE("reruns and thread counts leave the csv bytes unchanged") {
    ExperimentConfig cfg = basic_config();
    cfg.seeds = 12;
    cfg.threads = 1;
    const std::string a = record_csv(run_experiment(cfg));
    const std::string b = record_csv(run_experiment(cfg));
    CHECK(a == b);
    cfg.threads = 4;
    const std::string c = record_csv(run_experiment(cfg));
    CHECK(a == c);
}

TEST_CASE("family specs synthesize with the requested overlap") {
    ExperimentConfig cfg;
    cfg.family_levels = 8;
    cfg.family_E0 = -0.6;
    cfg.family_gap = 0.3;
    cfg.family_p0 = 0.5;
    const SpectralMeasure spec = spec_from_config(cfg);
    REQUIRE(spec.levels() == 8);
    CHECK(spec.energies[0] == doctest::Approx(-0.6));
    CHECK(spec.energies[1] == doctest::Approx(-0.3));
    CHECK(spec.weights[0] == doctest::Approx(0.5));
    CHECK(spec.gap_true() == doctest::Approx(0.3));
}

TEST_CASE("emit writes both artifacts") {
    ExperimentConfig cfg = basic_config();
    cfg.seeds = 3;
    cfg.out_dir = (std::filesystem::temp_directory_path() / "gseelab_emit_test").string();
    cfg.stem = "probe";
    const RunRecord rec = run_experiment(cfg);
    emit(cfg, rec);
    const auto csv_path = std::filesystem::path(cfg.out_dir) / "probe.csv";
    const auto json_path = std::filesystem::path(cfg.out_dir) / "probe.json";
    REQUIRE(std::filesystem::exists(csv_path));
    REQUIRE(std::filesystem::exists(json_path));
    std::ifstream jf(json_path);
    nlohmann::json j;
    jf >> j;
    CHECK(j["config_hash"] == rec.config_hash_hex);
    CHECK(j["config"]["algorithm"] == "basic");
    std::filesystem::remove_all(cfg.out_dir);
}

TEST_CASE("lemma sweep runs clean") {
    const LemmaReport rep = lemma_suite(false);
    CHECK(rep.tuples_checked >= 200);
    CHECK(rep.violations == 0);
    CHECK(rep.failures.empty());
    CHECK(rep.ideal_ok);
    CHECK(rep.noisy_ok);
    CHECK(rep.separation_ok);
    CHECK(rep.series_ok);
}
