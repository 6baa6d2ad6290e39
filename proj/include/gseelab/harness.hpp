#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gseelab/certify.hpp"
#include "gseelab/gsee.hpp"
#include "gseelab/spectrum.hpp"

namespace gseelab {

inline constexpr const char* kVersionTag = "gsee-lab/0.1.0";

// Experiment orchestration: a config names a spectrum, an algorithm, parameter
// grids and a seed policy; run_experiment executes the cross product of grid
// values and seeds (parallel across trials, gathered in launch order) and
// emit() persists CSV + JSON.

struct ExperimentConfig {
    std::string algorithm = "adv"; // basic | adv | cert | approx | sweep
    std::string backend = "ideal"; // ideal | poly | trig

    // spectrum source: file takes precedence, else explicit lists, else family
    std::string spec_file;
    std::vector<double> energies;
    std::vector<double> weights;
    std::string model_domain = "pm1";
    int family_levels = 0; // synthesized family when > 0
    double family_E0 = -0.6;
    double family_gap = 0.3;
    double family_p0 = 0.5;

    // parameter grids; empty means "not applicable to this algorithm"
    std::vector<double> eps;
    std::vector<double> delta;
    std::vector<double> Delta;
    std::vector<double> eta;
    std::vector<double> beta;
    std::vector<double> sigma;
    std::optional<double> E_hat; // certify only; defaults to the fixture E0

    int seeds = 1;
    std::uint64_t master_seed = 1;
    int threads = 1;
    int max_degree = 4000;
    std::string out_dir = ".";
    std::string stem = "run";
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
// FNV-1a over the canonical config dump plus the version tag.
std::string config_hash(const ExperimentConfig& cfg);

struct TrialRow {
    long index = 0; // launch order; also the RNG stream index
    std::uint64_t seed = 0;
    double eps = 0, delta = 0, Delta = 0, eta = 0, beta = 0, sigma = 0;
    double estimate = 0;
    double abs_err = 0;
    int success = 0;
    long circuits = 0;
    long queries = 0;
    long max_depth = 0;
    long accepted = 0;
    std::string status = "ok"; // or the error type name
};

struct RunRecord {
    std::string config_hash_hex;
    std::vector<TrialRow> rows;
    double success_rate = 0.0;
    double success_stderr = 0.0;
    double mean_abs_err = 0.0;
    double circuits_mean = 0.0;
    long max_depth = 0;
    double wall_seconds = 0.0;
    nlohmann::json schedule_echo; // derived schedule of the first grid point
};

RunRecord run_experiment(const ExperimentConfig& cfg);

std::string record_csv(const RunRecord& rec);
nlohmann::json record_json(const ExperimentConfig& cfg, const RunRecord& rec);
// Writes <stem>.csv and <stem>.json under out_dir.
void emit(const ExperimentConfig& cfg, const RunRecord& rec);

struct LemmaReport {
    long tuples_checked = 0;
    long violations = 0;
    std::vector<std::string> failures; // offending tuples, human readable
    bool ideal_ok = false;
    bool noisy_ok = false;
    bool separation_ok = false;
    bool series_ok = false;
};

// Sweeps the truncated-Gaussian-mean hypotheses on a parameter grid, the
// excited-level separation inequality on a two-level fixture, and the cosine
// series invariants; throws LemmaViolation on the first failure unless told
// to collect.
LemmaReport lemma_suite(bool throw_on_violation = true);

// Resolves the spectrum named by a config (file / lists / synthesized family).
SpectralMeasure spec_from_config(const ExperimentConfig& cfg);

} // namespace gseelab
