#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gseelab/errors.hpp"
#include "gseelab/harness.hpp"

namespace {

int default_threads() {
    if (const char* env = std::getenv("GSEE_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "experiment config (json)");
    cmd->add_option("--seed", o.seed, "master seed override");
    cmd->add_option("--out-dir", o.out_dir, "output directory");
    cmd->add_option("--threads", o.threads, "worker threads (env GSEE_LAB_THREADS)");
}

int run(const std::string& forced_algorithm, const CommonOpts& o) {
    gseelab::ExperimentConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream f(o.config_path);
        if (!f) {
            std::fprintf(stderr, "cannot open config: %s\n", o.config_path.c_str());
            return 2;
        }
        nlohmann::json j;
        f >> j;
        cfg = gseelab::config_from_json(j);
    }
    if (!forced_algorithm.empty()) cfg.algorithm = forced_algorithm;
    if (o.seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(o.seed);
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    cfg.threads = o.threads > 0 ? o.threads : default_threads();

    const gseelab::RunRecord rec = gseelab::run_experiment(cfg);
    gseelab::emit(cfg, rec);
    std::printf("%s: %zu trials, success_rate=%.4f +/- %.4f, mean|err|=%.3e, "
                "circuits_mean=%.1f, max_depth=%ld, hash=%s (%.2fs)\n",
                cfg.algorithm.c_str(), rec.rows.size(), rec.success_rate,
                rec.success_stderr, rec.mean_abs_err, rec.circuits_mean,
                rec.max_depth, rec.config_hash_hex.c_str(), rec.wall_seconds);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral-level ground-state energy estimation lab"};
    app.require_subcommand(1);

    CommonOpts est_o, cert_o, apx_o, bench_o, lem_o;
    auto* est = app.add_subcommand("estimate", "run the basic/adv estimator");
    add_common(est, est_o);
    auto* cert = app.add_subcommand("certify", "run the certification protocol");
    add_common(cert, cert_o);
    auto* apx = app.add_subcommand("approx", "construct certified approximants");
    add_common(apx, apx_o);
    auto* bench = app.add_subcommand("bench", "beta-interpolation cost sweep");
    add_common(bench, bench_o);
    auto* lem = app.add_subcommand("lemmas", "verify the analytic lemma grids");
    add_common(lem, lem_o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (est->parsed()) return run("", est_o); // config decides basic vs adv
        if (cert->parsed()) return run("cert", cert_o);
        if (apx->parsed()) return run("approx", apx_o);
        if (bench->parsed()) return run("sweep", bench_o);
        if (lem->parsed()) {
            const gseelab::LemmaReport rep = gseelab::lemma_suite(false);
            std::printf("lemmas: %ld tuples, %ld violations (ideal=%s noisy=%s "
                        "separation=%s series=%s)\n",
                        rep.tuples_checked, rep.violations,
                        rep.ideal_ok ? "ok" : "FAIL", rep.noisy_ok ? "ok" : "FAIL",
                        rep.separation_ok ? "ok" : "FAIL",
                        rep.series_ok ? "ok" : "FAIL");
            for (const auto& f : rep.failures)
                std::fprintf(stderr, "violation: %s\n", f.c_str());
            return rep.violations == 0 ? 0 : 1;
        }
    } catch (const gseelab::LemmaViolation& e) {
        std::fprintf(stderr, "lemma violation: %s\n", e.what());
        return 1;
    } catch (const gseelab::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) { // e.g. malformed json
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
