// Command-line front end: one subcommand per experiment plus `simulate`
// and the `selfcheck` invariant battery.  Exit status 0 iff every verdict
// passed; out-of-regime verdicts are reported but never fatal.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sqg/config.hpp"
#include "sqg/harness.hpp"
#include "sqg/report_io.hpp"
#include "sqg/selfcheck.hpp"
#include "sqg/snapshot.hpp"
#include "sqg/version.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<int64_t> seed;
    std::optional<std::string> out_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("--config", args.config_path, "run configuration file")
        ->required();
    cmd->add_option("--seed", args.seed, "override [init] seed");
    cmd->add_option("--out", args.out_dir, "override [output] directory");
}

sqg::RunConfig load(const CommonArgs& args, const std::string& subcommand)
{
    sqg::RunConfig cfg = sqg::parse_config_file(args.config_path);
    if (args.seed)
        cfg.sim.seed = uint64_t(*args.seed);
    if (args.out_dir)
        cfg.output.directory = *args.out_dir;
    if (!cfg.experiment.name.empty() && cfg.experiment.name != subcommand)
        throw sqg::ConfigError(args.config_path + ": [experiment] name '"
                               + cfg.experiment.name + "' does not match subcommand '"
                               + subcommand + "'");
    return cfg;
}

int run_simulate(const CommonArgs& args)
{
    const sqg::RunConfig cfg = load(args, "simulate");
    const std::string digest = sqg::config_digest(cfg);
    std::filesystem::create_directories(cfg.output.directory);

    sqg::RunOptions opts;
    std::vector<int64_t> snapshot_steps;
    if (cfg.output.snapshots > 0) {
        const int64_t every = int64_t(cfg.output.snapshots) * cfg.output.cadence;
        opts.on_state = [&, every](int64_t step, double t, const sqg::SpectralField& st) {
            if (step > 0 && step % every == 0) {
                sqg::write_snapshot(cfg.output.directory + "/state_"
                                        + std::to_string(step) + ".sqg",
                                    st, cfg.sim.params.alpha, cfg.sim.params.kappa, t);
            }
        };
    }
    const sqg::SimResult result = sqg::simulate(cfg.sim, opts);

    sqg::write_diagnostics_csv(cfg.output.directory + "/diagnostics.csv", digest,
                               result.diagnostics);
    const double t_final = result.diagnostics.empty() ? 0.0
                                                      : result.diagnostics.back().t;
    sqg::write_snapshot(cfg.output.directory + "/state_final.sqg", result.state,
                        cfg.sim.params.alpha, cfg.sim.params.kappa, t_final);

    std::printf("digest %s\n", digest.c_str());
    std::printf("status %s\n", sqg::run_status_name(result.status));
    if (result.status != sqg::RunStatus::Completed) {
        std::printf("first failure at t = %s\n",
                    sqg::format_double(result.failure_time).c_str());
        return 1;
    }
    return 0;
}

int run_selfcheck_cmd(const CommonArgs& args)
{
    const sqg::RunConfig cfg = load(args, "selfcheck");
    const auto results = sqg::run_selfcheck(cfg.sim.seed);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%zu properties, %s\n", results.size(), all ? "all passed" : "FAILURES");
    return all ? 0 : 1;
}

int run_experiment(const CommonArgs& args, const std::string& name)
{
    sqg::RunConfig cfg = load(args, name);
    sqg::ExperimentReport report;
    const auto observables = sqg::default_observables(cfg.sim.params);

    if (name == "converge") {
        if (cfg.experiment.resolutions.empty())
            throw sqg::ConfigError(args.config_path
                                   + ": converge needs [experiment] resolutions");
        report = sqg::galerkin_convergence(cfg.sim, cfg.experiment.resolutions);
    } else if (name == "uniqueness") {
        report = sqg::pathwise_uniqueness_probe(cfg.sim, cfg.experiment.delta);
    } else if (name == "lp-monitor") {
        report = sqg::lp_supremum_monitor(cfg.sim, cfg.experiment.p,
                                          cfg.experiment.t_long);
    } else if (name == "markov") {
        report = sqg::markov_property_test(cfg.sim, cfg.experiment.s,
                                           cfg.experiment.t, observables,
                                           cfg.experiment.m);
    } else if (name == "ergodic") {
        report = sqg::ergodic_average(cfg.sim, observables, cfg.experiment.burn_in,
                                      cfg.experiment.t_long);
    } else { // mixing
        if (cfg.experiment.t_grid.empty())
            throw sqg::ConfigError(args.config_path
                                   + ": mixing needs [experiment] t_grid");
        report = sqg::exponential_mixing_fit(cfg.sim, observables,
                                             cfg.experiment.t_grid, cfg.experiment.m);
    }

    report.digest = sqg::config_digest(cfg);
    const std::string dir = cfg.output.directory + "/" + report.experiment;
    sqg::write_report(report, dir);
    std::printf("digest %s\n", report.digest.c_str());
    const bool ok = sqg::print_report_summary(report);
    std::printf("report written to %s\n", dir.c_str());
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{std::string("stochastic SQG simulator and property harness (version ")
                 + sqg::kArtifactVersion + ")"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string chosen;
    for (const char* name : {"simulate", "selfcheck", "converge", "uniqueness",
                             "lp-monitor", "markov", "ergodic", "mixing"}) {
        CLI::App* cmd = app.add_subcommand(name, "");
        add_common(cmd, args);
        cmd->callback([&chosen, name] { chosen = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (chosen == "simulate")
            return run_simulate(args);
        if (chosen == "selfcheck")
            return run_selfcheck_cmd(args);
        return run_experiment(args, chosen);
    } catch (const sqg::ConfigError& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return 2;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
}
