#include "sqg/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "sqg/fields.hpp"

namespace sqg {

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    default: return "OUTSIDE-REGIME";
    }
}

bool ExperimentReport::all_pass() const
{
    for (const auto& v : verdicts)
        if (v.verdict == Verdict::Fail)
            return false;
    return true;
}

void ExperimentReport::add_verdict(std::string name, bool pass, std::string detail)
{
    verdicts.push_back({std::move(name), pass ? Verdict::Pass : Verdict::Fail,
                        std::move(detail)});
}

BatchStats batch_means(const std::vector<double>& samples, int n_batches)
{
    const size_t n = samples.size();
    if (n == 0)
        return {0.0, 0.0};
    double mean = 0.0;
    for (double v : samples)
        mean += v;
    mean /= double(n);

    if (n < size_t(2 * n_batches)) {
        // Too few samples for batching; plain standard error.
        double var = 0.0;
        for (double v : samples)
            var += (v - mean) * (v - mean);
        var /= n > 1 ? double(n - 1) : 1.0;
        return {mean, std::sqrt(var / double(n))};
    }

    const size_t per_batch = n / n_batches;
    std::vector<double> batch(n_batches, 0.0);
    for (int b = 0; b < n_batches; ++b) {
        for (size_t i = 0; i < per_batch; ++i)
            batch[b] += samples[b * per_batch + i];
        batch[b] /= double(per_batch);
    }
    double bmean = 0.0;
    for (double v : batch)
        bmean += v;
    bmean /= n_batches;
    double bvar = 0.0;
    for (double v : batch)
        bvar += (v - bmean) * (v - bmean);
    bvar /= double(n_batches - 1);
    return {mean, std::sqrt(bvar / double(n_batches))};
}

void parallel_for(int n, const std::function<void(int)>& body)
{
    const int workers = std::max(1, std::min<int>(n, int(std::thread::hardware_concurrency())));
    if (workers == 1) {
        for (int i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

namespace {

struct MeanSe {
    double mean;
    double se;
};

MeanSe mean_se(const std::vector<double>& v)
{
    const size_t n = v.size();
    if (n == 0)
        return {0.0, 0.0};
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= double(n);
    double var = 0.0;
    for (double x : v)
        var += (x - mean) * (x - mean);
    var /= n > 1 ? double(n - 1) : 1.0;
    return {mean, std::sqrt(var / double(n))};
}

std::string regime_note(const OperatorParams& p)
{
    return std::string("alpha = ") + std::to_string(p.alpha) + " ("
         + regime_name(p.regime()) + ")";
}

// Default distinct starting pair for the ergodicity experiments: the
// configured initial condition (or a random H^1 ball when it is zero)
// against the zero field.
SpectralField nonzero_start(const SimConfig& cfg)
{
    if (cfg.init.kind == InitSpec::Kind::Zero)
        return random_h1_field(cfg.resolution, 1.0, cfg.seed);
    return build_initial(cfg.init, cfg.resolution, cfg.seed);
}

const int kMinVerdictSamples = 100;

} // namespace

ExperimentReport galerkin_convergence(const SimConfig& cfg,
                                      std::vector<int> resolutions)
{
    cfg.validate();
    if (resolutions.size() < 2)
        throw std::invalid_argument("galerkin convergence needs at least two resolutions");
    for (size_t i = 0; i < resolutions.size(); ++i) {
        if (resolutions[i] < 8 || resolutions[i] % 2 != 0)
            throw std::invalid_argument("resolutions must be even and >= 8");
        if (i > 0 && resolutions[i] < resolutions[i - 1])
            throw std::invalid_argument("resolutions must be non-decreasing (nested)");
    }

    ExperimentReport report;
    report.experiment = "galerkin-convergence";
    report.regime_notes.push_back(regime_note(cfg.params));

    const int n_ref = resolutions.back();
    const SpectralField ic_ref = build_initial(cfg.init, n_ref, cfg.seed);
    const NoisePath path(cfg.seed, 0, cfg.dt);

    std::vector<SpectralField> finals;
    bool aborted = false;
    std::string abort_detail;
    for (int n : resolutions) {
        SimConfig level = cfg;
        level.resolution = n;
        const SpectralField ic = project(ic_ref, n);
        RunOptions opts;
        opts.initial_override = &ic;
        opts.path_override = &path;
        opts.collect_diagnostics = false;
        SimResult r = simulate(level, opts);
        if (r.status != RunStatus::Completed) {
            aborted = true;
            abort_detail = std::string("N = ") + std::to_string(n) + " aborted ("
                         + run_status_name(r.status) + " at t = "
                         + std::to_string(r.failure_time) + ")";
            break;
        }
        finals.push_back(std::move(r.state));
    }

    if (aborted) {
        report.add_verdict("levels-completed", false, abort_detail);
        return report;
    }
    report.add_verdict("levels-completed", true, "all levels ran to T");

    Table table;
    table.name = "truncation_error";
    table.columns = {"N", "error"};
    std::vector<double> errors;
    const SpectralField& ref = finals.back();
    for (size_t i = 0; i + 1 < finals.size(); ++i) {
        const double e = sobolev_norm(finals[i] - project(ref, resolutions[i]), 0.0);
        errors.push_back(e);
        table.rows.push_back({double(resolutions[i]), e});
    }
    report.tables.push_back(std::move(table));

    if (errors.size() >= 2) {
        // Strict decrease, except that diagonal dynamics may sit at zero
        // on every level (truncation commutes with the linear flow).
        bool decreasing = true;
        for (size_t i = 0; i + 1 < errors.size(); ++i)
            decreasing = decreasing
                && (errors[i] > errors[i + 1]
                    || (errors[i] == 0.0 && errors[i + 1] == 0.0));
        VerdictEntry entry{"truncation-error-decreasing",
                           decreasing ? Verdict::Pass : Verdict::Fail, ""};
        if (cfg.params.regime() != OperatorParams::Regime::Subcritical) {
            entry.verdict = Verdict::OutsideRegime;
            entry.detail = "pathwise-uniqueness theorem needs alpha > 1/2";
        }
        report.verdicts.push_back(std::move(entry));
    }
    for (size_t i = 0; i < errors.size(); ++i)
        report.constants.push_back({"e_" + std::to_string(resolutions[i]), errors[i]});
    return report;
}

ExperimentReport pathwise_uniqueness_probe(const SimConfig& cfg, double delta)
{
    cfg.validate();
    if (!(delta >= 0.0))
        throw std::invalid_argument("perturbation size must be >= 0");

    ExperimentReport report;
    report.experiment = "pathwise-uniqueness-probe";
    report.regime_notes.push_back(regime_note(cfg.params));

    const SpectralField base = build_initial(cfg.init, cfg.resolution, cfg.seed);
    // L^2-normalized perturbation on the |k| = 1 shell.
    const double sin_norm = kTwoPi / 2.0 * std::sqrt(2.0);
    const SpectralField perturbed =
        base + (delta / sin_norm) * harmonic(cfg.resolution, 1, 0, 0.0, 1.0);

    const NoisePath path(cfg.seed, 0, cfg.dt);
    std::vector<std::pair<double, SpectralField>> samples;
    const int64_t n_steps = int64_t(std::ceil(cfg.horizon / cfg.dt - 1e-12));
    auto sampled = [&](int64_t step) {
        return step % cfg.cadence == 0 || step == n_steps;
    };

    RunOptions first;
    first.initial_override = &base;
    first.path_override = &path;
    first.collect_diagnostics = false;
    first.on_state = [&](int64_t step, double t, const SpectralField& st) {
        if (sampled(step))
            samples.emplace_back(t, st);
    };
    const SimResult r1 = simulate(cfg, first);

    Table table;
    table.name = "separation";
    table.columns = {"t", "d"};
    size_t cursor = 0;
    double sup_d = 0.0;
    double d_final = 0.0;
    RunOptions second;
    second.initial_override = &perturbed;
    second.path_override = &path;
    second.collect_diagnostics = false;
    second.on_state = [&](int64_t step, double, const SpectralField& st) {
        if (!sampled(step) || cursor >= samples.size())
            return;
        const double d = sobolev_norm(samples[cursor].second - st, 0.0);
        table.rows.push_back({samples[cursor].first, d});
        sup_d = std::max(sup_d, d);
        d_final = d;
        ++cursor;
    };
    const SimResult r2 = simulate(cfg, second);
    report.tables.push_back(std::move(table));

    const bool completed = r1.status == RunStatus::Completed
                        && r2.status == RunStatus::Completed;
    report.add_verdict("runs-completed", completed,
                       completed ? "" : "a trajectory aborted before T");
    if (delta == 0.0) {
        report.add_verdict("identical-under-shared-path", sup_d == 0.0,
                           "sup d = " + std::to_string(sup_d));
    } else {
        report.constants.push_back({"continuity_constant", sup_d / delta});
    }
    report.constants.push_back({"sup_d", sup_d});
    report.constants.push_back({"d_final", d_final});
    return report;
}

ExperimentReport lp_supremum_monitor(const SimConfig& cfg, double p, double t_long)
{
    cfg.validate();
    if (!(p > 2.0))
        throw std::invalid_argument("lp monitor requires p > 2");

    ExperimentReport report;
    report.experiment = "lp-supremum-monitor";
    report.regime_notes.push_back(regime_note(cfg.params));

    const NoiseModel model = build_noise(cfg.noise, cfg.resolution, cfg.params);
    const bool inside = model.additive() && 1.0 / p < cfg.params.alpha - 0.5;
    report.regime_notes.push_back(
        std::string("uniqueness regime 1/p < alpha - 1/2: ")
        + (inside ? "inside" : "outside"));

    SimConfig run = cfg;
    run.horizon = t_long;

    const SpectralField ic = build_initial(cfg.init, cfg.resolution, cfg.seed);
    const double noise_scale = model.additive() ? std::sqrt(model.trace())
                                                : model.sigma();
    const double ceiling = 1e3 * (lp_norm(ic, p) + noise_scale);

    Table table;
    table.name = "lp_series";
    table.columns = {"t", "lp"};
    double sup = 0.0;
    double first_failure = -1.0;
    const int64_t n_steps = int64_t(std::ceil(run.horizon / run.dt - 1e-12));
    RunOptions opts;
    opts.initial_override = &ic;
    opts.collect_diagnostics = false;
    opts.on_state = [&](int64_t step, double t, const SpectralField& st) {
        if (step % cfg.cadence != 0 && step != n_steps)
            return;
        const double v = lp_norm(st, p);
        table.rows.push_back({t, v});
        sup = std::max(sup, v);
        if (v > ceiling && first_failure < 0.0)
            first_failure = t;
    };
    const SimResult r = simulate(run, opts);
    report.tables.push_back(std::move(table));

    if (r.status != RunStatus::Completed && first_failure < 0.0)
        first_failure = r.failure_time;
    const bool bounded = r.status == RunStatus::Completed && first_failure < 0.0;
    report.add_verdict("lp-supremum-bounded", bounded,
                       bounded ? "sup = " + std::to_string(sup)
                               : std::string("blow-up event (")
                                     + run_status_name(r.status) + ") first at t = "
                                     + std::to_string(first_failure));
    report.constants.push_back({"p", p});
    report.constants.push_back({"sup_lp", sup});
    report.constants.push_back({"ceiling", ceiling});
    report.constants.push_back({"inside_uniqueness_regime", inside ? 1.0 : 0.0});
    report.constants.push_back({"first_failure_t", first_failure});
    return report;
}

ExperimentReport markov_property_test(const SimConfig& cfg, double s, double t,
                                      const std::vector<Observable>& observables,
                                      int ensemble_size)
{
    cfg.validate();
    if (!(s > 0.0) || !(t >= 0.0))
        throw std::invalid_argument("markov test needs s > 0 and t >= 0");
    const NoiseModel model = build_noise(cfg.noise, cfg.resolution, cfg.params);
    if (!model.additive())
        throw std::invalid_argument(
            "markov test refused: theorem hypothesis needs state-independent noise");
    if (observables.empty() || ensemble_size < 1)
        throw std::invalid_argument("markov test needs observables and members");

    ExperimentReport report;
    report.experiment = "markov-property-test";
    report.regime_notes.push_back(regime_note(cfg.params));
    const bool inside = cfg.params.regime() == OperatorParams::Regime::Subcritical;
    if (!inside)
        report.regime_notes.push_back("markov construction needs alpha > 1/2");

    const int64_t n_s = int64_t(std::llround(s / cfg.dt));
    const size_t n_obs = observables.size();
    const int m = ensemble_size;
    const SpectralField ic = build_initial(cfg.init, cfg.resolution, cfg.seed);

    std::vector<std::vector<double>> direct(n_obs, std::vector<double>(m, 0.0));
    std::vector<std::vector<double>> restart(n_obs, std::vector<double>(m, 0.0));
    std::atomic<int> aborted{0};

    parallel_for(m, [&](int i) {
        SimConfig direct_cfg = cfg;
        direct_cfg.horizon = s + t;
        SpectralField mid(cfg.resolution);
        RunOptions opts;
        opts.stream = uint32_t(2 * i);
        opts.initial_override = &ic;
        opts.collect_diagnostics = false;
        opts.on_state = [&](int64_t step, double, const SpectralField& st) {
            if (step == n_s)
                mid = st;
        };
        const SimResult ra = simulate(direct_cfg, opts);

        SimConfig restart_cfg = cfg;
        restart_cfg.horizon = t;
        RunOptions ropts;
        ropts.stream = uint32_t(2 * i + 1);
        ropts.initial_override = &mid;
        ropts.collect_diagnostics = false;
        const SimResult rb = simulate(restart_cfg, ropts);

        if (ra.status != RunStatus::Completed || rb.status != RunStatus::Completed) {
            aborted.fetch_add(1);
            return;
        }
        for (size_t j = 0; j < n_obs; ++j) {
            direct[j][size_t(i)] = observables[j].fn(ra.state);
            restart[j][size_t(i)] = observables[j].fn(rb.state);
        }
    });

    report.add_verdict("members-completed", aborted.load() == 0,
                       std::to_string(aborted.load()) + " aborted members");

    Table table;
    table.name = "estimators";
    table.columns = {"mean_direct", "se_direct", "mean_restart", "se_restart", "z"};
    const bool enough = m >= kMinVerdictSamples;
    for (size_t j = 0; j < n_obs; ++j) {
        const MeanSe a = mean_se(direct[j]);
        const MeanSe b = mean_se(restart[j]);
        const double spread = std::sqrt(a.se * a.se + b.se * b.se);
        const double z = spread > 0.0 ? (a.mean - b.mean) / spread : 0.0;
        table.row_labels.push_back(observables[j].name);
        table.rows.push_back({a.mean, a.se, b.mean, b.se, z});

        VerdictEntry entry{"markov-z-" + observables[j].name,
                           std::abs(z) <= 3.0 ? Verdict::Pass : Verdict::Fail,
                           "z = " + std::to_string(z)};
        if (!enough) {
            entry.verdict = Verdict::OutsideRegime;
            entry.detail = "fewer than 100 samples; verdict withheld";
        } else if (!inside) {
            entry.verdict = Verdict::OutsideRegime;
        }
        report.verdicts.push_back(std::move(entry));
    }
    report.tables.push_back(std::move(table));
    report.constants.push_back({"ensemble_size", double(m)});
    return report;
}

ExperimentReport ergodic_average(const SimConfig& cfg,
                                 const std::vector<Observable>& observables,
                                 double burn_in, double t_long,
                                 const SpectralField* start0,
                                 const SpectralField* start1)
{
    cfg.validate();
    if (observables.empty())
        throw std::invalid_argument("ergodic average needs observables");
    if (burn_in < 0.0)
        burn_in = 0.2 * t_long; // default: first fifth discarded
    if (!(t_long > burn_in))
        throw std::invalid_argument("t_long must exceed the burn-in");

    ExperimentReport report;
    report.experiment = "ergodic-average";
    report.regime_notes.push_back(regime_note(cfg.params));
    const bool inside = cfg.params.alpha > 2.0 / 3.0
                     && cfg.noise.kind == NoiseSpec::Kind::Ergodic;
    report.regime_notes.push_back(
        inside ? "inside ergodicity regime (alpha > 2/3, covariance-root noise)"
               : "outside ergodicity regime (needs alpha > 2/3 and covariance-root noise)");

    const SpectralField start_a = start0 ? *start0 : nonzero_start(cfg);
    const SpectralField start_b = start1 ? *start1 : SpectralField(cfg.resolution);
    const std::array<const SpectralField*, 2> starts = {&start_a, &start_b};

    SimConfig run = cfg;
    run.horizon = t_long;
    const size_t n_obs = observables.size();
    std::vector<std::vector<std::vector<double>>> samples(
        2, std::vector<std::vector<double>>(n_obs));
    std::array<RunStatus, 2> status = {RunStatus::Completed, RunStatus::Completed};

    parallel_for(2, [&](int which) {
        RunOptions opts;
        opts.stream = uint32_t(which);
        opts.initial_override = starts[size_t(which)];
        opts.collect_diagnostics = false;
        opts.on_state = [&](int64_t step, double tt, const SpectralField& st) {
            if (step % cfg.cadence != 0 || tt <= burn_in)
                return;
            for (size_t j = 0; j < n_obs; ++j)
                samples[size_t(which)][j].push_back(observables[j].fn(st));
        };
        status[size_t(which)] = simulate(run, opts).status;
    });

    const bool completed = status[0] == RunStatus::Completed
                        && status[1] == RunStatus::Completed;
    report.add_verdict("runs-completed", completed,
                       completed ? "" : "a trajectory aborted before t_long");

    Table table;
    table.name = "time_averages";
    table.columns = {"avg_a", "se_a", "avg_b", "se_b", "diff", "threshold"};
    const bool enough = !samples[0].empty()
                     && samples[0][0].size() >= size_t(kMinVerdictSamples)
                     && samples[1][0].size() >= size_t(kMinVerdictSamples);
    for (size_t j = 0; j < n_obs; ++j) {
        const BatchStats a = batch_means(samples[0][j]);
        const BatchStats b = batch_means(samples[1][j]);
        const double diff = std::abs(a.mean - b.mean);
        const double threshold = 3.0 * std::sqrt(a.se * a.se + b.se * b.se);
        table.row_labels.push_back(observables[j].name);
        table.rows.push_back({a.mean, a.se, b.mean, b.se, diff, threshold});

        VerdictEntry entry{"ergodic-average-" + observables[j].name,
                           diff <= threshold ? Verdict::Pass : Verdict::Fail,
                           "diff = " + std::to_string(diff) + ", threshold = "
                               + std::to_string(threshold)};
        if (!completed)
            entry.verdict = Verdict::Fail;
        else if (!enough) {
            entry.verdict = Verdict::OutsideRegime;
            entry.detail = "fewer than 100 samples; verdict withheld";
        } else if (!inside)
            entry.verdict = Verdict::OutsideRegime;
        report.verdicts.push_back(std::move(entry));
    }
    report.tables.push_back(std::move(table));
    report.constants.push_back({"burn_in", burn_in});
    report.constants.push_back({"samples_per_run",
                                samples[0].empty() ? 0.0 : double(samples[0][0].size())});
    return report;
}

ExperimentReport exponential_mixing_fit(const SimConfig& cfg,
                                        const std::vector<Observable>& observables,
                                        std::vector<double> t_grid,
                                        int ensemble_size,
                                        const SpectralField* start0,
                                        const SpectralField* start1)
{
    cfg.validate();
    if (observables.empty() || ensemble_size < 1)
        throw std::invalid_argument("mixing fit needs observables and members");
    if (t_grid.empty())
        throw std::invalid_argument("mixing fit needs a time grid");
    std::sort(t_grid.begin(), t_grid.end());
    if (!(t_grid.front() > 0.0))
        throw std::invalid_argument("grid times must be positive");

    ExperimentReport report;
    report.experiment = "exponential-mixing-fit";
    report.regime_notes.push_back(regime_note(cfg.params));
    const bool inside = cfg.params.alpha > 2.0 / 3.0
                     && cfg.noise.kind == NoiseSpec::Kind::Ergodic;
    report.regime_notes.push_back(
        inside ? "inside mixing regime (alpha > 2/3, covariance-root noise)"
               : "outside mixing regime (needs alpha > 2/3 and covariance-root noise)");

    std::vector<int64_t> target_steps;
    for (double t : t_grid)
        target_steps.push_back(int64_t(std::llround(t / cfg.dt)));

    const SpectralField start_a = start0 ? *start0 : nonzero_start(cfg);
    const SpectralField start_b = start1 ? *start1 : SpectralField(cfg.resolution);
    const std::array<const SpectralField*, 2> starts = {&start_a, &start_b};

    SimConfig run = cfg;
    run.horizon = double(target_steps.back()) * cfg.dt;

    const int m = ensemble_size;
    const size_t n_obs = observables.size();
    const size_t n_t = target_steps.size();
    // values[start][t][obs][member]
    std::vector<std::vector<std::vector<std::vector<double>>>> values(
        2, std::vector<std::vector<std::vector<double>>>(
               n_t, std::vector<std::vector<double>>(n_obs,
                                                     std::vector<double>(m, 0.0))));
    std::atomic<int> aborted{0};

    parallel_for(2 * m, [&](int idx) {
        const int which = idx / m;
        const int member = idx % m;
        RunOptions opts;
        opts.stream = uint32_t(idx);
        opts.initial_override = starts[size_t(which)];
        opts.collect_diagnostics = false;
        size_t cursor = 0;
        opts.on_state = [&](int64_t step, double, const SpectralField& st) {
            while (cursor < n_t && target_steps[cursor] == step) {
                for (size_t j = 0; j < n_obs; ++j)
                    values[size_t(which)][cursor][j][size_t(member)] =
                        observables[j].fn(st);
                ++cursor;
            }
        };
        if (simulate(run, opts).status != RunStatus::Completed)
            aborted.fetch_add(1);
    });

    report.add_verdict("members-completed", aborted.load() == 0,
                       std::to_string(aborted.load()) + " aborted members");

    Table table;
    table.name = "observable_gap";
    table.columns = {"t", "gap", "floor", "in_window"};
    std::vector<double> fit_t, fit_logd;
    for (size_t ti = 0; ti < n_t; ++ti) {
        double gap = 0.0, floor = 0.0;
        for (size_t j = 0; j < n_obs; ++j) {
            const MeanSe a = mean_se(values[0][ti][j]);
            const MeanSe b = mean_se(values[1][ti][j]);
            gap += std::abs(a.mean - b.mean);
            floor += std::sqrt(a.se * a.se + b.se * b.se);
        }
        const double t = double(target_steps[ti]) * cfg.dt;
        const bool in_window = gap > 2.0 * floor;
        table.rows.push_back({t, gap, floor, in_window ? 1.0 : 0.0});
        if (in_window && gap > 0.0) {
            fit_t.push_back(t);
            fit_logd.push_back(std::log(gap));
        }
    }
    report.tables.push_back(std::move(table));

    const bool enough = m >= kMinVerdictSamples;
    if (fit_t.size() < 3) {
        VerdictEntry entry{"mixing-fit", Verdict::Pass,
                           "gap at the Monte Carlo floor (already mixed); rate not fit"};
        if (!enough) {
            entry.verdict = Verdict::OutsideRegime;
            entry.detail = "fewer than 100 samples; verdict withheld";
        }
        report.verdicts.push_back(std::move(entry));
        return report;
    }

    // Least squares log d = log C - a t over the usable window.
    const size_t n = fit_t.size();
    double tx = 0.0, ty = 0.0;
    for (size_t i = 0; i < n; ++i) {
        tx += fit_t[i];
        ty += fit_logd[i];
    }
    tx /= double(n);
    ty /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (fit_t[i] - tx) * (fit_t[i] - tx);
        sxy += (fit_t[i] - tx) * (fit_logd[i] - ty);
    }
    const double slope = sxy / sxx;
    const double intercept = ty - slope * tx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = fit_logd[i] - (intercept + slope * fit_t[i]);
        ss_res += r * r;
        ss_tot += (fit_logd[i] - ty) * (fit_logd[i] - ty);
    }
    const double slope_se = std::sqrt(ss_res / double(n - 2) / sxx);
    const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    const double a_hat = -slope;
    const bool significant = a_hat > 0.0 && slope_se > 0.0
                          && slope / slope_se <= -3.0;

    VerdictEntry entry{"mixing-rate-positive",
                       significant ? Verdict::Pass : Verdict::Fail,
                       "a_hat = " + std::to_string(a_hat) + ", slope t-stat = "
                           + std::to_string(slope_se > 0.0 ? slope / slope_se : 0.0)};
    if (!enough) {
        entry.verdict = Verdict::OutsideRegime;
        entry.detail = "fewer than 100 samples; verdict withheld";
    } else if (!inside)
        entry.verdict = Verdict::OutsideRegime;
    report.verdicts.push_back(std::move(entry));

    report.constants.push_back({"a_hat", a_hat});
    report.constants.push_back({"a_se", slope_se});
    report.constants.push_back({"log_c", intercept});
    report.constants.push_back({"r2", r2});
    report.constants.push_back({"window_points", double(n)});
    return report;
}

} // namespace sqg
