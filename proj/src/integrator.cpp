#include "sqg/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/fields.hpp"
#include "sqg/snapshot.hpp"

namespace sqg {

NoiseModel build_noise(const NoiseSpec& spec, int resolution,
                       const OperatorParams& params)
{
    switch (spec.kind) {
    case NoiseSpec::Kind::None:
        return NoiseModel::none(resolution);
    case NoiseSpec::Kind::Additive:
        return NoiseModel::additive_power_law(resolution, spec.g0, spec.decay,
                                              spec.band_limit);
    case NoiseSpec::Kind::Multiplicative:
        return NoiseModel::linear_multiplicative(spec.sigma);
    default:
        return NoiseModel::ergodic_covariance(resolution, params, spec.s,
                                              spec.q_min, spec.q_max);
    }
}

SpectralField build_initial(const InitSpec& spec, int resolution, uint64_t seed)
{
    switch (spec.kind) {
    case InitSpec::Kind::Zero:
        return SpectralField(resolution);
    case InitSpec::Kind::Analytic:
        return analytic_field(spec.name, resolution);
    case InitSpec::Kind::Snapshot:
        return project(read_snapshot(spec.name).field, resolution);
    default:
        return random_h1_field(resolution, spec.h1_norm, seed);
    }
}

void SimConfig::validate() const
{
    params.validate();
    if (resolution < 4 || resolution % 2 != 0)
        throw std::invalid_argument("resolution must be an even integer >= 4");
    if (!(dt > 0.0))
        throw std::invalid_argument("dt must be positive");
    if (!(horizon >= 0.0))
        throw std::invalid_argument("horizon must be >= 0");
    if (horizon > 0.0 && dt > horizon)
        throw std::invalid_argument("dt must not exceed the horizon");
    if (cadence < 1)
        throw std::invalid_argument("cadence must be >= 1");
}

const char* run_status_name(RunStatus s)
{
    switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::CflViolation: return "cfl-violation";
    default: return "non-finite-state";
    }
}

namespace {

// Per-mode factors exp(-kappa |k|^{2 alpha} dt), fixed for a run.
struct Propagator {
    int n;
    std::vector<double> factor;

    Propagator(const OperatorParams& params, int resolution, double dt)
        : n(resolution)
        , factor(size_t(resolution) * resolution, 1.0)
    {
        const int km = n / 2 - 1;
        for (int k1 = -km; k1 <= km; ++k1) {
            for (int k2 = -km; k2 <= km; ++k2) {
                if (k1 == 0 && k2 == 0)
                    continue;
                const double k_sq = double(k1) * k1 + double(k2) * k2;
                const int a1 = k1 >= 0 ? k1 : k1 + n;
                const int a2 = k2 >= 0 ? k2 : k2 + n;
                factor[size_t(a1) * n + a2] = std::exp(-params.eigenvalue(k_sq) * dt);
            }
        }
    }
};

struct StepData {
    RunStatus status = RunStatus::Completed;
    double cfl = 0.0;
    double dissipation = 0.0;
    double noise_trace = 0.0;
    double martingale = 0.0;
    double residual = 0.0;
};

StepData advance(SpectralField& theta, const Propagator& prop, const SimConfig& cfg,
                 const NoiseModel& model, const NoisePath& path, int64_t step_index,
                 int refine, bool want_budget)
{
    StepData out;

    SpectralField transport(cfg.resolution);
    if (cfg.nonlinear) {
        TransportTerm tt = transport_term(theta);
        out.cfl = cfg.dt * tt.max_speed * (double(cfg.resolution) / 3.0);
        if (out.cfl > cfg.cfl_limit) {
            out.status = RunStatus::CflViolation;
            return out;
        }
        transport = std::move(tt.term);
    }

    const SpectralField incr = sample_increment(model, theta, path, step_index, refine);

    double l2_sq_before = 0.0;
    if (want_budget) {
        l2_sq_before = l2_inner(theta, theta);
        const double h_alpha_sq = dissipation_inner(theta, theta, cfg.params)
                                / cfg.params.kappa;
        out.dissipation = 2.0 * cfg.params.kappa * cfg.dt * h_alpha_sq;
        out.noise_trace = cfg.dt
            * (model.additive() ? model.trace()
                                : model.sigma() * model.sigma() * l2_sq_before);
        out.martingale = 2.0 * l2_inner(theta, incr);
    }

    auto& c = theta.data();
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = prop.factor[i] * (c[i] - cfg.dt * transport.data()[i] + incr.data()[i]);

    if (!theta.finite()) {
        out.status = RunStatus::NonFinite;
        return out;
    }
    if (want_budget) {
        const double l2_sq_after = l2_inner(theta, theta);
        out.residual = l2_sq_after - l2_sq_before + out.dissipation - out.martingale
                     - out.noise_trace;
    }
    return out;
}

// L^4 and L^inf norms from one shared transform.
void lp_pair(const SpectralField& f, double& lp4, double& lp_inf)
{
    const PhysicalField g = to_physical(f, dealias_grid(f.resolution()));
    const int m = g.grid_size();
    const double cell = (kTwoPi / m) * (kTwoPi / m);
    double sum = 0.0, peak = 0.0;
    for (double v : g.values()) {
        const double v2 = v * v;
        sum += v2 * v2;
        peak = std::max(peak, std::abs(v));
    }
    lp4 = std::pow(cell * sum, 0.25);
    lp_inf = peak;
}

DiagnosticsRecord make_record(double t, const SpectralField& theta,
                              const SimConfig& cfg, const StepData& sd)
{
    DiagnosticsRecord rec{};
    rec.t = t;
    rec.l2 = sobolev_norm(theta, 0.0);
    rec.h_alpha = sobolev_norm(theta, cfg.params.alpha);
    lp_pair(theta, rec.lp4, rec.lp_inf);
    rec.dissipation = sd.dissipation;
    rec.noise_trace = sd.noise_trace;
    rec.martingale = sd.martingale;
    rec.residual = sd.residual;
    rec.cfl = sd.cfl;
    return rec;
}

int64_t step_count(const SimConfig& cfg)
{
    return int64_t(std::ceil(cfg.horizon / cfg.dt - 1e-12));
}

int path_refine(const SimConfig& cfg, const NoisePath& path)
{
    const double ratio = cfg.dt / path.fine_dt();
    const int refine = int(std::lround(ratio));
    if (refine < 1 || std::abs(ratio - refine) > 1e-9 * ratio)
        throw std::invalid_argument("path time step must divide the run time step");
    return refine;
}

} // namespace

SimResult simulate(const SimConfig& cfg, const RunOptions& opts)
{
    cfg.validate();
    const NoiseModel model = build_noise(cfg.noise, cfg.resolution, cfg.params);
    const NoisePath own_path(cfg.seed, opts.stream, cfg.dt);
    const NoisePath& path = opts.path_override ? *opts.path_override : own_path;
    const int refine = path_refine(cfg, path);

    SpectralField theta = opts.initial_override
        ? *opts.initial_override
        : build_initial(cfg.init, cfg.resolution, cfg.seed);
    if (theta.resolution() != cfg.resolution)
        throw std::invalid_argument("initial state resolution mismatch");
    if (!theta.finite())
        throw std::invalid_argument("initial state is not finite");

    SimResult result{std::move(theta)};
    const int64_t n_steps = step_count(cfg);
    const Propagator prop(cfg.params, cfg.resolution, cfg.dt);

    if (opts.record_trajectory)
        result.trajectory.push_back(result.state);
    if (opts.collect_diagnostics)
        result.diagnostics.push_back(make_record(0.0, result.state, cfg, StepData{}));
    if (opts.on_state)
        opts.on_state(0, 0.0, result.state);

    for (int64_t n = 0; n < n_steps; ++n) {
        const StepData sd = advance(result.state, prop, cfg, model, path, n, refine,
                                    opts.collect_diagnostics);
        const double t = double(n + 1) * cfg.dt;
        if (sd.status != RunStatus::Completed) {
            result.status = sd.status;
            result.failure_time = t;
            break;
        }
        if (opts.record_trajectory)
            result.trajectory.push_back(result.state);
        if (opts.collect_diagnostics
            && ((n + 1) % cfg.cadence == 0 || n + 1 == n_steps))
            result.diagnostics.push_back(make_record(t, result.state, cfg, sd));
        if (opts.on_state)
            opts.on_state(n + 1, t, result.state);
    }
    return result;
}

SpectralField step(const SpectralField& theta, const SimConfig& cfg,
                   const NoisePath& path, int64_t step_index)
{
    cfg.validate();
    const NoiseModel model = build_noise(cfg.noise, cfg.resolution, cfg.params);
    const Propagator prop(cfg.params, cfg.resolution, cfg.dt);
    SpectralField next = theta;
    const StepData sd = advance(next, prop, cfg, model, path, step_index,
                                path_refine(cfg, path), false);
    if (sd.status == RunStatus::CflViolation)
        throw std::runtime_error("advective CFL violation: number "
                                 + std::to_string(sd.cfl) + " exceeds limit "
                                 + std::to_string(cfg.cfl_limit));
    if (sd.status == RunStatus::NonFinite)
        throw std::runtime_error("non-finite state after step "
                                 + std::to_string(step_index));
    return next;
}

double dissipation_inner(const SpectralField& f, const SpectralField& g,
                         const OperatorParams& params)
{
    if (f.resolution() != g.resolution())
        throw std::invalid_argument("dissipation_inner: resolutions differ");
    const int km = f.max_mode();
    double sum = 0.0;
    for (int k1 = -km; k1 <= km; ++k1) {
        for (int k2 = -km; k2 <= km; ++k2) {
            if (k1 == 0 && k2 == 0)
                continue;
            const double k_sq = double(k1) * k1 + double(k2) * k2;
            const auto a = f.coeff(k1, k2);
            const auto b = g.coeff(k1, k2);
            sum += params.eigenvalue(k_sq)
                 * (a.real() * b.real() + a.imag() * b.imag());
        }
    }
    return sum;
}

ResidualSeries energy_budget_residual(const std::vector<SpectralField>& trajectory,
                                      const SimConfig& cfg, const NoiseModel& model,
                                      const NoisePath& path, int refine)
{
    if (trajectory.size() < 2)
        throw std::invalid_argument("energy budget needs a recorded trajectory");
    ResidualSeries series;
    series.residual.reserve(trajectory.size() - 1);
    double sum_abs = 0.0;
    for (size_t n = 0; n + 1 < trajectory.size(); ++n) {
        const SpectralField& cur = trajectory[n];
        const SpectralField& next = trajectory[n + 1];
        const SpectralField incr = sample_increment(model, cur, path, int64_t(n), refine);
        const double l2_before = l2_inner(cur, cur);
        const double l2_after = l2_inner(next, next);
        const double h_alpha_sq = dissipation_inner(cur, cur, cfg.params) / cfg.params.kappa;
        const double trace_term = cfg.dt
            * (model.additive() ? model.trace()
                                : model.sigma() * model.sigma() * l2_before);
        const double r = l2_after - l2_before
                       + 2.0 * cfg.params.kappa * cfg.dt * h_alpha_sq
                       - 2.0 * l2_inner(cur, incr) - trace_term;
        series.residual.push_back(r);
        series.max_abs = std::max(series.max_abs, std::abs(r));
        sum_abs += std::abs(r);
    }
    series.mean_abs = sum_abs / double(series.residual.size());
    return series;
}

double weak_form_residual(const std::vector<SpectralField>& trajectory,
                          const SpectralField& psi, const SimConfig& cfg,
                          const NoiseModel& model, const NoisePath& path,
                          int refine)
{
    if (trajectory.size() < 2)
        throw std::invalid_argument("weak form needs a recorded trajectory");
    const double psi_norm = sobolev_norm(psi, 0.0);
    if (psi_norm == 0.0)
        throw std::invalid_argument("weak form needs a nonzero test function");

    double acc_dissipation = 0.0;
    double acc_transport = 0.0;
    double acc_noise = 0.0;
    for (size_t n = 0; n + 1 < trajectory.size(); ++n) {
        const SpectralField& cur = trajectory[n];
        acc_dissipation += cfg.dt * dissipation_inner(cur, psi, cfg.params);
        if (cfg.nonlinear)
            acc_transport += cfg.dt * l2_inner(advect(cur, psi), cur);
        const SpectralField incr = sample_increment(model, cur, path, int64_t(n), refine);
        acc_noise += l2_inner(incr, psi);
    }
    const double boundary = l2_inner(trajectory.back(), psi)
                          - l2_inner(trajectory.front(), psi);
    return std::abs(boundary + acc_dissipation - acc_transport - acc_noise) / psi_norm;
}

} // namespace sqg
