#include "sqg/selfcheck.hpp"

#include <cmath>
#include <complex>

#include "sqg/fields.hpp"
#include "sqg/integrator.hpp"
#include "sqg/noise.hpp"
#include "sqg/operators.hpp"
#include "sqg/reference.hpp"
#include "sqg/report_io.hpp"
#include "sqg/spectral_field.hpp"

namespace sqg {

namespace {

struct Battery {
    uint64_t seed;
    uint32_t stream = 0;
    std::vector<PropertyResult> results;

    SpectralField random_field(int n)
    {
        return random_band_limited(n, n, seed, stream++);
    }

    void check(const std::string& name, bool pass, const std::string& detail)
    {
        results.push_back({name, pass, detail});
    }

    // pass iff worst <= bound; detail reports the worst value seen
    void check_worst(const std::string& name, double worst, double bound)
    {
        check(name, worst <= bound,
              "worst = " + format_double(worst) + ", bound = " + format_double(bound));
    }
};

bool hermitian_exact(const SpectralField& f)
{
    const int km = f.max_mode();
    for (int k1 = -km; k1 <= km; ++k1)
        for (int k2 = -km; k2 <= km; ++k2)
            if (f.coeff(k1, k2) != std::conj(f.coeff(-k1, -k2)))
                return false;
    const int ny = f.resolution() / 2;
    for (int k = -ny + 1; k <= ny; ++k)
        if (f.coeff(ny, k) != std::complex<double>(0.0, 0.0)
            || f.coeff(k, ny) != std::complex<double>(0.0, 0.0))
            return false;
    return f.coeff(0, 0) == std::complex<double>(0.0, 0.0);
}

double rel_field_error(const SpectralField& a, const SpectralField& b)
{
    const double base = sobolev_norm(b, 0.0);
    return sobolev_norm(a - b, 0.0) / (base > 0.0 ? base : 1.0);
}

void field_checks(Battery& b)
{
    bool structural = true;
    double worst_roundtrip = 0.0;
    double worst_parseval = 0.0;
    for (int n : {8, 16, 32}) {
        for (int rep = 0; rep < 34; ++rep) {
            const SpectralField f = b.random_field(n);
            structural = structural && hermitian_exact(f);

            const PhysicalField g = to_physical(f, dealias_grid(n));
            const SpectralField f2 = to_spectral(g, n);
            structural = structural && hermitian_exact(f2);
            worst_roundtrip = std::max(worst_roundtrip, rel_field_error(f2, f));

            const int m = g.grid_size();
            const double cell = (kTwoPi / m) * (kTwoPi / m);
            double quad = 0.0;
            for (double v : g.values())
                quad += v * v;
            quad *= cell;
            const double spectral = l2_inner(f, f);
            worst_parseval = std::max(worst_parseval,
                                      std::abs(quad - spectral)
                                          / std::max(spectral, 1e-300));
        }
    }
    b.check("field/structural-invariants", structural,
            "Hermitian pairing, zero mean, Nyquist zero (exact)");
    b.check_worst("field/transform-roundtrip", worst_roundtrip, 1e-12);
    b.check_worst("field/parseval", worst_parseval, 1e-10);

    // Poincare with lambda_1 = kappa and norm monotonicity in s.
    const OperatorParams params{0.7, 1.3};
    bool poincare = true;
    bool monotone = true;
    for (int rep = 0; rep < 20; ++rep) {
        const SpectralField f = b.random_field(16);
        const double l2_sq = l2_inner(f, f);
        const double graph_sq = dissipation_inner(f, f, params);
        poincare = poincare && graph_sq >= params.kappa * l2_sq * (1.0 - 1e-12);
        const double s_grid[] = {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
        for (int i = 0; i + 1 < 6; ++i)
            monotone = monotone
                && sobolev_norm(f, s_grid[i])
                       <= sobolev_norm(f, s_grid[i + 1]) * (1.0 + 1e-12);
    }
    b.check("field/poincare", poincare, "|A^{1/2}f|^2 >= kappa |f|^2");
    b.check("field/norm-monotonicity", monotone, "s1 <= s2 implies H^s1 <= H^s2");
}

void operator_checks(Battery& b)
{
    // Eigenrelation on every shell with |k| <= N/3 at N = 16.
    const OperatorParams params{0.62, 0.8};
    bool eigen = true;
    const int n = 16;
    for (int k1 = -5; k1 <= 5; ++k1) {
        for (int k2 = -5; k2 <= 5; ++k2) {
            if ((k1 == 0 && k2 == 0) || k1 * k1 + k2 * k2 > 25)
                continue;
            SpectralField f(n);
            f.set_mode(k1, k2, {0.4, -1.1});
            const SpectralField af = apply_dissipation(f, params);
            const double k_sq = double(k1) * k1 + double(k2) * k2;
            const std::complex<double> expect =
                params.eigenvalue(k_sq) * f.coeff(k1, k2);
            eigen = eigen && af.coeff(k1, k2) == expect;
        }
    }
    b.check("operators/dissipation-eigenrelation", eigen,
            "kappa |k|^{2 alpha} per mode, exact");

    double worst_div = 0.0;
    double worst_defect = 0.0;
    double worst_bilinear = 0.0;
    for (int resolution : {8, 16, 32}) {
        for (int rep = 0; rep < 10; ++rep) {
            const SpectralField theta = b.random_field(resolution);
            worst_div = std::max(worst_div, divergence_linf(riesz_velocity(theta)));
            worst_defect = std::max(worst_defect, skew_symmetry_defect(theta));

            const SpectralField psi = b.random_field(resolution);
            const double lhs = l2_inner(nonlinear_term(theta), psi);
            const double rhs = l2_inner(advect(theta, psi), theta);
            worst_bilinear = std::max(worst_bilinear,
                                      std::abs(lhs + rhs)
                                          / (std::abs(lhs) + std::abs(rhs) + 1e-300));
        }
    }
    b.check("operators/riesz-divergence", worst_div == 0.0,
            "spectral divergence identically zero, worst = " + format_double(worst_div));
    b.check_worst("operators/skew-symmetry", worst_defect, 1e-10);
    b.check_worst("operators/bilinear-consistency", worst_bilinear, 1e-10);

    double worst_oracle = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        const SpectralField theta = b.random_field(8);
        worst_oracle = std::max(worst_oracle,
                                rel_field_error(nonlinear_term(theta),
                                                nonlinear_term_reference(theta)));
    }
    b.check_worst("operators/triad-convolution-oracle", worst_oracle, 1e-10);
}

void noise_checks(Battery& b)
{
    const int n = 16;
    const OperatorParams params{0.75, 1.0};
    const NoiseModel models[] = {
        NoiseModel::additive_power_law(n, 0.5, 2.0),
        NoiseModel::linear_multiplicative(0.7),
        NoiseModel::ergodic_covariance(n, params, 1.0, 1.0, 1.0),
    };
    bool growth = true, lipschitz = true, lp_bound = true;
    for (const auto& model : models) {
        for (int rep = 0; rep < 34; ++rep) {
            const SpectralField u = b.random_field(n);
            const SpectralField v = b.random_field(n);
            growth = growth && check_growth_bound(model, u).holds;
            lipschitz = lipschitz && check_lipschitz_negative_half(model, u, v).holds;
            lp_bound = lp_bound && check_lp_noise_bound(model, u, 4.0).holds;
        }
    }
    b.check("noise/growth-bound", growth, "|G(theta)|^2 <= lambda0 |theta|^2 + rho");
    b.check("noise/lipschitz-negative-half", lipschitz,
            "H^{-1/2} Lipschitz bound with beta");
    b.check("noise/lp-intensity-bound", lp_bound, "pointwise L^p intensity bound");

    // Amplitude law of the covariance-root family with q = 1, kappa = 1.
    const NoiseModel ergodic = NoiseModel::ergodic_covariance(n, params, 1.0, 1.0, 1.0);
    double worst_law = 0.0;
    bool law_formula = true;
    const double s_plus_alpha = 1.0 + params.alpha;
    for (int k1 = -7; k1 <= 7; ++k1) {
        for (int k2 = -7; k2 <= 7; ++k2) {
            if (k1 == 0 && k2 == 0)
                continue;
            const double k_sq = double(k1) * k1 + double(k2) * k2;
            const double g = ergodic.amplitude(k1, k2);
            law_formula = law_formula && g == std::pow(k_sq, -0.5 * s_plus_alpha);
            worst_law = std::max(worst_law,
                                 std::abs(g * std::pow(k_sq, 0.5 * s_plus_alpha) - 1.0));
        }
    }
    b.check("noise/amplitude-law-formula", law_formula,
            "g(k) = |k|^{-(s+alpha)} bitwise at q = 1, kappa = 1");
    b.check_worst("noise/amplitude-law-constancy", worst_law, 1e-13);

    // Trace condition verdicts against tail-exponent arithmetic.
    const TraceCheck convergent =
        check_trace_condition(NoiseModel::ergodic_covariance(n, params, 1.0, 1.0, 1.0),
                              0.75, 0.1);
    const TraceCheck divergent =
        check_trace_condition(NoiseModel::additive_power_law(n, 1.0, 1.0), 0.9, 0.1);
    b.check("noise/trace-verdicts", convergent.convergent && !divergent.convergent,
            "sum exponents " + format_double(convergent.sum_exponent) + " / "
                + format_double(divergent.sum_exponent));

    // Reproducibility and exact realness of sampled increments.
    const NoisePath path(b.seed, 7, 1e-3);
    const SpectralField theta = b.random_field(n);
    const SpectralField w1 = sample_increment(models[0], theta, path, 11);
    const SpectralField w2 = sample_increment(models[0], theta, path, 11);
    bool reproducible = true;
    for (size_t i = 0; i < w1.data().size(); ++i)
        reproducible = reproducible && w1.data()[i] == w2.data()[i];
    b.check("noise/replay-bitwise", reproducible, "same (seed, step) replays exactly");
    b.check("noise/increment-hermitian", hermitian_exact(w1),
            "sampled increments stay exactly real");
}

void integrator_checks(Battery& b)
{
    SimConfig cfg;
    cfg.params = {0.75, 1.0};
    cfg.resolution = 8;
    cfg.dt = 1e-3;
    cfg.horizon = 10.0; // 10^4 steps
    cfg.seed = b.seed ^ 0x5a1e;
    cfg.noise.kind = NoiseSpec::Kind::Additive;
    cfg.noise.g0 = 0.3;
    cfg.noise.decay = 2.0;
    cfg.init.kind = InitSpec::Kind::RandomH1;
    cfg.init.h1_norm = 1.0;
    cfg.cadence = 1000;

    bool conserved = true;
    RunOptions opts;
    opts.collect_diagnostics = false;
    opts.on_state = [&](int64_t step, double, const SpectralField& st) {
        if (step % 100 == 0)
            conserved = conserved && hermitian_exact(st);
    };
    const SimResult run1 = simulate(cfg, opts);
    b.check("integrator/structure-preserved",
            conserved && run1.status == RunStatus::Completed,
            "zero mean and Hermitian symmetry exact over 10^4 steps");

    RunOptions plain;
    plain.collect_diagnostics = false;
    const SimResult run2 = simulate(cfg, plain);
    bool replay = run1.status == run2.status;
    for (size_t i = 0; replay && i < run1.state.data().size(); ++i)
        replay = run1.state.data()[i] == run2.state.data()[i];
    b.check("integrator/deterministic-replay", replay,
            "two runs of one config agree bitwise");

    // Exact semigroup on eigenmodes with transport and noise disabled.
    SimConfig linear = cfg;
    linear.nonlinear = false;
    linear.noise.kind = NoiseSpec::Kind::None;
    linear.horizon = 50 * linear.dt;
    linear.init.kind = InitSpec::Kind::Analytic;
    linear.init.name = "sin_2x1";
    const SimResult decay = simulate(linear, plain);
    const double factor = std::exp(-linear.params.eigenvalue(4.0) * linear.dt);
    std::complex<double> expect = harmonic(8, 2, 0, 0.0, 1.0).coeff(2, 0);
    for (int i = 0; i < 50; ++i)
        expect *= factor;
    b.check("integrator/eigenmode-exactness",
            decay.state.coeff(2, 0) == expect,
            "per-step decay factor exp(-kappa |k|^{2 alpha} dt), exact");

    // Monotone L^2 decay without forcing.
    SimConfig damped = cfg;
    damped.noise.kind = NoiseSpec::Kind::None;
    damped.horizon = 0.2;
    double previous = -1.0;
    bool monotone = true;
    RunOptions mon;
    mon.collect_diagnostics = false;
    mon.on_state = [&](int64_t, double, const SpectralField& st) {
        const double l2 = sobolev_norm(st, 0.0);
        if (previous >= 0.0)
            monotone = monotone && l2 <= previous * (1.0 + 1e-12);
        previous = l2;
    };
    simulate(damped, mon);
    b.check("integrator/dissipativity", monotone, "|theta| decays without forcing");
}

} // namespace

std::vector<PropertyResult> run_selfcheck(uint64_t seed)
{
    Battery battery{seed};
    field_checks(battery);
    operator_checks(battery);
    noise_checks(battery);
    integrator_checks(battery);
    return battery.results;
}

} // namespace sqg
