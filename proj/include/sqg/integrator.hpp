#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqg/noise.hpp"
#include "sqg/operators.hpp"
#include "sqg/spectral_field.hpp"

namespace sqg {

// Noise family selection as it appears in run configurations; concrete
// NoiseModel instances are built per resolution.
struct NoiseSpec {
    enum class Kind { None, Additive, Multiplicative, Ergodic };
    Kind kind = Kind::None;
    // additive power law g(k) = g0 |k|^{-decay}, optionally band-limited
    double g0 = 1.0;
    double decay = 2.0;
    int band_limit = 0;
    // multiplicative
    double sigma = 1.0;
    // ergodic covariance
    double s = 1.0;
    double q_min = 1.0;
    double q_max = 1.0;
};

NoiseModel build_noise(const NoiseSpec& spec, int resolution,
                       const OperatorParams& params);

struct InitSpec {
    enum class Kind { Zero, Analytic, Snapshot, RandomH1 };
    Kind kind = Kind::Zero;
    std::string name;   // analytic field name or snapshot path
    double h1_norm = 1.0;
};

SpectralField build_initial(const InitSpec& spec, int resolution, uint64_t seed);

// Complete description of one run of the evolution equation
//   d theta + A theta dt + u . grad theta dt = G(theta) dW.
struct SimConfig {
    OperatorParams params;
    int resolution = 32;
    double dt = 1e-3;
    double horizon = 1.0; // T
    uint64_t seed = 0;
    NoiseSpec noise;
    InitSpec init;
    int cadence = 1;        // diagnostics every `cadence` steps
    bool nonlinear = true;  // transport term on/off
    double cfl_limit = 0.5; // advective CFL bound dt * max|u| * (N/3)

    void validate() const;
};

// Norms, energy-budget terms, and the Ito residual at one cadence tick.
// Budget entries describe the transition that produced this state; the
// t = 0 row carries zeros.
struct DiagnosticsRecord {
    double t;
    double l2;          // |theta|
    double h_alpha;     // ||theta||_{H^alpha}
    double lp4;         // ||theta||_{L^4}
    double lp_inf;      // ||theta||_{L^inf}
    double dissipation; // 2 kappa dt ||theta^n||_{H^alpha}^2
    double noise_trace; // dt tr(GG*) (additive) or dt sigma^2 |theta^n|^2
    double martingale;  // 2 <theta^n, G(theta^n) dW^n>
    double residual;    // budget residual of the step
    double cfl;         // dt * max|u| * (N/3) at this state
};

enum class RunStatus { Completed, CflViolation, NonFinite };

const char* run_status_name(RunStatus s);

struct SimResult {
    SpectralField state;
    RunStatus status = RunStatus::Completed;
    double failure_time = -1.0; // time of first failure, if any
    std::vector<DiagnosticsRecord> diagnostics;
    std::vector<SpectralField> trajectory; // filled when requested
};

struct RunOptions {
    uint32_t stream = 0;
    bool record_trajectory = false;
    bool collect_diagnostics = true;
    const SpectralField* initial_override = nullptr;
    const NoisePath* path_override = nullptr; // fine_dt must divide cfg.dt
    // Observer called with (step index, time, state), including step 0.
    std::function<void(int64_t, double, const SpectralField&)> on_state;
};

// Advances ceil(T/dt) exponential-Euler steps
//   theta^{n+1}(k) = exp(-kappa |k|^{2 alpha} dt)
//                    * (theta^n(k) - dt B(theta^n)(k) + (G(theta^n) dW^n)(k)).
// The linear part is the exact dissipation semigroup; zero mean and
// Hermitian symmetry are preserved exactly.  Bit-reproducible from
// (config, seed, stream).
SimResult simulate(const SimConfig& cfg, const RunOptions& opts = {});

// Single step of the scheme; throws on CFL violation or non-finite state.
SpectralField step(const SpectralField& theta, const SimConfig& cfg,
                   const NoisePath& path, int64_t step_index);

struct ResidualSeries {
    std::vector<double> residual; // one entry per transition
    double max_abs = 0.0;
    double mean_abs = 0.0;
};

// Ito energy-budget residual per step over a recorded trajectory:
//   |theta^{n+1}|^2 - |theta^n|^2 + 2 kappa dt ||theta^n||_{H^alpha}^2
//   - 2 <theta^n, G dW^n> - dt tr(GG*).
ResidualSeries energy_budget_residual(const std::vector<SpectralField>& trajectory,
                                      const SimConfig& cfg, const NoiseModel& model,
                                      const NoisePath& path, int refine = 1);

// Weak-formulation residual at t = T against a band-limited test function,
// normalized by |psi|:  <theta(T),psi> + sum_n dt <A^{1/2}theta^n, A^{1/2}psi>
// - sum_n dt <u^n . grad psi, theta^n> - <theta(0),psi> - sum_n <G dW^n, psi>.
double weak_form_residual(const std::vector<SpectralField>& trajectory,
                          const SpectralField& psi, const SimConfig& cfg,
                          const NoiseModel& model, const NoisePath& path,
                          int refine = 1);

// <A^{1/2} f, A^{1/2} g> = kappa sum_k |k|^{2 alpha} f_k conj(g_k).
double dissipation_inner(const SpectralField& f, const SpectralField& g,
                         const OperatorParams& params);

} // namespace sqg
