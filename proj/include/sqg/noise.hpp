#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "sqg/operators.hpp"
#include "sqg/spectral_field.hpp"

namespace sqg {

enum class NoiseVariant { AdditiveDiagonal, LinearMultiplicative, ErgodicCovariance };

const char* noise_variant_name(NoiseVariant v);

// Covariance structure of the forcing G(theta)dW.  Additive families carry
// one amplitude g(k) >= 0 per retained mode with g(-k) = g(k); the
// multiplicative family is G(theta) = sigma * theta against one scalar
// Brownian motion.  Derived constants:
//   growth bound   |G(theta)|^2 <= lambda0 |theta|^2 + rho,
//   Lipschitz      beta in the H^{-1/2} contraction estimate.
class NoiseModel {
public:
    static NoiseModel additive_diagonal(int resolution,
                                        const std::function<double(int, int)>& amplitude,
                                        double tail_exponent_g_sq);
    // g(k) = g0 * |k|^{-decay} for 0 < |k| <= band_limit (0 = all modes).
    static NoiseModel additive_power_law(int resolution, double g0, double decay,
                                         int band_limit = 0);
    // One forced conjugate pair at +-(k1,k2).
    static NoiseModel single_mode(int resolution, int k1, int k2, double g);
    static NoiseModel linear_multiplicative(double sigma);
    // g(k) = q(k)^{1/2} * kappa^{-(s+alpha)/(2 alpha)} * |k|^{-(s+alpha)}
    // with q(k) in [q_min, q_max], q_min > 0, s >= 1; every retained mode
    // forced (the covariance root is an isomorphism on the truncation).
    static NoiseModel ergodic_covariance(int resolution, const OperatorParams& params,
                                         double s, double q_min, double q_max);
    static NoiseModel none(int resolution);

    NoiseVariant variant() const { return variant_; }
    bool additive() const { return variant_ != NoiseVariant::LinearMultiplicative; }
    int resolution() const { return n_; }

    double amplitude(int k1, int k2) const;
    double sigma() const { return sigma_; }
    double trace() const { return trace_; } // sum of g(k)^2 over the truncation

    double lambda0() const { return lambda0_; }
    double rho() const { return rho_; }
    double beta() const { return beta_; }
    // Decay exponent e with g(k)^2 ~ |k|^{-e} (inf for band-limited g).
    double tail_exponent() const { return tail_exponent_; }
    double regularity() const { return s_; } // s of Assumption-3.1 models

    // Hilbert-Schmidt norm squared |G(theta)|^2_{L2(K,H)}.
    double hs_norm_sq(const SpectralField& theta) const;

private:
    NoiseModel() = default;

    NoiseVariant variant_ = NoiseVariant::AdditiveDiagonal;
    int n_ = 0;
    std::vector<double> g_; // FFTW layout, empty for multiplicative
    double sigma_ = 0.0;
    double trace_ = 0.0;
    double lambda0_ = 0.0;
    double rho_ = 0.0;
    double beta_ = 0.0;
    double tail_exponent_ = 0.0;
    double s_ = 0.0;
};

struct TraceCheck {
    double truncated_sum; // sum over the truncation of |k|^{2-2a+eps} g(k)^2
    double sum_exponent;  // 2 - 2*alpha + eps - tail exponent of g^2
    bool convergent;      // sum_exponent < -2
};

// Trace condition Tr(Lambda^{2-2*alpha+eps} G G^*) < inf for additive G.
TraceCheck check_trace_condition(const NoiseModel& model, double alpha, double eps);

struct BoundCheck {
    double lhs;
    double rhs;
    bool holds;
};

// Growth bound |G(theta)|^2_{L2(K,H)} <= lambda0 |theta|^2 + rho.
BoundCheck check_growth_bound(const NoiseModel& model, const SpectralField& theta);

// ||Lambda^{-1/2}(G(u)-G(v))||_{L2(K,H)} <= beta |Lambda^{-1/2}(u-v)|.
BoundCheck check_lipschitz_negative_half(const NoiseModel& model,
                                         const SpectralField& u,
                                         const SpectralField& v);

struct LpNoiseCheck {
    double lhs;
    double constant; // the model's C for this p
    double rhs;      // C * (1 + ||theta||_p^p)
    bool holds;
};

// Pointwise-intensity bound int (sum_j |G(theta)(e_j)|^2)^{p/2} dx
// <= C (1 + int |theta|^p dx), 2 < p < inf.
LpNoiseCheck check_lp_noise_bound(const NoiseModel& model, const SpectralField& theta,
                                  double p);

// Counter-indexed view of a cylindrical Wiener path.  Every increment is a
// pure function of (seed, stream, purpose, step, mode), so replay is exact
// under any evaluation order, coarse resolutions see the spectral
// restriction of fine-level increments for free, and a run at time step
// r*fine_dt consumes sums of r fine increments (shared refined paths).
class NoisePath {
public:
    NoisePath(uint64_t seed, uint32_t stream, double fine_dt);

    uint64_t seed() const { return seed_; }
    uint32_t stream() const { return stream_; }
    double fine_dt() const { return fine_dt_; }

    // Complex increment for mode k over [step*dt, (step+1)*dt), where
    // dt = refine * fine_dt; variance dt split evenly between the real and
    // imaginary parts, conjugate-paired across +-k.
    std::complex<double> mode_increment(int64_t step, int k1, int k2,
                                        int refine = 1) const;

    // Scalar Brownian increment of variance refine * fine_dt.
    double scalar_increment(int64_t step, int refine = 1) const;

private:
    uint64_t seed_;
    uint32_t stream_;
    double fine_dt_;
};

// G(theta) * (W((step+1)dt) - W(step dt)) as a spectral field.
SpectralField sample_increment(const NoiseModel& model, const SpectralField& theta,
                               const NoisePath& path, int64_t step, int refine = 1);

} // namespace sqg
