#include "sqg/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sqg/rng.hpp"

namespace sqg {

namespace {

// Purpose tags keep the independent random streams of one seed apart.
enum Purpose : uint32_t {
    kModeNoise = 1,
    kScalarNoise = 2,
    kInitField = 3,
    kQFactor = 4,
};

inline bool canonical(int k1, int k2)
{
    return k1 > 0 || (k1 == 0 && k2 > 0);
}

inline uint32_t mode_code(int k1, int k2)
{
    return (uint32_t(uint16_t(int16_t(k1))) << 16) | uint16_t(int16_t(k2));
}

inline Philox4x32::key_t seed_key(uint64_t seed)
{
    return {uint32_t(seed), uint32_t(seed >> 32)};
}

inline Philox4x32::ctr_t make_ctr(int64_t step, uint32_t code, uint32_t purpose,
                                  uint32_t stream)
{
    return {uint32_t(uint64_t(step)), uint32_t(uint64_t(step) >> 32), code,
            purpose | (stream << 8)};
}

// q(k) factors are a fixed property of the model, not of the run seed.
constexpr uint64_t kQFactorSeed = 0x5147514d51475144ull;

double q_factor(int k1, int k2, double q_min, double q_max)
{
    if (q_min == q_max)
        return q_min;
    int c1 = k1, c2 = k2;
    if (!canonical(c1, c2)) {
        c1 = -c1;
        c2 = -c2;
    }
    const double u = uniform01(make_ctr(0, mode_code(c1, c2), kQFactor, 0),
                               seed_key(kQFactorSeed));
    return q_min + (q_max - q_min) * u;
}

} // namespace

const char* noise_variant_name(NoiseVariant v)
{
    switch (v) {
    case NoiseVariant::AdditiveDiagonal: return "additive-diagonal";
    case NoiseVariant::LinearMultiplicative: return "linear-multiplicative";
    default: return "ergodic-covariance";
    }
}

NoiseModel NoiseModel::additive_diagonal(int resolution,
                                         const std::function<double(int, int)>& amplitude,
                                         double tail_exponent_g_sq)
{
    NoiseModel m;
    m.variant_ = NoiseVariant::AdditiveDiagonal;
    m.n_ = resolution;
    SpectralField layout(resolution); // index arithmetic only
    m.g_.assign(size_t(resolution) * resolution, 0.0);
    const int km = layout.max_mode();
    double trace = 0.0;
    for (int k1 = 0; k1 <= km; ++k1) {
        for (int k2 = (k1 == 0 ? 1 : -km); k2 <= km; ++k2) {
            const double g = amplitude(k1, k2);
            if (!(g >= 0.0) || !std::isfinite(g))
                throw std::invalid_argument("noise amplitude must be finite and >= 0");
            m.g_[layout.index(k1, k2)] = g;
            m.g_[layout.index(-k1, -k2)] = g;
            trace += 2.0 * g * g;
        }
    }
    m.trace_ = trace;
    m.lambda0_ = 0.0;
    m.rho_ = trace;
    m.beta_ = 0.0;
    m.tail_exponent_ = tail_exponent_g_sq;
    return m;
}

NoiseModel NoiseModel::additive_power_law(int resolution, double g0, double decay,
                                          int band_limit)
{
    const double limit_sq = band_limit > 0 ? double(band_limit) * band_limit
                                           : std::numeric_limits<double>::infinity();
    auto amp = [g0, decay, limit_sq](int k1, int k2) {
        const double k_sq = double(k1) * k1 + double(k2) * k2;
        if (k_sq > limit_sq)
            return 0.0;
        return g0 * std::pow(k_sq, -0.5 * decay);
    };
    const double tail = band_limit > 0 ? std::numeric_limits<double>::infinity()
                                       : 2.0 * decay;
    return additive_diagonal(resolution, amp, tail);
}

NoiseModel NoiseModel::single_mode(int resolution, int k1, int k2, double g)
{
    auto amp = [k1, k2, g](int a, int b) {
        return ((a == k1 && b == k2) || (a == -k1 && b == -k2)) ? g : 0.0;
    };
    return additive_diagonal(resolution, amp,
                             std::numeric_limits<double>::infinity());
}

NoiseModel NoiseModel::linear_multiplicative(double sigma)
{
    if (!(sigma >= 0.0))
        throw std::invalid_argument("multiplicative intensity must be >= 0");
    NoiseModel m;
    m.variant_ = NoiseVariant::LinearMultiplicative;
    m.sigma_ = sigma;
    m.lambda0_ = sigma * sigma;
    m.rho_ = 0.0;
    m.beta_ = sigma;
    m.tail_exponent_ = std::numeric_limits<double>::quiet_NaN();
    return m;
}

NoiseModel NoiseModel::ergodic_covariance(int resolution, const OperatorParams& params,
                                          double s, double q_min, double q_max)
{
    params.validate();
    if (!(s >= 1.0))
        throw std::invalid_argument("ergodic covariance requires regularity s >= 1");
    if (!(q_min > 0.0) || !(q_min <= q_max))
        throw std::invalid_argument("ergodic covariance requires 0 < q_min <= q_max");
    const double exponent = -(s + params.alpha) / (2.0 * params.alpha);
    const double kappa_factor = std::pow(params.kappa, exponent);
    auto amp = [&](int k1, int k2) {
        const double k_sq = double(k1) * k1 + double(k2) * k2;
        return std::sqrt(q_factor(k1, k2, q_min, q_max)) * kappa_factor
             * std::pow(k_sq, -0.5 * (s + params.alpha));
    };
    NoiseModel m = additive_diagonal(resolution, amp, 2.0 * (s + params.alpha));
    m.variant_ = NoiseVariant::ErgodicCovariance;
    m.s_ = s;
    return m;
}

NoiseModel NoiseModel::none(int resolution)
{
    return additive_diagonal(resolution, [](int, int) { return 0.0; },
                             std::numeric_limits<double>::infinity());
}

double NoiseModel::amplitude(int k1, int k2) const
{
    if (!additive() || n_ == 0)
        return 0.0;
    const int a1 = k1 >= 0 ? k1 : k1 + n_;
    const int a2 = k2 >= 0 ? k2 : k2 + n_;
    return g_[size_t(a1) * n_ + a2];
}

double NoiseModel::hs_norm_sq(const SpectralField& theta) const
{
    if (additive())
        return trace_;
    return sigma_ * sigma_ * l2_inner(theta, theta);
}

TraceCheck check_trace_condition(const NoiseModel& model, double alpha, double eps)
{
    if (!model.additive())
        throw std::invalid_argument("trace condition applies to additive noise only");
    const int n = model.resolution();
    const int km = n / 2 - 1;
    const double weight_exp = 2.0 - 2.0 * alpha + eps;
    double sum = 0.0;
    for (int k1 = -km; k1 <= km; ++k1) {
        for (int k2 = -km; k2 <= km; ++k2) {
            if (k1 == 0 && k2 == 0)
                continue;
            const double g = model.amplitude(k1, k2);
            if (g == 0.0)
                continue;
            const double k_sq = double(k1) * k1 + double(k2) * k2;
            sum += std::pow(k_sq, 0.5 * weight_exp) * g * g;
        }
    }
    const double sum_exponent = weight_exp - model.tail_exponent();
    return {sum, sum_exponent, sum_exponent < -2.0};
}

BoundCheck check_growth_bound(const NoiseModel& model, const SpectralField& theta)
{
    const double lhs = model.hs_norm_sq(theta);
    const double rhs = model.lambda0() * l2_inner(theta, theta) + model.rho();
    return {lhs, rhs, lhs <= rhs};
}

BoundCheck check_lipschitz_negative_half(const NoiseModel& model,
                                         const SpectralField& u,
                                         const SpectralField& v)
{
    SpectralField diff = u;
    for (size_t i = 0; i < diff.data().size(); ++i)
        diff.data()[i] -= v.data()[i];
    const double half_norm = sobolev_norm(diff, -0.5);
    const double lhs = model.additive() ? 0.0 : model.sigma() * half_norm;
    const double rhs = model.beta() * half_norm;
    return {lhs, rhs, lhs <= rhs};
}

LpNoiseCheck check_lp_noise_bound(const NoiseModel& model, const SpectralField& theta,
                                  double p)
{
    if (!(p > 2.0) || std::isinf(p))
        throw std::invalid_argument("lp noise bound requires 2 < p < inf");
    const double theta_p = std::pow(lp_norm(theta, p), p);
    double lhs, constant;
    if (model.additive()) {
        // Diagonal pair amplitudes make the pointwise intensity
        // sum_j |G(e_j)(x)|^2 the constant trace/(2 pi)^2.
        const double intensity = model.trace() / (kTwoPi * kTwoPi);
        lhs = kTwoPi * kTwoPi * std::pow(intensity, 0.5 * p);
        constant = lhs;
    } else {
        constant = std::pow(model.sigma(), p);
        lhs = constant * theta_p;
    }
    const double rhs = constant * (1.0 + theta_p);
    return {lhs, constant, rhs, lhs <= rhs};
}

NoisePath::NoisePath(uint64_t seed, uint32_t stream, double fine_dt)
    : seed_(seed)
    , stream_(stream)
    , fine_dt_(fine_dt)
{
    if (!(fine_dt > 0.0))
        throw std::invalid_argument("path time step must be positive");
    if (stream > 0x00FFFFFFu)
        throw std::invalid_argument("stream index exceeds 24 bits");
}

std::complex<double> NoisePath::mode_increment(int64_t step, int k1, int k2,
                                               int refine) const
{
    if (k1 == 0 && k2 == 0)
        return {0.0, 0.0};
    int c1 = k1, c2 = k2;
    const bool flip = !canonical(c1, c2);
    if (flip) {
        c1 = -c1;
        c2 = -c2;
    }
    const double scale = std::sqrt(0.5 * fine_dt_);
    const uint32_t code = mode_code(c1, c2);
    const auto key = seed_key(seed_);
    std::complex<double> sum(0.0, 0.0);
    for (int64_t j = step * refine; j < (step + 1) * refine; ++j) {
        const auto z = gaussian_pair(make_ctr(j, code, kModeNoise, stream_), key);
        sum += std::complex<double>(scale * z.z0, scale * z.z1);
    }
    return flip ? std::conj(sum) : sum;
}

double NoisePath::scalar_increment(int64_t step, int refine) const
{
    const double scale = std::sqrt(fine_dt_);
    const auto key = seed_key(seed_);
    double sum = 0.0;
    for (int64_t j = step * refine; j < (step + 1) * refine; ++j)
        sum += scale * gaussian_pair(make_ctr(j, 0, kScalarNoise, stream_), key).z0;
    return sum;
}

SpectralField sample_increment(const NoiseModel& model, const SpectralField& theta,
                               const NoisePath& path, int64_t step, int refine)
{
    if (!model.additive()) {
        SpectralField out = theta;
        out.scale(model.sigma() * path.scalar_increment(step, refine));
        return out;
    }
    SpectralField out(model.resolution());
    const int km = out.max_mode();
    for (int k1 = 0; k1 <= km; ++k1) {
        for (int k2 = (k1 == 0 ? 1 : -km); k2 <= km; ++k2) {
            const double g = model.amplitude(k1, k2);
            if (g == 0.0)
                continue;
            const auto d = path.mode_increment(step, k1, k2, refine);
            out.data()[out.index(k1, k2)] = g * d;
            out.data()[out.index(-k1, -k2)] = std::conj(g * d);
        }
    }
    return out;
}

} // namespace sqg
