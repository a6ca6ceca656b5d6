#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "sqg/fields.hpp"
#include "sqg/noise.hpp"

using namespace sqg;

namespace {
const double kPi = kTwoPi / 2.0;
const OperatorParams kParams{0.75, 1.0};
} // namespace

TEST_CASE("covariance-root amplitudes follow the closed form")
{
    // |k| = 1 with kappa = q = 1 gives amplitude exactly 1 for any (alpha, s)
    for (double alpha : {0.3, 0.55, 0.9}) {
        for (double s : {1.0, 1.5, 2.0}) {
            const NoiseModel m =
                NoiseModel::ergodic_covariance(16, OperatorParams{alpha, 1.0}, s, 1.0, 1.0);
            CHECK(m.amplitude(1, 0) == 1.0);
            CHECK(m.amplitude(0, -1) == 1.0);
        }
    }
    // alpha = 1/2, s = 1, |k| = 2: exponent -(s+alpha) = -3/2
    const NoiseModel m =
        NoiseModel::ergodic_covariance(16, OperatorParams{0.5, 1.0}, 1.0, 1.0, 1.0);
    CHECK(m.amplitude(2, 0) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-14));
    CHECK(m.amplitude(2, 0) == doctest::Approx(0.35355339059).epsilon(1e-9));
}

TEST_CASE("hypothesis violations are rejected")
{
    CHECK_THROWS_AS(NoiseModel::ergodic_covariance(16, kParams, 0.5, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel::ergodic_covariance(16, kParams, 1.0, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel::ergodic_covariance(16, kParams, 1.0, 2.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel::linear_multiplicative(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel::additive_diagonal(16, [](int, int) { return -1.0; }, 4.0),
                    std::invalid_argument);
}

TEST_CASE("amplitudes pair hermitian and q factors are symmetric")
{
    const NoiseModel m = NoiseModel::ergodic_covariance(16, kParams, 1.0, 0.5, 2.0);
    for (int k1 = -7; k1 <= 7; ++k1)
        for (int k2 = -7; k2 <= 7; ++k2)
            CHECK(m.amplitude(k1, k2) == m.amplitude(-k1, -k2));
}

TEST_CASE("trace condition verdict follows the tail exponent")
{
    // ergodic s = 1, alpha = 3/4, eps = 0.1: 2 - 1.5 + 0.1 - 3.5 = -2.9 < -2
    const NoiseModel erg = NoiseModel::ergodic_covariance(32, kParams, 1.0, 1.0, 1.0);
    const TraceCheck a = check_trace_condition(erg, 0.75, 0.1);
    CHECK(a.sum_exponent == doctest::Approx(-2.9).epsilon(1e-12));
    CHECK(a.convergent);
    CHECK(a.truncated_sum > 0.0);

    // g = |k|^{-1}, alpha = 0.9, eps = 0.1: 2 - 1.8 + 0.1 - 2 = -1.7 > -2
    const NoiseModel slow = NoiseModel::additive_power_law(32, 1.0, 1.0);
    const TraceCheck b = check_trace_condition(slow, 0.9, 0.1);
    CHECK(b.sum_exponent == doctest::Approx(-1.7).epsilon(1e-12));
    CHECK(!b.convergent);

    // zero noise: trace 0
    const TraceCheck c = check_trace_condition(NoiseModel::none(16), 0.75, 0.1);
    CHECK(c.truncated_sum == 0.0);
    CHECK(c.convergent);

    CHECK_THROWS_AS(check_trace_condition(NoiseModel::linear_multiplicative(1.0), 0.75, 0.1),
                    std::invalid_argument);
}

TEST_CASE("growth bound cases")
{
    const NoiseModel add = NoiseModel::additive_power_law(16, 0.5, 2.0);
    const SpectralField zero(16);
    const BoundCheck at_zero = check_growth_bound(add, zero);
    CHECK(at_zero.lhs == add.rho());
    CHECK(at_zero.rhs == add.rho());
    CHECK(at_zero.holds);

    // additive lhs does not depend on theta
    const SpectralField big = 10.0 * random_band_limited(16, 16, 5, 0);
    CHECK(check_growth_bound(add, big).lhs == at_zero.lhs);

    // multiplicative: sigma = 0.5, |theta| = 2 -> lhs = 1, rhs = 1
    const NoiseModel mult = NoiseModel::linear_multiplicative(0.5);
    SpectralField theta = harmonic(16, 1, 0, 0.0, 1.0); // norm pi sqrt 2
    theta.scale(2.0 / (kPi * std::sqrt(2.0)));
    const BoundCheck g = check_growth_bound(mult, theta);
    CHECK(g.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.rhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.holds);
    CHECK(mult.lambda0() == 0.25);
    CHECK(mult.rho() == 0.0);
    CHECK(mult.beta() == 0.5);
}

TEST_CASE("negative-half lipschitz bound")
{
    const NoiseModel mult = NoiseModel::linear_multiplicative(0.8);
    const SpectralField u = random_band_limited(16, 16, 3, 0);
    const BoundCheck same = check_lipschitz_negative_half(mult, u, u);
    CHECK(same.lhs == 0.0);
    CHECK(same.holds);

    const NoiseModel add = NoiseModel::additive_power_law(16, 1.0, 2.0);
    const SpectralField v = random_band_limited(16, 16, 4, 0);
    CHECK(check_lipschitz_negative_half(add, u, v).lhs == 0.0);

    // u - v = sin(x1): |k| = 1 so Lambda^{-1/2} acts as the identity
    const SpectralField w = u + harmonic(16, 1, 0, 0.0, 1.0);
    const BoundCheck lip = check_lipschitz_negative_half(mult, w, u);
    CHECK(lip.lhs == doctest::Approx(0.8 * kPi * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(lip.rhs == doctest::Approx(lip.lhs).epsilon(1e-14));
    CHECK(lip.holds);
}

TEST_CASE("lp intensity bound")
{
    const NoiseModel mult = NoiseModel::linear_multiplicative(1.0);
    const LpNoiseCheck zero = check_lp_noise_bound(mult, SpectralField(16), 4.0);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.holds);

    // sigma = 1, p = 4, theta = sin(x1): lhs = int sin^4 = 3 pi^2/2, C = 1
    const LpNoiseCheck sin_case =
        check_lp_noise_bound(mult, harmonic(16, 1, 0, 0.0, 1.0), 4.0);
    CHECK(sin_case.lhs == doctest::Approx(1.5 * kPi * kPi).epsilon(1e-10));
    CHECK(sin_case.constant == 1.0);
    CHECK(sin_case.rhs == doctest::Approx(1.0 + 1.5 * kPi * kPi).epsilon(1e-10));
    CHECK(sin_case.holds);

    // additive single mode g = 1 at k = (1,0), p = 4: the pointwise
    // intensity kernel is constant, and the quadrature oracle of
    // int (sum_j |G(e_j)(x)|^2)^2 dx gives 1/pi^2.
    const NoiseModel single = NoiseModel::single_mode(16, 1, 0, 1.0);
    const LpNoiseCheck kernel = check_lp_noise_bound(single, SpectralField(16), 4.0);
    const int m = 24;
    const PhysicalField img_cos =
        to_physical(harmonic(16, 1, 0, std::sqrt(2.0) / kTwoPi, 0.0), m);
    const PhysicalField img_sin =
        to_physical(harmonic(16, 1, 0, 0.0, std::sqrt(2.0) / kTwoPi), m);
    double quad = 0.0;
    for (int i = 0; i < m * m; ++i) {
        const double s = img_cos.values()[size_t(i)] * img_cos.values()[size_t(i)]
                       + img_sin.values()[size_t(i)] * img_sin.values()[size_t(i)];
        quad += s * s;
    }
    quad *= (kTwoPi / m) * (kTwoPi / m);
    CHECK(quad == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-10));
    CHECK(kernel.lhs == doctest::Approx(quad).epsilon(1e-10));
    CHECK(kernel.holds);

    CHECK_THROWS_AS(check_lp_noise_bound(mult, SpectralField(16), 2.0),
                    std::invalid_argument);
}

TEST_CASE("increments replay bitwise and are exactly hermitian")
{
    const NoisePath path(2024, 3, 1e-3);
    const NoiseModel model = NoiseModel::ergodic_covariance(16, kParams, 1.0, 1.0, 1.0);
    const SpectralField theta = random_band_limited(16, 16, 6, 0);
    const SpectralField a = sample_increment(model, theta, path, 42);
    const SpectralField b = sample_increment(model, theta, path, 42);
    for (size_t i = 0; i < a.data().size(); ++i)
        CHECK(a.data()[i] == b.data()[i]);
    for (int k1 = -7; k1 <= 7; ++k1)
        for (int k2 = -7; k2 <= 7; ++k2)
            CHECK(a.coeff(k1, k2) == std::conj(a.coeff(-k1, -k2)));
    // distinct steps decorrelate
    const SpectralField c = sample_increment(model, theta, path, 43);
    CHECK(sobolev_norm(c - a, 0.0) > 0.0);
}

TEST_CASE("refined increments sum to the coarse increment")
{
    const NoisePath path(99, 0, 2.5e-4);
    const std::complex<double> coarse = path.mode_increment(3, 2, -1, 4);
    std::complex<double> sum(0.0, 0.0);
    for (int j = 12; j < 16; ++j)
        sum += path.mode_increment(j, 2, -1, 1);
    CHECK(coarse == sum);

    const double s_coarse = path.scalar_increment(5, 4);
    double s_sum = 0.0;
    for (int j = 20; j < 24; ++j)
        s_sum += path.scalar_increment(j, 1);
    CHECK(s_coarse == s_sum);
}

TEST_CASE("zero models and zero states give zero increments")
{
    const NoisePath path(7, 0, 1e-2);
    const SpectralField theta = random_band_limited(16, 16, 2, 0);
    CHECK(sobolev_norm(sample_increment(NoiseModel::none(16), theta, path, 0), 0.0)
          == 0.0);
    const NoiseModel mult = NoiseModel::linear_multiplicative(2.0);
    CHECK(sobolev_norm(sample_increment(mult, SpectralField(16), path, 0), 0.0) == 0.0);
}

TEST_CASE("single forced mode has increment variance dt (monte carlo)")
{
    const NoiseModel model = NoiseModel::single_mode(16, 1, 0, 1.0);
    const double dt = 1e-2;
    const NoisePath path(31415, 0, dt);
    const int n = 100000;
    double mean = 0.0, second = 0.0;
    for (int i = 0; i < n; ++i) {
        // |increment|^2 over the field = g^2 (|d beta_k|^2 + |d beta_{-k}|^2)
        const SpectralField w =
            sample_increment(model, SpectralField(16), path, i);
        const double e = l2_inner(w, w);
        mean += e;
        second += e * e;
    }
    mean /= n;
    second /= n;
    const double se = std::sqrt((second - mean * mean) / n);
    // expectation: 2 modes, variance dt each
    CHECK(std::abs(mean - 2.0 * dt) <= 3.0 * se);
}

TEST_CASE("ito isometry over many paths (monte carlo)")
{
    // sum of increments over n_steps has variance T * trace
    const NoiseModel model = NoiseModel::additive_power_law(8, 0.5, 2.0, 2);
    const int n_paths = 10000;
    const int n_steps = 16;
    const double dt = 1.0 / n_steps;
    double mean = 0.0, second = 0.0;
    for (int p = 0; p < n_paths; ++p) {
        const NoisePath path(777, uint32_t(p), dt);
        SpectralField total(8);
        for (int s = 0; s < n_steps; ++s)
            total = total + sample_increment(model, total, path, s);
        const double e = l2_inner(total, total);
        mean += e;
        second += e * e;
    }
    mean /= n_paths;
    second /= n_paths;
    const double se = std::sqrt((second - mean * mean) / n_paths);
    CHECK(std::abs(mean - model.trace()) <= 3.0 * se);
}
