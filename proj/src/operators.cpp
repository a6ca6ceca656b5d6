#include "sqg/operators.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sqg {

void OperatorParams::validate() const
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(kappa > 0.0))
        throw std::invalid_argument("kappa must be positive");
}

OperatorParams::Regime OperatorParams::regime() const
{
    if (alpha > 0.5)
        return Regime::Subcritical;
    if (alpha == 0.5)
        return Regime::Critical;
    return Regime::Supercritical;
}

const char* regime_name(OperatorParams::Regime r)
{
    switch (r) {
    case OperatorParams::Regime::Subcritical: return "subcritical";
    case OperatorParams::Regime::Critical: return "critical";
    default: return "supercritical";
    }
}

double OperatorParams::eigenvalue(double k_sq) const
{
    return kappa * std::pow(k_sq, alpha);
}

namespace {

// Applies a real multiplier m(|k|^2) to every retained mode.
template <typename Fn>
SpectralField apply_multiplier(const SpectralField& f, Fn&& multiplier)
{
    SpectralField out(f.resolution());
    const int km = f.max_mode();
    for (int k1 = -km; k1 <= km; ++k1) {
        for (int k2 = -km; k2 <= km; ++k2) {
            if (k1 == 0 && k2 == 0)
                continue;
            const double k_sq = double(k1) * k1 + double(k2) * k2;
            out.data()[out.index(k1, k2)] = multiplier(k_sq) * f.coeff(k1, k2);
        }
    }
    return out;
}

// Rounds x to the given number of significand bits.
double round_to_bits(double x, int bits)
{
    if (x == 0.0)
        return 0.0;
    int e;
    const double m = std::frexp(x, &e);
    return std::ldexp(std::round(std::ldexp(m, bits)), e - bits);
}

} // namespace

SpectralField apply_dissipation(const SpectralField& f, const OperatorParams& p)
{
    p.validate();
    return apply_multiplier(f, [&p](double k_sq) { return p.eigenvalue(k_sq); });
}

SpectralField apply_lambda_power(const SpectralField& f, double r)
{
    return apply_multiplier(f, [r](double k_sq) { return std::pow(k_sq, 0.5 * r); });
}

SpectralField derivative(const SpectralField& f, int axis)
{
    if (axis != 0 && axis != 1)
        throw std::invalid_argument("derivative: axis must be 0 or 1");
    SpectralField out(f.resolution());
    const int km = f.max_mode();
    for (int k1 = -km; k1 <= km; ++k1) {
        for (int k2 = -km; k2 <= km; ++k2) {
            const double kj = axis == 0 ? k1 : k2;
            const auto c = f.coeff(k1, k2);
            out.data()[out.index(k1, k2)] = {-kj * c.imag(), kj * c.real()};
        }
    }
    return out;
}

VelocityField riesz_velocity(const SpectralField& theta)
{
    const int n = theta.resolution();
    VelocityField u{SpectralField(n), SpectralField(n)};
    const int km = theta.max_mode();
    for (int k1 = -km; k1 <= km; ++k1) {
        for (int k2 = -km; k2 <= km; ++k2) {
            if (k1 == 0 && k2 == 0)
                continue; // Riesz multiplier pinned to 0 at k = 0
            const auto c = theta.coeff(k1, k2);
            const double mag = std::sqrt(double(k1) * k1 + double(k2) * k2);
            // w = i*theta_hat(k)/|k|, so u1 = -k2*w and u2 = k1*w.
            std::complex<double> w(-c.imag() / mag, c.real() / mag);
            if (k1 != 0 && k2 != 0) {
                // Drop enough trailing bits of w that the integer products
                // k_j*w and k1*k2*w are exact; the stored pair then has
                // identically zero divergence as real numbers.
                const int bits = 53 - std::bit_width(uint32_t(std::abs(k1) * std::abs(k2)));
                w = {round_to_bits(w.real(), bits), round_to_bits(w.imag(), bits)};
            }
            u.u1.data()[u.u1.index(k1, k2)] = -double(k2) * w;
            u.u2.data()[u.u2.index(k1, k2)] = double(k1) * w;
        }
    }
    return u;
}

SpectralField stream_function(const SpectralField& theta)
{
    return apply_lambda_power(theta, -1.0);
}

double divergence_linf(const VelocityField& u)
{
    const int km = u.u1.max_mode();
    double worst = 0.0;
    for (int k1 = -km; k1 <= km; ++k1)
        for (int k2 = -km; k2 <= km; ++k2)
            worst = std::max(worst,
                             std::abs(double(k1) * u.u1.coeff(k1, k2)
                                      + double(k2) * u.u2.coeff(k1, k2)));
    return worst;
}

namespace {

TransportTerm transport(const SpectralField& theta, const SpectralField& psi)
{
    const int n = theta.resolution();
    if (psi.resolution() != n)
        throw std::invalid_argument("advect: resolutions differ");
    const int m = dealias_grid(n);

    const VelocityField u = riesz_velocity(theta);
    const PhysicalField gu1 = to_physical(u.u1, m);
    const PhysicalField gu2 = to_physical(u.u2, m);
    const PhysicalField gd1 = to_physical(derivative(psi, 0), m);
    const PhysicalField gd2 = to_physical(derivative(psi, 1), m);

    PhysicalField prod(m);
    double max_speed_sq = 0.0;
    for (size_t i = 0; i < prod.values().size(); ++i) {
        const double a = gu1.values()[i];
        const double b = gu2.values()[i];
        prod.values()[i] = a * gd1.values()[i] + b * gd2.values()[i];
        max_speed_sq = std::max(max_speed_sq, a * a + b * b);
    }
    return {to_spectral(prod, n), std::sqrt(max_speed_sq)};
}

} // namespace

SpectralField advect(const SpectralField& theta, const SpectralField& psi)
{
    return transport(theta, psi).term;
}

SpectralField nonlinear_term(const SpectralField& theta)
{
    return transport(theta, theta).term;
}

TransportTerm transport_term(const SpectralField& theta)
{
    return transport(theta, theta);
}

double skew_symmetry_defect(const SpectralField& theta)
{
    const SpectralField b = nonlinear_term(theta);
    const double num = std::abs(l2_inner(b, theta));
    const double den = sobolev_norm(theta, 0.0) * sobolev_norm(theta, 1.0)
                     + std::numeric_limits<double>::epsilon();
    return num / den;
}

} // namespace sqg
