#pragma once

#include "sqg/spectral_field.hpp"

namespace sqg {

// Parameters of the dissipation operator A = kappa * (-Laplacian)^alpha.
struct OperatorParams {
    double alpha = 0.75; // fractional exponent, 0 < alpha < 1
    double kappa = 1.0;  // dissipation coefficient, > 0

    enum class Regime { Subcritical, Critical, Supercritical };

    void validate() const;
    Regime regime() const;

    // Eigenvalue kappa * |k|^{2*alpha} on the shell |k|^2 = k_sq.
    double eigenvalue(double k_sq) const;
};

const char* regime_name(OperatorParams::Regime r);

// Divergence-free velocity recovered from the scalar; both components are
// integer multiples of one shared per-mode value, so the spectral
// divergence i*(k1*u1 + k2*u2) vanishes exactly, not just to roundoff.
struct VelocityField {
    SpectralField u1;
    SpectralField u2;
};

// A f: multiplier kappa * |k|^{2*alpha} per mode.
SpectralField apply_dissipation(const SpectralField& f, const OperatorParams& p);

// Lambda^r f with Lambda = (-Laplacian)^{1/2}: multiplier |k|^r.  Negative
// powers are well-defined because the zero mode is absent.
SpectralField apply_lambda_power(const SpectralField& f, double r);

// Spectral derivative along axis (0 or 1): multiplier i*k_j.
SpectralField derivative(const SpectralField& f, int axis);

// u = (-R2 theta, R1 theta) with Riesz multiplier R_j ~ i*k_j/|k|,
// equivalently u = perp-gradient of Lambda^{-1} theta.
VelocityField riesz_velocity(const SpectralField& theta);

// Stream function psi = Lambda^{-1} theta (diagnostic).
SpectralField stream_function(const SpectralField& theta);

// Max over modes of |k1*u1(k) + k2*u2(k)| (exactly zero for Riesz output).
double divergence_linf(const VelocityField& u);

// u(theta) . grad(psi), dealiased by 3/2-rule padding: velocity and
// gradient are evaluated on the M = 3N/2 grid, multiplied pointwise, and
// truncated back to N.  Exact for the quadratic product.
SpectralField advect(const SpectralField& theta, const SpectralField& psi);

// B(theta) = u(theta) . grad(theta).
SpectralField nonlinear_term(const SpectralField& theta);

struct TransportTerm {
    SpectralField term;  // B(theta)
    double max_speed;    // max over the dealias grid of |u(x)|
};

// Nonlinear term plus the grid maximum of the advecting speed (the CFL
// ingredient), sharing one set of transforms.
TransportTerm transport_term(const SpectralField& theta);

// |<B(theta), theta>| / (|theta| * ||theta||_{H^1} + eps); roundoff-level
// when the quadratic product is dealiased exactly.
double skew_symmetry_defect(const SpectralField& theta);

} // namespace sqg
