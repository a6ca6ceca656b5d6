#pragma once

#include <complex>
#include <vector>

namespace sqg {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Real zero-mean scalar field on the torus T^2 = R^2/(2*pi*Z)^2, stored as
// truncated Fourier coefficients relative to the orthonormal basis
//
//     e_k(x) = (2*pi)^{-1} exp(i k.x),   k in {-N/2+1,...,N/2}^2,
//
// under <f,g> = integral of f*g over T^2.  Invariants held at all times:
//   c(-k) = conj(c(k))   (field is real),
//   c(0,0) = 0           (zero mean),
//   c(k) = 0 whenever k1 or k2 equals N/2 (Nyquist row/column pinned so
//   every retained mode has a representable conjugate partner).
//
// Coefficients sit in FFTW layout: index (k mod N) per axis, row-major.
class SpectralField {
public:
    explicit SpectralField(int resolution);

    int resolution() const { return n_; }
    // Largest retained wavenumber per axis (Nyquist excluded).
    int max_mode() const { return n_ / 2 - 1; }

    std::complex<double> coeff(int k1, int k2) const
    {
        return c_[index(k1, k2)];
    }

    // Sets c(k) = v and c(-k) = conj(v) together; k must be retained and
    // nonzero so the invariants cannot be broken one mode at a time.
    void set_mode(int k1, int k2, std::complex<double> v);
    void add_mode(int k1, int k2, std::complex<double> v);

    void scale(double a);

    const std::vector<std::complex<double>>& data() const { return c_; }
    std::vector<std::complex<double>>& data() { return c_; }

    int index(int k1, int k2) const { return wrap(k1) * n_ + wrap(k2); }
    int wrap(int k) const { return k >= 0 ? k : k + n_; }

    // Forces c(0,0) = 0, zeroes the Nyquist entries, and symmetrizes
    // conjugate pairs exactly.  Producers call this after filling data().
    void enforce_invariants();

    bool finite() const;

private:
    int n_;
    std::vector<std::complex<double>> c_;
};

// Real values on a uniform M x M collocation grid, x_j = 2*pi*j/M.
class PhysicalField {
public:
    explicit PhysicalField(int grid_size);

    int grid_size() const { return m_; }
    double value(int j1, int j2) const { return v_[j1 * m_ + j2]; }
    double& value(int j1, int j2) { return v_[j1 * m_ + j2]; }

    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

    double mean() const;
    double max_abs() const;

private:
    int m_;
    std::vector<double> v_;
};

// Collocation grid shared by dealiased products and L^p quadrature.
inline int dealias_grid(int resolution) { return (3 * resolution) / 2; }

// Inverse transform onto an M x M grid, M >= N.  Output is real within
// roundoff; the imaginary residue is checked and discarded.
PhysicalField to_physical(const SpectralField& f, int grid_size);

// Forward transform followed by truncation to resolution N; zero mode and
// Nyquist entries forced to zero, Hermitian symmetry enforced exactly.
SpectralField to_spectral(const PhysicalField& g, int resolution);

// H^s seminorm (sum over k != 0 of |k|^{2s} |c(k)|^2)^{1/2}; s = 0 gives
// the L^2 norm.  Negative s is fine since the zero mode vanishes.
double sobolev_norm(const SpectralField& f, double s);

// L^p norm by quadrature on the dealias grid; p = infinity returns the
// grid maximum of |f|.
double lp_norm(const SpectralField& f, double p);

// L^2 inner product <a,b> via Parseval (exactly real by symmetry).
double l2_inner(const SpectralField& a, const SpectralField& b);

// Galerkin projection / embedding onto a different resolution.
SpectralField project(const SpectralField& f, int resolution);

// cos_amp*cos(k.x) + sin_amp*sin(k.x) as a SpectralField.
SpectralField harmonic(int resolution, int k1, int k2, double cos_amp,
                       double sin_amp);

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double a, const SpectralField& f);

} // namespace sqg
