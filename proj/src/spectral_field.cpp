#include "sqg/spectral_field.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include <fftw3.h>

namespace sqg {

namespace {

void check_resolution(int n)
{
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("resolution must be an even integer >= 4");
}

// FFTW planning is not thread-safe; execution on private buffers is.  Each
// thread keeps its own plans and buffers per grid size, created under a
// global planner lock.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct TransformWorkspace {
    int m = 0;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    explicit TransformWorkspace(int grid)
        : m(grid)
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        in = fftw_alloc_complex(size_t(m) * m);
        out = fftw_alloc_complex(size_t(m) * m);
        forward = fftw_plan_dft_2d(m, m, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_2d(m, m, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~TransformWorkspace()
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(in);
        fftw_free(out);
    }

    TransformWorkspace(const TransformWorkspace&) = delete;
    TransformWorkspace& operator=(const TransformWorkspace&) = delete;
};

TransformWorkspace& workspace(int grid)
{
    thread_local std::unordered_map<int, std::unique_ptr<TransformWorkspace>> cache;
    auto& slot = cache[grid];
    if (!slot)
        slot = std::make_unique<TransformWorkspace>(grid);
    return *slot;
}

} // namespace

SpectralField::SpectralField(int resolution)
    : n_(resolution)
    , c_(size_t(resolution) * resolution, {0.0, 0.0})
{
    check_resolution(resolution);
}

void SpectralField::set_mode(int k1, int k2, std::complex<double> v)
{
    const int km = max_mode();
    if ((k1 == 0 && k2 == 0) || std::abs(k1) > km || std::abs(k2) > km)
        throw std::invalid_argument("set_mode: wavenumber outside retained set");
    c_[index(k1, k2)] = v;
    c_[index(-k1, -k2)] = std::conj(v);
}

void SpectralField::add_mode(int k1, int k2, std::complex<double> v)
{
    set_mode(k1, k2, coeff(k1, k2) + v);
}

void SpectralField::scale(double a)
{
    for (auto& c : c_)
        c *= a;
}

void SpectralField::enforce_invariants()
{
    c_[index(0, 0)] = 0.0;
    const int ny = n_ / 2;
    for (int k = -ny + 1; k <= ny; ++k) {
        c_[index(ny, k)] = 0.0;
        c_[index(k, ny)] = 0.0;
    }
    // One pass over canonical representatives (k1 > 0, or k1 = 0 and k2 > 0).
    const int km = max_mode();
    for (int k1 = 0; k1 <= km; ++k1) {
        for (int k2 = (k1 == 0 ? 1 : -km); k2 <= km; ++k2) {
            const auto a = c_[index(k1, k2)];
            const auto b = std::conj(c_[index(-k1, -k2)]);
            const auto avg = 0.5 * (a + b);
            c_[index(k1, k2)] = avg;
            c_[index(-k1, -k2)] = std::conj(avg);
        }
    }
}

bool SpectralField::finite() const
{
    for (const auto& c : c_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            return false;
    return true;
}

PhysicalField::PhysicalField(int grid_size)
    : m_(grid_size)
    , v_(size_t(grid_size) * grid_size, 0.0)
{
    if (grid_size < 1)
        throw std::invalid_argument("grid size must be positive");
}

double PhysicalField::mean() const
{
    double s = 0.0;
    for (double x : v_)
        s += x;
    return s / double(v_.size());
}

double PhysicalField::max_abs() const
{
    double s = 0.0;
    for (double x : v_)
        s = std::max(s, std::abs(x));
    return s;
}

PhysicalField to_physical(const SpectralField& f, int grid_size)
{
    const int n = f.resolution();
    const int m = grid_size;
    if (m < n)
        throw std::invalid_argument("to_physical: grid does not resolve the field (M < N)");

    auto& ws = workspace(m);
    for (size_t i = 0; i < size_t(m) * m; ++i)
        ws.in[i][0] = ws.in[i][1] = 0.0;

    const int km = f.max_mode();
    const double scale = 1.0 / kTwoPi;
    for (int k1 = -km; k1 <= km; ++k1) {
        const int a1 = k1 >= 0 ? k1 : k1 + m;
        for (int k2 = -km; k2 <= km; ++k2) {
            const int a2 = k2 >= 0 ? k2 : k2 + m;
            const auto c = f.coeff(k1, k2);
            ws.in[size_t(a1) * m + a2][0] = c.real() * scale;
            ws.in[size_t(a1) * m + a2][1] = c.imag() * scale;
        }
    }
    fftw_execute(ws.backward);

    PhysicalField g(m);
    double max_re = 0.0, max_im = 0.0;
    for (size_t i = 0; i < size_t(m) * m; ++i) {
        const double re = ws.out[i][0];
        const double im = ws.out[i][1];
        g.values()[i] = re;
        max_re = std::max(max_re, std::abs(re));
        max_im = std::max(max_im, std::abs(im));
    }
    if (max_im > 1e-12 * std::max(1.0, max_re))
        throw std::runtime_error("to_physical: field is not real (Hermitian symmetry broken)");
    return g;
}

SpectralField to_spectral(const PhysicalField& g, int resolution)
{
    const int n = resolution;
    const int m = g.grid_size();
    if (m < n)
        throw std::invalid_argument("to_spectral: grid smaller than target resolution (M < N)");
    check_resolution(n);

    auto& ws = workspace(m);
    for (size_t i = 0; i < size_t(m) * m; ++i) {
        ws.in[i][0] = g.values()[i];
        ws.in[i][1] = 0.0;
    }
    fftw_execute(ws.forward);

    SpectralField f(n);
    const int km = f.max_mode();
    const double scale = kTwoPi / (double(m) * double(m));
    for (int k1 = -km; k1 <= km; ++k1) {
        const int a1 = k1 >= 0 ? k1 : k1 + m;
        for (int k2 = -km; k2 <= km; ++k2) {
            const int a2 = k2 >= 0 ? k2 : k2 + m;
            const auto* c = ws.out[size_t(a1) * m + a2];
            f.data()[f.index(k1, k2)] = {c[0] * scale, c[1] * scale};
        }
    }
    f.enforce_invariants();
    return f;
}

double sobolev_norm(const SpectralField& f, double s)
{
    const int km = f.max_mode();
    double sum = 0.0;
    for (int k1 = -km; k1 <= km; ++k1) {
        for (int k2 = -km; k2 <= km; ++k2) {
            if (k1 == 0 && k2 == 0)
                continue;
            const double k_sq = double(k1) * k1 + double(k2) * k2;
            sum += std::pow(k_sq, s) * std::norm(f.coeff(k1, k2));
        }
    }
    return std::sqrt(sum);
}

double lp_norm(const SpectralField& f, double p)
{
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
    const PhysicalField g = to_physical(f, dealias_grid(f.resolution()));
    if (std::isinf(p))
        return g.max_abs();
    const int m = g.grid_size();
    const double cell = (kTwoPi / m) * (kTwoPi / m);
    double sum = 0.0;
    for (double v : g.values())
        sum += std::pow(std::abs(v), p);
    return std::pow(cell * sum, 1.0 / p);
}

double l2_inner(const SpectralField& a, const SpectralField& b)
{
    if (a.resolution() != b.resolution())
        throw std::invalid_argument("l2_inner: resolutions differ");
    const int km = a.max_mode();
    double sum = 0.0;
    for (int k1 = -km; k1 <= km; ++k1)
        for (int k2 = -km; k2 <= km; ++k2)
            sum += a.coeff(k1, k2).real() * b.coeff(k1, k2).real()
                 + a.coeff(k1, k2).imag() * b.coeff(k1, k2).imag();
    return sum;
}

SpectralField project(const SpectralField& f, int resolution)
{
    SpectralField out(resolution);
    const int km = std::min(f.max_mode(), out.max_mode());
    for (int k1 = -km; k1 <= km; ++k1)
        for (int k2 = -km; k2 <= km; ++k2)
            out.data()[out.index(k1, k2)] = f.coeff(k1, k2);
    out.enforce_invariants();
    return out;
}

SpectralField harmonic(int resolution, int k1, int k2, double cos_amp,
                       double sin_amp)
{
    SpectralField f(resolution);
    // cos(k.x) has coefficient pi at both +-k; sin(k.x) has -+i*pi.
    const double pi = kTwoPi / 2.0;
    f.set_mode(k1, k2, {pi * cos_amp, -pi * sin_amp});
    return f;
}

SpectralField operator+(const SpectralField& a, const SpectralField& b)
{
    if (a.resolution() != b.resolution())
        throw std::invalid_argument("field sum: resolutions differ");
    SpectralField out = a;
    for (size_t i = 0; i < out.data().size(); ++i)
        out.data()[i] += b.data()[i];
    return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b)
{
    if (a.resolution() != b.resolution())
        throw std::invalid_argument("field difference: resolutions differ");
    SpectralField out = a;
    for (size_t i = 0; i < out.data().size(); ++i)
        out.data()[i] -= b.data()[i];
    return out;
}

SpectralField operator*(double a, const SpectralField& f)
{
    SpectralField out = f;
    out.scale(a);
    return out;
}

} // namespace sqg
