#include "sqg/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/rng.hpp"

namespace sqg {

SpectralField random_band_limited(int resolution, int band_limit, uint64_t seed,
                                  uint32_t stream)
{
    SpectralField f(resolution);
    const int km = std::min(band_limit, f.max_mode());
    const Philox4x32::key_t key = {uint32_t(seed), uint32_t(seed >> 32)};
    const double band_sq = double(band_limit) * band_limit;
    for (int k1 = 0; k1 <= km; ++k1) {
        for (int k2 = (k1 == 0 ? 1 : -km); k2 <= km; ++k2) {
            if (double(k1) * k1 + double(k2) * k2 > band_sq)
                continue;
            const uint32_t code = (uint32_t(uint16_t(int16_t(k1))) << 16)
                                | uint16_t(int16_t(k2));
            const auto z = gaussian_pair({0, 0, code, 3u | (stream << 8)}, key);
            f.set_mode(k1, k2, {z.z0 * 0.7071067811865476, z.z1 * 0.7071067811865476});
        }
    }
    return f;
}

SpectralField random_h1_field(int resolution, double h1_norm, uint64_t seed,
                              uint32_t stream)
{
    SpectralField f = random_band_limited(resolution, 3, seed, stream);
    const double current = sobolev_norm(f, 1.0);
    if (current > 0.0)
        f.scale(h1_norm / current);
    return f;
}

SpectralField analytic_field(const std::string& name, int resolution)
{
    if (name == "sin_x1")
        return harmonic(resolution, 1, 0, 0.0, 1.0);
    if (name == "cos_x1")
        return harmonic(resolution, 1, 0, 1.0, 0.0);
    if (name == "sin_x2")
        return harmonic(resolution, 0, 1, 0.0, 1.0);
    if (name == "cos_x2")
        return harmonic(resolution, 0, 1, 1.0, 0.0);
    if (name == "sin_2x1")
        return harmonic(resolution, 2, 0, 0.0, 1.0);
    if (name == "cos_2x2")
        return harmonic(resolution, 0, 2, 1.0, 0.0);
    if (name == "sin_x1_plus_cos_2x2")
        return harmonic(resolution, 1, 0, 0.0, 1.0)
             + harmonic(resolution, 0, 2, 1.0, 0.0);
    throw std::invalid_argument("unknown analytic field: " + name);
}

} // namespace sqg
