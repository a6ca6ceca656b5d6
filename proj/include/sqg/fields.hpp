#pragma once

#include <cstdint>
#include <string>

#include "sqg/spectral_field.hpp"

namespace sqg {

// Band-limited Gaussian field: independent unit-variance complex
// coefficients on canonical modes with 0 < |k| <= band_limit, conjugate
// mirrored.  Mode content depends only on (seed, stream, k), so the same
// call at different resolutions yields the same field.
SpectralField random_band_limited(int resolution, int band_limit, uint64_t seed,
                                  uint32_t stream = 0);

// Random band-limited field (|k| <= 3) rescaled to the given H^1 norm.
SpectralField random_h1_field(int resolution, double h1_norm, uint64_t seed,
                              uint32_t stream = 0);

// Named analytic initial conditions: sin_x1, cos_x1, sin_x2, cos_x2,
// sin_2x1, cos_2x2, sin_x1_plus_cos_2x2.  Throws on unknown names.
SpectralField analytic_field(const std::string& name, int resolution);

} // namespace sqg
