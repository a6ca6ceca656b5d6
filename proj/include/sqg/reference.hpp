#pragma once

#include "sqg/spectral_field.hpp"

namespace sqg {

// O(N^4) evaluation of the transport term by direct triad convolution over
// the retained mode set.  Independent of the padded-transform route in
// nonlinear_term; the two must agree to roundoff.
SpectralField nonlinear_term_reference(const SpectralField& theta);

} // namespace sqg
