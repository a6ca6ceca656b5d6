#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sqg/operators.hpp"
#include "sqg/spectral_field.hpp"

namespace sqg {

// Named functional of the state, bounded on bounded balls of the
// truncation; the statistical experiments estimate its ensemble and time
// means.
struct Observable {
    std::string name;
    std::function<double(const SpectralField&)> fn;
};

// |theta|^2, ||theta||_{H^alpha}^2, lowest-shell energy, ||theta||_{L^4}.
std::vector<Observable> default_observables(const OperatorParams& params);

// Energy in the shell |k| = 1 (sum over the four unit modes).
double lowest_shell_energy(const SpectralField& f);

} // namespace sqg
