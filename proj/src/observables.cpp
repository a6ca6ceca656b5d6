#include "sqg/observables.hpp"

namespace sqg {

double lowest_shell_energy(const SpectralField& f)
{
    return std::norm(f.coeff(1, 0)) + std::norm(f.coeff(-1, 0))
         + std::norm(f.coeff(0, 1)) + std::norm(f.coeff(0, -1));
}

std::vector<Observable> default_observables(const OperatorParams& params)
{
    std::vector<Observable> obs;
    obs.push_back({"l2_sq", [](const SpectralField& f) { return l2_inner(f, f); }});
    const double alpha = params.alpha;
    obs.push_back({"h_alpha_sq", [alpha](const SpectralField& f) {
                       const double v = sobolev_norm(f, alpha);
                       return v * v;
                   }});
    obs.push_back({"shell1_energy", lowest_shell_energy});
    obs.push_back({"lp4", [](const SpectralField& f) { return lp_norm(f, 4.0); }});
    return obs;
}

} // namespace sqg
