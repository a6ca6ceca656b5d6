#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sqg {

struct PropertyResult {
    std::string name;
    bool pass;
    std::string detail;
};

// Fast invariant battery over the field, operator, noise, and integrator
// modules; deterministic given the seed, a few seconds of runtime.
std::vector<PropertyResult> run_selfcheck(uint64_t seed);

} // namespace sqg
