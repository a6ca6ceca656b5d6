#pragma once

#include <array>
#include <cstdint>

namespace sqg {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).  Output is
// a pure function of (counter, key), so random streams can be indexed by
// (seed, stream, step, mode) and replayed in any order or thread layout.
struct Philox4x32 {
    using ctr_t = std::array<uint32_t, 4>;
    using key_t = std::array<uint32_t, 2>;

    static ctr_t run(ctr_t ctr, key_t key);
};

struct GaussianPair {
    double z0;
    double z1;
};

// Two independent standard normals from one Philox block (Box-Muller).
GaussianPair gaussian_pair(Philox4x32::ctr_t ctr, Philox4x32::key_t key);

// One uniform double in [0,1) from the first half of a Philox block.
double uniform01(Philox4x32::ctr_t ctr, Philox4x32::key_t key);

} // namespace sqg
