#include "sqg/rng.hpp"

#include <cmath>

namespace sqg {

namespace {

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo)
{
    uint64_t p = uint64_t(a) * b;
    hi = uint32_t(p >> 32);
    lo = uint32_t(p);
}

constexpr uint32_t kMult0 = 0xD2511F53u;
constexpr uint32_t kMult1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

} // namespace

Philox4x32::ctr_t Philox4x32::run(ctr_t ctr, key_t key)
{
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMult0, ctr[0], hi0, lo0);
        mulhilo(kMult1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

GaussianPair gaussian_pair(Philox4x32::ctr_t ctr, Philox4x32::key_t key)
{
    const auto block = Philox4x32::run(ctr, key);
    const uint64_t a = (uint64_t(block[0]) << 32) | block[1];
    const uint64_t b = (uint64_t(block[2]) << 32) | block[3];
    // u1 in (0,1] so log(u1) is finite; u2 in [0,1).
    const double u1 = double((a >> 11) + 1) * 0x1p-53;
    const double u2 = double(b >> 11) * 0x1p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

double uniform01(Philox4x32::ctr_t ctr, Philox4x32::key_t key)
{
    const auto block = Philox4x32::run(ctr, key);
    const uint64_t a = (uint64_t(block[0]) << 32) | block[1];
    return double(a >> 11) * 0x1p-53;
}

} // namespace sqg
