#include "sqg/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sqg {

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'S', 'Q', 'G', '1'};

template <typename T>
void put(std::ostream& out, T v)
{
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T get(std::istream& in)
{
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

} // namespace

void write_snapshot(const std::string& path, const SpectralField& field,
                    double alpha, double kappa, double time)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open snapshot for writing: " + path);
    out.write(kMagic, 4);
    put(out, uint32_t(field.resolution()));
    put(out, alpha);
    put(out, kappa);
    put(out, time);
    const int n = field.resolution();
    for (int k1 = -n / 2 + 1; k1 <= n / 2; ++k1) {
        for (int k2 = -n / 2 + 1; k2 <= n / 2; ++k2) {
            const auto c = field.coeff(k1, k2);
            put(out, c.real());
            put(out, c.imag());
        }
    }
    if (!out)
        throw std::runtime_error("snapshot write failed: " + path);
}

Snapshot read_snapshot(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open snapshot: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("not a snapshot file (bad magic): " + path);
    const auto n = get<uint32_t>(in);
    if (n < 4 || n % 2 != 0 || n > 65536)
        throw std::runtime_error("snapshot has invalid resolution: " + path);
    Snapshot snap{SpectralField(int(n)), 0.0, 0.0, 0.0};
    snap.alpha = get<double>(in);
    snap.kappa = get<double>(in);
    snap.time = get<double>(in);
    for (int k1 = -int(n) / 2 + 1; k1 <= int(n) / 2; ++k1) {
        for (int k2 = -int(n) / 2 + 1; k2 <= int(n) / 2; ++k2) {
            const double re = get<double>(in);
            const double im = get<double>(in);
            snap.field.data()[snap.field.index(k1, k2)] = {re, im};
        }
    }
    if (!in)
        throw std::runtime_error("snapshot truncated: " + path);
    snap.field.enforce_invariants();
    if (!snap.field.finite())
        throw std::runtime_error("snapshot contains non-finite values: " + path);
    return snap;
}

} // namespace sqg
