#pragma once

#include <string>

#include "sqg/spectral_field.hpp"

namespace sqg {

// Binary snapshot format: magic "SQG1", then little-endian u32 N, followed
// by IEEE-754 float64 alpha, kappa, t; payload is (re, im) float64 pairs in
// row-major k order, k1 then k2 running over {-N/2+1, ..., N/2}.
struct Snapshot {
    SpectralField field;
    double alpha;
    double kappa;
    double time;
};

void write_snapshot(const std::string& path, const SpectralField& field,
                    double alpha, double kappa, double time);

Snapshot read_snapshot(const std::string& path);

} // namespace sqg
