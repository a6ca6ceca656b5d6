#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sqg/integrator.hpp"

namespace sqg {

// Configuration file error carrying "file:line: message" text.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputConfig {
    std::string directory = "out";
    int cadence = 1;
    int snapshots = 0; // write a snapshot every k-th cadence tick (0 = final only)
};

struct ExperimentConfig {
    std::string name; // empty when the file does not select one
    std::vector<int> resolutions;
    double p = 4.0;
    double s = 0.5;
    double t = 0.5;
    int m = 2000;
    double t_long = 200.0;
    double burn_in = -1.0; // negative = default (20% of t_long)
    double delta = 0.0;
    std::vector<double> t_grid;
};

struct RunConfig {
    SimConfig sim;
    OutputConfig output;
    ExperimentConfig experiment;
};

// Strict key-value parser: sections [model] [grid] [noise] [init] [output]
// [experiment]; unknown sections, unknown keys, keys inapplicable to the
// chosen noise variant, and malformed numbers are all rejected with the
// offending line number.  alpha in (0,1) and kappa > 0 are enforced here.
RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig parse_config_file(const std::string& path);

// FNV-1a hash of the canonical serialization of the parsed configuration,
// as 16 hex digits.  Recorded in the first line of every output file.
std::string config_digest(const RunConfig& cfg);

} // namespace sqg
