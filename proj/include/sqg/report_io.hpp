#pragma once

#include <string>
#include <vector>

#include "sqg/harness.hpp"
#include "sqg/integrator.hpp"

namespace sqg {

// Shortest decimal text that round-trips the value (std::to_chars).
std::string format_double(double v);

// "# config=<digest> version=<artifact version>".
std::string header_line(const std::string& digest);

// Diagnostics stream: header line, then the fixed CSV schema
// t,l2,h_alpha,lp4,lp_inf,dissipation,noise_trace,martingale,residual,cfl.
void write_diagnostics_csv(const std::string& path, const std::string& digest,
                           const std::vector<DiagnosticsRecord>& records);

// report.csv (metric tables + fitted constants) and report.txt (verdicts
// with the numbers behind them) inside the experiment directory.
void write_report(const ExperimentReport& report, const std::string& directory);

// Print the verdict lines of a report to stdout; returns all_pass().
bool print_report_summary(const ExperimentReport& report);

} // namespace sqg
