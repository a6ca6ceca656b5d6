#include "sqg/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "sqg/version.hpp"

namespace sqg {

std::string format_double(double v)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string header_line(const std::string& digest)
{
    return "# config=" + digest + " version=" + kArtifactVersion;
}

namespace {

std::ofstream open_for_write(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    return out;
}

} // namespace

void write_diagnostics_csv(const std::string& path, const std::string& digest,
                           const std::vector<DiagnosticsRecord>& records)
{
    auto out = open_for_write(path);
    out << header_line(digest) << '\n';
    out << "t,l2,h_alpha,lp4,lp_inf,dissipation,noise_trace,martingale,residual,cfl\n";
    for (const auto& r : records) {
        out << format_double(r.t) << ',' << format_double(r.l2) << ','
            << format_double(r.h_alpha) << ',' << format_double(r.lp4) << ','
            << format_double(r.lp_inf) << ',' << format_double(r.dissipation) << ','
            << format_double(r.noise_trace) << ',' << format_double(r.martingale)
            << ',' << format_double(r.residual) << ',' << format_double(r.cfl)
            << '\n';
    }
}

void write_report(const ExperimentReport& report, const std::string& directory)
{
    std::filesystem::create_directories(directory);

    auto csv = open_for_write(directory + "/report.csv");
    csv << header_line(report.digest) << '\n';
    for (const auto& table : report.tables) {
        csv << "# table " << table.name << '\n';
        const bool labeled = !table.row_labels.empty();
        if (labeled)
            csv << "label,";
        for (size_t i = 0; i < table.columns.size(); ++i)
            csv << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
        csv << '\n';
        for (size_t r = 0; r < table.rows.size(); ++r) {
            if (labeled)
                csv << table.row_labels[r] << ',';
            for (size_t c = 0; c < table.rows[r].size(); ++c)
                csv << format_double(table.rows[r][c])
                    << (c + 1 < table.rows[r].size() ? "," : "");
            csv << '\n';
        }
    }
    if (!report.constants.empty()) {
        csv << "# table constants\nname,value\n";
        for (const auto& [name, value] : report.constants)
            csv << name << ',' << format_double(value) << '\n';
    }

    auto txt = open_for_write(directory + "/report.txt");
    txt << header_line(report.digest) << '\n';
    txt << "experiment: " << report.experiment << '\n';
    for (const auto& note : report.regime_notes)
        txt << "regime: " << note << '\n';
    for (const auto& v : report.verdicts) {
        txt << '[' << verdict_name(v.verdict) << "] " << v.name;
        if (!v.detail.empty())
            txt << ": " << v.detail;
        txt << '\n';
    }
    for (const auto& [name, value] : report.constants)
        txt << "constant " << name << " = " << format_double(value) << '\n';
}

bool print_report_summary(const ExperimentReport& report)
{
    for (const auto& note : report.regime_notes)
        std::printf("regime: %s\n", note.c_str());
    for (const auto& v : report.verdicts) {
        if (v.detail.empty())
            std::printf("[%s] %s\n", verdict_name(v.verdict), v.name.c_str());
        else
            std::printf("[%s] %s: %s\n", verdict_name(v.verdict), v.name.c_str(),
                        v.detail.c_str());
    }
    for (const auto& [name, value] : report.constants)
        std::printf("constant %s = %s\n", name.c_str(), format_double(value).c_str());
    return report.all_pass();
}

} // namespace sqg
