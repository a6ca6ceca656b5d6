#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sqg/fields.hpp"
#include "sqg/harness.hpp"

using namespace sqg;

namespace {

SimConfig base_config()
{
    SimConfig cfg;
    cfg.params = {0.75, 1.0};
    cfg.resolution = 16;
    cfg.dt = 1e-2;
    cfg.horizon = 0.5;
    cfg.seed = 7;
    cfg.noise.kind = NoiseSpec::Kind::Additive;
    cfg.noise.g0 = 0.3;
    cfg.noise.decay = 2.0;
    cfg.noise.band_limit = 3;
    cfg.init.kind = InitSpec::Kind::RandomH1;
    cfg.init.h1_norm = 1.0;
    cfg.cadence = 5;
    return cfg;
}

double constant_of(const ExperimentReport& report, const std::string& name)
{
    for (const auto& [key, value] : report.constants)
        if (key == name)
            return value;
    REQUIRE(false);
    return 0.0;
}

const VerdictEntry& verdict_of(const ExperimentReport& report, const std::string& name)
{
    for (const auto& v : report.verdicts)
        if (v.name == name)
            return v;
    REQUIRE(false);
    return report.verdicts.front();
}

} // namespace

TEST_CASE("batch means reduces to the sample mean")
{
    std::vector<double> samples;
    for (int i = 0; i < 200; ++i)
        samples.push_back(double(i % 7));
    const BatchStats stats = batch_means(samples);
    double mean = 0.0;
    for (double v : samples)
        mean += v;
    mean /= double(samples.size());
    CHECK(stats.mean == doctest::Approx(mean).epsilon(1e-14));
    CHECK(stats.se > 0.0);
}

TEST_CASE("parallel_for covers every index once")
{
    std::vector<int> hits(257, 0);
    parallel_for(257, [&](int i) { hits[size_t(i)] += 1; });
    for (int h : hits)
        CHECK(h == 1);
}

TEST_CASE("galerkin: linear dynamics make truncation errors exactly zero")
{
    SimConfig cfg = base_config();
    cfg.nonlinear = false; // diagonal dynamics commute with truncation
    const ExperimentReport report = galerkin_convergence(cfg, {8, 16, 32});
    CHECK(report.all_pass());
    CHECK(constant_of(report, "e_8") == 0.0);
    CHECK(constant_of(report, "e_16") == 0.0);
}

TEST_CASE("galerkin: repeated resolution reproduces the reference bitwise")
{
    SimConfig cfg = base_config();
    const ExperimentReport report = galerkin_convergence(cfg, {16, 16});
    CHECK(constant_of(report, "e_16") == 0.0);
}

TEST_CASE("galerkin: nonlinear truncation errors decrease with N")
{
    SimConfig cfg = base_config();
    cfg.init.h1_norm = 2.0;
    const ExperimentReport report = galerkin_convergence(cfg, {8, 16, 32});
    CHECK(verdict_of(report, "truncation-error-decreasing").verdict == Verdict::Pass);
    CHECK(constant_of(report, "e_8") > constant_of(report, "e_16"));
}

TEST_CASE("galerkin: rejects unordered level lists")
{
    CHECK_THROWS_AS(galerkin_convergence(base_config(), {32, 16}),
                    std::invalid_argument);
    CHECK_THROWS_AS(galerkin_convergence(base_config(), {16}),
                    std::invalid_argument);
}

TEST_CASE("uniqueness probe: zero perturbation replays bitwise")
{
    const ExperimentReport report = pathwise_uniqueness_probe(base_config(), 0.0);
    CHECK(report.all_pass());
    CHECK(constant_of(report, "sup_d") == 0.0);
    CHECK(verdict_of(report, "identical-under-shared-path").verdict == Verdict::Pass);
}

TEST_CASE("uniqueness probe: linear separation decays like exp(-kappa t)")
{
    SimConfig cfg = base_config();
    cfg.nonlinear = false;
    cfg.horizon = 1.0;
    const double delta = 1e-3;
    const ExperimentReport report = pathwise_uniqueness_probe(cfg, delta);
    const Table& table = report.tables.front();
    for (const auto& row : table.rows) {
        const double expect = delta * std::exp(-cfg.params.kappa * row[0]);
        CHECK(row[1] == doctest::Approx(expect).epsilon(1e-7));
    }
}

TEST_CASE("uniqueness probe: nonlinear separation stays of order delta")
{
    SimConfig cfg = base_config();
    cfg.horizon = 1.0;
    const double delta = 1e-6;
    const ExperimentReport report = pathwise_uniqueness_probe(cfg, delta);
    CHECK(report.all_pass());
    CHECK(constant_of(report, "sup_d") < 1e-2);
    CHECK(constant_of(report, "continuity_constant") < 1e3);
}

TEST_CASE("lp monitor: zero-noise supremum is attained at t = 0")
{
    SimConfig cfg = base_config();
    cfg.noise.kind = NoiseSpec::Kind::None;
    const ExperimentReport report = lp_supremum_monitor(cfg, 4.0, 0.5);
    CHECK(report.all_pass());
    const Table& series = report.tables.front();
    CHECK(constant_of(report, "sup_lp") == doctest::Approx(series.rows.front()[1]));
}

TEST_CASE("lp monitor: regime flag follows 1/p < alpha - 1/2")
{
    SimConfig cfg = base_config(); // alpha = 0.75
    const ExperimentReport inside = lp_supremum_monitor(cfg, 8.0, 0.2);
    CHECK(constant_of(inside, "inside_uniqueness_regime") == 1.0);
    const ExperimentReport boundary = lp_supremum_monitor(cfg, 4.0, 0.2);
    CHECK(constant_of(boundary, "inside_uniqueness_regime") == 0.0);
    cfg.params.alpha = 0.6;
    const ExperimentReport outside = lp_supremum_monitor(cfg, 4.0, 0.2);
    CHECK(constant_of(outside, "inside_uniqueness_regime") == 0.0);
}

TEST_CASE("markov test: refuses multiplicative noise")
{
    SimConfig cfg = base_config();
    cfg.noise.kind = NoiseSpec::Kind::Multiplicative;
    CHECK_THROWS_AS(markov_property_test(cfg, 0.2, 0.2,
                                         default_observables(cfg.params), 100),
                    std::invalid_argument);
}

TEST_CASE("markov test: t = 0 makes both estimators identical")
{
    SimConfig cfg = base_config();
    cfg.resolution = 8;
    cfg.noise.band_limit = 2;
    const auto obs = default_observables(cfg.params);
    const ExperimentReport report = markov_property_test(cfg, 0.2, 0.0, obs, 100);
    const Table& table = report.tables.front();
    for (const auto& row : table.rows) {
        CHECK(row[0] == row[2]); // identical means
        CHECK(row[4] == 0.0);    // z = 0
    }
    CHECK(report.all_pass());
}

TEST_CASE("markov test: restart estimator agrees within 3 sigma")
{
    SimConfig cfg = base_config();
    cfg.resolution = 8;
    cfg.dt = 5e-3;
    cfg.noise.band_limit = 2;
    const auto obs = default_observables(cfg.params);
    const ExperimentReport report = markov_property_test(cfg, 0.25, 0.25, obs, 200);
    CHECK(report.all_pass());
    for (const auto& v : report.verdicts)
        if (v.name.rfind("markov-z-", 0) == 0)
            CHECK(v.verdict == Verdict::Pass);
}

TEST_CASE("markov test: small ensembles withhold verdicts")
{
    SimConfig cfg = base_config();
    cfg.resolution = 8;
    const auto obs = default_observables(cfg.params);
    const ExperimentReport report = markov_property_test(cfg, 0.2, 0.1, obs, 40);
    for (const auto& v : report.verdicts)
        if (v.name.rfind("markov-z-", 0) == 0)
            CHECK(v.verdict == Verdict::OutsideRegime);
}

TEST_CASE("ergodic average: zero-noise averages decay to zero")
{
    SimConfig cfg = base_config();
    cfg.noise.kind = NoiseSpec::Kind::None;
    cfg.cadence = 2;
    const auto obs = default_observables(cfg.params);
    const ExperimentReport report = ergodic_average(cfg, obs, 4.0, 10.0);
    const Table& table = report.tables.front();
    CHECK(table.rows[0][0] < 1e-4); // avg of |theta|^2 from the random start
    CHECK(table.rows[0][2] == 0.0); // from the zero start
}

TEST_CASE("ergodic average: linear forced-mode energy matches the ou law")
{
    SimConfig cfg = base_config();
    cfg.nonlinear = false;
    cfg.resolution = 8;
    cfg.dt = 1e-2;
    cfg.cadence = 2;
    cfg.noise.kind = NoiseSpec::Kind::Additive;
    cfg.noise.g0 = 0.5;
    cfg.noise.decay = 0.0;
    cfg.noise.band_limit = 1; // force only the |k| = 1 shell
    std::vector<Observable> obs;
    obs.push_back({"mode10_energy", [](const SpectralField& f) {
                       return std::norm(f.coeff(1, 0));
                   }});
    const ExperimentReport report = ergodic_average(cfg, obs, 80.0, 400.0);
    const Table& table = report.tables.front();
    // stationary variance of one forced complex mode: g^2 / (2 kappa |k|^{2a})
    const double expect = 0.25 / 2.0;
    CHECK(table.rows[0][0] == doctest::Approx(expect).epsilon(0.10));
    CHECK(table.rows[0][2] == doctest::Approx(expect).epsilon(0.10));
}

TEST_CASE("mixing fit: identical starts sit at the monte carlo floor")
{
    SimConfig cfg = base_config();
    cfg.resolution = 8;
    cfg.noise.band_limit = 2;
    const auto obs = default_observables(cfg.params);
    const SpectralField start = random_h1_field(8, 1.0, 99);
    const ExperimentReport report =
        exponential_mixing_fit(cfg, obs, {0.1, 0.2, 0.3, 0.4}, 120, &start, &start);
    CHECK(report.all_pass());
    const VerdictEntry& v = verdict_of(report, "mixing-fit");
    CHECK(v.detail.find("already mixed") != std::string::npos);
}

TEST_CASE("mixing fit: linear single-mode rate recovers kappa |k|^{2 alpha}")
{
    SimConfig cfg = base_config();
    cfg.nonlinear = false;
    cfg.resolution = 8;
    cfg.dt = 1e-2;
    cfg.noise.kind = NoiseSpec::Kind::Additive;
    cfg.noise.g0 = 0.4;
    cfg.noise.decay = 0.0;
    cfg.noise.band_limit = 1;
    std::vector<Observable> obs;
    obs.push_back({"mode10_re", [](const SpectralField& f) {
                       return f.coeff(1, 0).real();
                   }});
    const SpectralField start0 = harmonic(8, 1, 0, 1.0, 0.0); // cos(x1)
    const SpectralField start1(8);
    const ExperimentReport report = exponential_mixing_fit(
        cfg, obs, {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0}, 400, &start0, &start1);
    // expected rate kappa |k|^{2 alpha} = 1
    CHECK(constant_of(report, "a_hat") == doctest::Approx(1.0).epsilon(0.2));
    CHECK(verdict_of(report, "mixing-rate-positive").verdict != Verdict::Fail);
}
