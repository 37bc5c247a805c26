#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "rabibp/controversy.hpp"
#include "rabibp/svg.hpp"
#include "rabibp/sweep.hpp"

using namespace rabibp;

namespace {

constexpr double pi = std::numbers::pi;

SweepConfig small_rabi(std::size_t count = 11) {
    SweepConfig c;
    c.g_stop = 2.0;
    c.g_count = count;
    return c;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

} // namespace

TEST(Config, ParsesKeyValueText) {
    const auto s = parse_config_text("# comment\nmodel = lambda3\n  g_count=5   # trailing\n\n--tol = 1e-9\nout = \"a b.csv\"\n");
    ASSERT_EQ(s.size(), 4u);
    SweepConfig c;
    apply_settings(c, s);
    EXPECT_EQ(c.model, SweepModel::lambda3);
    EXPECT_EQ(c.g_count, 5u);
    EXPECT_EQ(c.truncation.tol, 1e-9);
    EXPECT_EQ(c.out, "a b.csv");
}

TEST(Config, LaterSettingsOverrideEarlierOnes) {
    SweepConfig c;
    apply_settings(c, parse_config_text("nu = 2\n"));
    apply_setting(c, "--nu", "0.5");
    EXPECT_EQ(c.nu, 0.5);
}

TEST(Config, RejectsMalformedInput) {
    SweepConfig c;
    EXPECT_THROW(parse_config_text("no equals sign\n"), InputError);
    EXPECT_THROW(parse_config_text(" = 3\n"), InputError);
    EXPECT_THROW(apply_setting(c, "colour", "red"), InputError);
    EXPECT_THROW(apply_setting(c, "nu", "1.0x"), InputError);
    EXPECT_THROW(apply_setting(c, "g-count", "-3"), InputError);
    EXPECT_THROW(apply_setting(c, "model", "dicke"), InputError);
    EXPECT_THROW(apply_setting(c, "methods", "numeric,guess"), InputError);
    EXPECT_THROW(apply_setting(c, "strict", "maybe"), InputError);
    EXPECT_THROW(load_config_file("/nonexistent/sweep.cfg"), InputError);
}

TEST(Config, ValidationOfGridAndModel) {
    SweepConfig c = small_rabi();
    c.g_count = 1;
    EXPECT_THROW(run_sweep(c), InputError);
    c = small_rabi();
    c.g_stop = 0.0;
    EXPECT_THROW(run_sweep(c), InputError);
    c = small_rabi();
    c.truncation.tol = 0.0;
    EXPECT_THROW(run_sweep(c), InputError);
    c = small_rabi();
    c.lambda_nr_ratio = 1.5;
    EXPECT_THROW(run_sweep(c), InputError);
    c = small_rabi();
    c.model = SweepModel::jc;
    c.lambda_nr_ratio = 0.5;
    EXPECT_THROW(run_sweep(c), InputError);
}

TEST(Grid, EndpointsAreExact) {
    SweepConfig c;
    c.g_start = 0.1;
    c.g_stop = 0.7;
    c.g_count = 7;
    const auto g = coupling_grid(c);
    EXPECT_EQ(g.front(), 0.1);
    EXPECT_EQ(g.back(), 0.7);
    EXPECT_EQ(g.size(), 7u);
}

TEST(Sweep, RabiShapeAndInvariants) {
    const auto out = run_sweep(small_rabi(21));
    ASSERT_EQ(out.records.size(), 21u);
    EXPECT_EQ(out.unconverged, 0u);
    const auto& r0 = out.records.front();
    EXPECT_EQ(r0.g, 0.0);
    EXPECT_EQ(r0.gamma_numeric, 0.0);
    EXPECT_EQ(r0.gamma_variational, 0.0);
    double previous = -1.0;
    for (const auto& r : out.records) {
        EXPECT_TRUE(r.converged);
        EXPECT_NEAR(r.gamma_numeric, 2.0 * pi * r.mean_photon, 1e-12);
        EXPECT_GE(r.gamma_numeric, previous) << "g " << r.g;
        previous = r.gamma_numeric;
        if (r.g > 0.0) {
            EXPECT_GT(r.gamma_numeric, 0.0);
        }
        if (r.g <= 0.5) {
            EXPECT_EQ(r.gamma_variational, 0.0);
        } else {
            EXPECT_GT(r.gamma_variational, 0.0);
        }
    }
    // well below the critical coupling the phase is tiny
    EXPECT_LT(out.records[1].gamma_numeric, 0.1);
    // deep strong coupling grows like 2 pi g^2
    EXPECT_NEAR(out.records.back().gamma_numeric / (2.0 * pi * 4.0), 1.0, 0.05);
}

TEST(Sweep, JcGroundStatePhaseIsQuantized) {
    // omega = nu: |0,g> stays the ground state up to g = 1; beyond, the lower
    // dressed state of some doublet n takes over and gamma = 2 pi (n + 1/2).
    SweepConfig c = small_rabi(9);
    c.model = SweepModel::jc;
    const auto out = run_sweep(c);
    for (const auto& r : out.records) {
        if (r.g <= 1.0) {
            EXPECT_EQ(r.gamma_numeric, 0.0) << "g " << r.g;
        } else {
            std::size_t best = 0;
            for (std::size_t n = 1; n < 50; ++n)
                if (n + 0.5 - r.g * std::sqrt(n + 1.0) < best + 0.5 - r.g * std::sqrt(best + 1.0)) best = n;
            EXPECT_NEAR(r.gamma_numeric, 2.0 * pi * (best + 0.5), 1e-10) << "g " << r.g;
        }
        if (r.g > 0.0) {
            EXPECT_TRUE(std::isnan(r.gamma_variational));
        }
    }
}

TEST(Sweep, LambdaVariationalThreshold) {
    SweepConfig c;
    c.model = SweepModel::lambda3;
    c.g_stop = 1.0;
    c.g_count = 21;
    const auto out = run_sweep(c);
    for (const auto& r : out.records) {
        if (r.g <= 0.25) {
            EXPECT_EQ(r.gamma_variational, 0.0) << "g " << r.g;
        } else {
            EXPECT_GT(r.gamma_variational, 0.0) << "g " << r.g;
        }
        EXPECT_TRUE(r.converged);
    }
    EXPECT_EQ(out.records.front().gamma_numeric, 0.0);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
    SweepConfig c = small_rabi(13);
    c.methods.oracle = true;
    c.oracle_steps = 512;
    const auto serial = run_sweep(c);
    c.threads = 3;
    const auto parallel = run_sweep(c);
    EXPECT_EQ(to_csv(serial.records), to_csv(parallel.records));
    ASSERT_TRUE(serial.oracle_max_deviation.has_value());
    EXPECT_EQ(*serial.oracle_max_deviation, *parallel.oracle_max_deviation);
}

TEST(Sweep, UnconvergedPointsAreKeptAndFlagged) {
    SweepConfig c = small_rabi(3);
    c.g_start = 1.0;
    c.g_stop = 3.0;
    c.truncation = {1e-12, 4, 2, 8};
    const auto out = run_sweep(c);
    ASSERT_EQ(out.records.size(), 3u);
    EXPECT_GT(out.unconverged, 0u);
    EXPECT_FALSE(out.records.back().converged);
    EXPECT_TRUE(std::isfinite(out.records.back().gamma_numeric));
}

TEST(Sweep, VariationalOnlyLeavesNumericEmpty) {
    SweepConfig c = small_rabi(5);
    c.methods = parse_methods("variational");
    const auto out = run_sweep(c);
    for (const auto& r : out.records) {
        EXPECT_TRUE(std::isnan(r.gamma_numeric));
        EXPECT_TRUE(std::isfinite(r.gamma_variational));
    }
}

TEST(Csv, RoundTripIsIdempotentAndAccurate) {
    const auto out = run_sweep(small_rabi(9));
    const std::string text = to_csv(out.records);
    EXPECT_EQ(text.substr(0, text.find('\n')), csv_header);
    const auto parsed = parse_csv(text);
    ASSERT_EQ(parsed.size(), out.records.size());
    EXPECT_EQ(to_csv(parsed), text);
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        EXPECT_NEAR(parsed[i].gamma_numeric, out.records[i].gamma_numeric,
                    1e-11 * std::max(1.0, std::abs(out.records[i].gamma_numeric)));
        EXPECT_EQ(parsed[i].n_max, out.records[i].n_max);
        EXPECT_EQ(parsed[i].converged, out.records[i].converged);
    }
}

TEST(Csv, NanAndFlagsSurvive) {
    SweepRecord r;
    r.g = 0.5;
    r.converged = false;
    const auto back = parse_csv(to_csv({r}));
    ASSERT_EQ(back.size(), 1u);
    EXPECT_TRUE(std::isnan(back[0].gamma_numeric));
    EXPECT_FALSE(back[0].converged);
}

TEST(Csv, RejectsBadFiles) {
    EXPECT_THROW(parse_csv(""), InputError);
    EXPECT_THROW(parse_csv("g,gamma\n"), InputError);
    EXPECT_THROW(parse_csv(std::string(csv_header) + "\n1,2,3\n"), InputError);
    EXPECT_THROW(parse_csv(std::string(csv_header) + "\n1,2,3,4,5,perhaps\n"), InputError);
}

TEST(Files, WriteAndReadBack) {
    const auto dir = std::filesystem::temp_directory_path() / "rabibp_test_files";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "x.txt").string();
    write_text_file(path, "hello\n");
    EXPECT_EQ(read_text_file(path), "hello\n");
    EXPECT_THROW(write_text_file((dir / "missing" / "x.txt").string(), "x"), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST(Svg, TwoSeriesForRabiSweep) {
    const auto out = run_sweep(small_rabi(41));
    const std::string svg = emit_plot(out.records);
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_EQ(count_of(svg, "<polyline"), 2u);
    EXPECT_EQ(count_of(svg, "class=\"series-numeric\""), 1u);
    EXPECT_EQ(count_of(svg, "class=\"series-variational\""), 1u);
    EXPECT_EQ(count_of(svg, "class=\"unconverged\""), 0u);
    EXPECT_EQ(svg.find("href"), std::string::npos);
    EXPECT_EQ(svg, emit_plot(out.records));
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Svg, SingleMethodAndUnconvergedGlyphs) {
    std::vector<SweepRecord> records;
    for (int i = 0; i < 5; ++i) {
        SweepRecord r;
        r.g = 0.1 * i;
        r.gamma_numeric = 0.3 * i;
        r.converged = i != 3;
        records.push_back(r);
    }
    const std::string svg = emit_plot(records);
    EXPECT_EQ(count_of(svg, "<polyline"), 1u);
    EXPECT_EQ(count_of(svg, "class=\"unconverged\""), 1u);
    EXPECT_NE(svg.find(">unconverged</text>"), std::string::npos);
}

TEST(Svg, EscapesTitleAndRejectsEmptyInput) {
    SweepRecord r;
    r.gamma_numeric = 1.0;
    PlotStyle style;
    style.title = "a < b & c";
    EXPECT_NE(emit_plot({r}, style).find("a &lt; b &amp; c"), std::string::npos);
    EXPECT_THROW(emit_plot({}), InputError);
}

TEST(Controversy, LoopVersusArc) {
    const auto report = demo_controversy(1.0, 1.0, 0.5, 1.0, 1024);
    ASSERT_EQ(report.rows.size(), 2u);
    const auto& jc = report.rows[0];
    const auto& rabi = report.rows[1];
    EXPECT_TRUE(jc.error.empty()) << jc.error;
    EXPECT_TRUE(rabi.error.empty()) << rabi.error;
    EXPECT_NEAR(std::abs(jc.loop_phase_lower), jc.expected_loop_phase, 2e-3);
    EXPECT_NEAR(jc.loop_phase_lower + jc.loop_phase_upper, 0.0, 1e-8);
    EXPECT_NEAR(std::tan(jc.polar_angle), 1.0, 1e-12);
    EXPECT_NEAR(rabi.loop_phase_lower, 0.0, 1e-10);
    EXPECT_EQ(jc.quantum_gamma, 0.0);
    EXPECT_GT(rabi.quantum_gamma, 0.0);
    EXPECT_TRUE(jc.loop_closed);

    const std::string csv = controversy_csv(report);
    EXPECT_EQ(count_of(csv, "\n"), 3u);
    EXPECT_NE(controversy_text(report).find("[rabi]"), std::string::npos);
}

TEST(Controversy, DecoupledGivesZeroEverywhere) {
    const auto report = demo_controversy(1.0, 1.0, 0.0, 1.0, 64);
    for (const auto& row : report.rows) {
        EXPECT_EQ(row.loop_phase_lower, 0.0) << row.label;
        EXPECT_EQ(row.quantum_gamma, 0.0);
    }
}
