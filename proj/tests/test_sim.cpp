#include "raldpc/sim.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "raldpc/cycles.hpp"
#include "raldpc/errors.hpp"
#include "raldpc/peg.hpp"
#include "raldpc/protograph.hpp"

using namespace raldpc;
using proto::Protograph;

namespace {

Protograph four_type_base() {
    return Protograph({{0, 1, 1, 1, 0, 1, 1, 1},
                       {1, 0, 1, 1, 1, 0, 1, 1},
                       {1, 1, 0, 1, 1, 1, 0, 1},
                       {1, 1, 1, 0, 1, 1, 1, 0}});
}

const ladder::CodeLadder& sim_ladder() {
    static const ladder::CodeLadder instance = [] {
        de::DeParams quick;
        quick.samples_per_edge = 200;
        quick.max_iterations = 30;
        auto h1 = graph::peg_lift(four_type_base(), 24, 901);
        return ladder::build_ladder(h1, four_type_base(), 4, 2, 3131, quick);
    }();
    return instance;
}

gf2::BinaryMatrix half_rate_code() {
    return graph::peg_lift(Protograph({{1, 2, 1, 3}, {1, 0, 2, 5}}), 16, 424).matrix();
}

} // namespace

TEST_CASE("wilson_interval matches reference values") {
    const auto vacuous = sim::wilson_interval(0, 0);
    CHECK(vacuous.low == 0.0);
    CHECK(vacuous.high == 1.0);

    // 5 successes out of 10 at 95%: the classic textbook example.
    const auto half = sim::wilson_interval(5, 10);
    CHECK(half.low == doctest::Approx(0.2366).epsilon(0.01));
    CHECK(half.high == doctest::Approx(0.7634).epsilon(0.01));

    // Zero observed errors still exclude nothing below ~3 / n.
    const auto none = sim::wilson_interval(0, 100);
    CHECK(none.low == 0.0);
    CHECK(none.high == doctest::Approx(0.0370).epsilon(0.02));

    const auto all = sim::wilson_interval(100, 100);
    CHECK(all.high == 1.0);
    CHECK(all.low == doctest::Approx(0.9630).epsilon(0.02));

    // Interval endpoints grow with the error count.
    double prev_low = -1.0, prev_high = -1.0;
    for (std::size_t e : {0u, 10u, 50u, 90u, 100u}) {
        const auto ci = sim::wilson_interval(e, 100);
        CHECK(ci.low >= prev_low);
        CHECK(ci.high >= prev_high);
        CHECK(ci.low <= ci.high);
        prev_low = ci.low;
        prev_high = ci.high;
    }
}

TEST_CASE("simulate_ber is deterministic and worker independent") {
    const auto h = half_rate_code();
    sim::BerConfig config;
    config.frames = 40;
    config.seed = 7;
    config.workers = 1;
    const auto a = sim::simulate_ber(h, "c", Rational(1, 2), 0.06, config);
    config.workers = 4;
    const auto b = sim::simulate_ber(h, "c", Rational(1, 2), 0.06, config);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.frame_errors == b.frame_errors);
    CHECK(a.frames == b.frames);
    CHECK(a.seed == b.seed);
    CHECK(a.ber == b.ber);
    // Different (rate, p) pairs decouple their random streams.
    const auto c = sim::simulate_ber(h, "c", Rational(1, 2), 0.07, config);
    CHECK(c.seed != a.seed);
    const auto d = sim::simulate_ber(h, "c", Rational(1, 4), 0.06, config);
    CHECK(d.seed != a.seed);
}

TEST_CASE("simulate_ber hits zero errors under light noise and fails under heavy") {
    const auto h = half_rate_code();
    sim::BerConfig config;
    config.frames = 50;
    config.seed = 11;
    const auto clean = sim::simulate_ber(h, "c", Rational(1, 2), 0.001, config);
    CHECK(clean.frames == 50);
    CHECK(clean.bit_errors == 0);
    CHECK(clean.ber == 0.0);
    CHECK(clean.ci_low == 0.0);
    CHECK(clean.ci_high > 0.0);

    const auto noisy = sim::simulate_ber(h, "c", Rational(1, 2), 0.35, config);
    CHECK(noisy.fer > 0.9);
    CHECK(noisy.ber > 0.05);
    CHECK(noisy.ci_low <= noisy.ber);
    CHECK(noisy.ber <= noisy.ci_high);
}

TEST_CASE("the frame error budget cuts a hopeless point short") {
    const auto h = half_rate_code();
    sim::BerConfig config;
    config.frames = 500;
    config.max_frame_errors = 5;
    config.seed = 3;
    const auto point = sim::simulate_ber(h, "c", Rational(1, 2), 0.4, config);
    CHECK(point.frame_errors == 5);
    CHECK(point.frames < 500);
    CHECK(point.fer == doctest::Approx(5.0 / point.frames));

    config.max_frame_errors = 0;
    config.frames = 30;
    const auto full = sim::simulate_ber(h, "c", Rational(1, 2), 0.4, config);
    CHECK(full.frames == 30);
}

TEST_CASE("csv rows carry every field in header order") {
    CHECK(sim::csv_header() ==
          "code_id,rate_num,rate_den,p,frames,bit_errors,frame_errors,ber,fer,"
          "ci_low,ci_high,seed");
    sim::BerPoint point;
    point.code_id = "lad:ladder";
    point.rate = Rational(3, 8);
    point.p = 0.05;
    point.frames = 100;
    point.bit_errors = 7;
    point.frame_errors = 2;
    point.ber = 0.0007;
    point.fer = 0.02;
    point.ci_low = 0.0003;
    point.ci_high = 0.0014;
    point.seed = 99;
    const auto row = sim::to_csv_row(point);
    std::stringstream ss(row);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 12);
    CHECK(fields[0] == "lad:ladder");
    CHECK(fields[1] == "3");
    CHECK(fields[2] == "8");
    CHECK(std::stod(fields[3]) == doctest::Approx(0.05));
    CHECK(fields[4] == "100");
    CHECK(fields[11] == "99");

    const std::string path = "test_sim_tmp.csv";
    sim::write_csv(path, {point});
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == sim::csv_header());
    std::getline(in, line);
    CHECK(line == row);
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("experiment specs round trip through json") {
    sim::ExperimentSpec spec;
    spec.ladders = {"out/c2"};
    spec.include_ldpca = true;
    spec.rates = {Rational(3, 8), Rational(1, 4)};
    spec.p_values = {0.02, 0.05};
    spec.frames = 2000;
    spec.max_frame_errors = 50;
    spec.decoder.max_iterations = 64;
    spec.decoder.early_stop = false;
    spec.decoder.llr_clamp = 25.0;
    spec.seed = 42;
    spec.workers = 2;
    const auto parsed = sim::spec_from_json(sim::to_json(spec));
    CHECK(parsed.ladders == spec.ladders);
    CHECK(parsed.include_ldpca == spec.include_ldpca);
    CHECK(parsed.rates == spec.rates);
    CHECK(parsed.p_values == spec.p_values);
    CHECK(parsed.frames == spec.frames);
    CHECK(parsed.max_frame_errors == spec.max_frame_errors);
    CHECK(parsed.decoder.max_iterations == 64);
    CHECK(parsed.decoder.early_stop == false);
    CHECK(parsed.decoder.llr_clamp == 25.0);
    CHECK(parsed.seed == 42);
    CHECK(parsed.workers == 2);

    const auto defaults = sim::spec_from_json("{}");
    CHECK(defaults.frames == 1000);
    CHECK(defaults.max_frame_errors == 200);
    CHECK(defaults.decoder.max_iterations == 100);
    CHECK(defaults.include_ldpca == false);

    CHECK_THROWS_AS(sim::spec_from_json("{ nope"), IoError);
    CHECK_THROWS_AS(sim::spec_from_json(R"({"rates": ["x/y"]})"), IoError);
}

TEST_CASE("run_experiment produces one point per code, rate and crossover") {
    const std::string dir = "test_sim_ladder_tmp";
    ladder::save_ladder(dir, sim_ladder());
    sim::ExperimentSpec spec;
    spec.ladders = {dir};
    spec.include_ldpca = true;
    spec.rates = {Rational(3, 8), Rational(1, 4)};
    spec.p_values = {0.01, 0.02};
    spec.frames = 10;
    spec.seed = 5;
    const auto points = sim::run_experiment(spec);
    REQUIRE(points.size() == 8);
    CHECK(points[0].code_id == "test_sim_ladder_tmp:ladder");
    CHECK(points[1].code_id == "test_sim_ladder_tmp:ldpca");
    CHECK(points[0].rate == Rational(3, 8));
    CHECK(points[0].p == 0.01);
    CHECK(points[2].p == 0.02);
    CHECK(points[4].rate == Rational(1, 4));
    // Paired seeding: the baseline sees the same couples as the ladder.
    CHECK(points[0].seed == points[1].seed);
    std::filesystem::remove_all(dir);
}

TEST_CASE("min_rate_sweep finds the lowest workable rung of the grid") {
    const auto& lad = sim_ladder();
    sim::SweepConfig config;
    config.couples = 40;
    config.p = 0.005;
    config.seed = 21;
    const auto result = sim::min_rate_sweep(lad, config);
    REQUIRE(result.min_m.size() == 40);
    CHECK(result.never_count == 0);
    std::size_t at_bottom = 0;
    for (std::size_t couple = 0; couple < 40; ++couple) {
        CHECK(!result.never[couple]);
        CHECK(result.min_m[couple] >= lad.m_min());
        CHECK(result.min_m[couple] <= lad.m1());
        at_bottom += result.min_m[couple] == lad.m_min() ? 1 : 0;
    }
    // At p = 0.005 most couples see at most one flip and the bottom rung
    // handles them.
    CHECK(at_bottom >= 20);
    CHECK(result.mean_rate >= static_cast<double>(lad.m_min()) / lad.n());
    CHECK(result.mean_rate <= 1.0);

    // Worker independence.
    config.workers = 3;
    const auto again = sim::min_rate_sweep(lad, config);
    CHECK(again.min_m == result.min_m);

    // The sweep result is monotone in the channel: heavier noise can only
    // push couples upwards on average.
    config.workers = 0;
    config.p = 0.08;
    const auto heavy = sim::min_rate_sweep(lad, config);
    CHECK(heavy.mean_rate >= result.mean_rate);
}

TEST_CASE("ldpca sweep runs on the same grid as the ladder") {
    const auto& lad = sim_ladder();
    ldpca::LdpcaCode baseline(lad.mother().matrix());
    std::vector<std::size_t> grid;
    for (std::size_t m = lad.m_min(); m <= lad.m1(); ++m) grid.push_back(m);
    sim::SweepConfig config;
    config.couples = 25;
    config.p = 0.02;
    config.seed = 21;
    const auto ours = sim::min_rate_sweep(lad, config);
    const auto theirs = sim::min_rate_sweep(baseline, grid, config);
    REQUIRE(theirs.min_m.size() == 25);
    for (std::size_t couple = 0; couple < 25; ++couple) {
        CHECK(theirs.min_m[couple] >= lad.m_min());
        CHECK(theirs.min_m[couple] <= lad.m1());
    }
    CHECK(theirs.mean_rate > 0.0);
    CHECK(ours.mean_rate > 0.0);
}

TEST_CASE("cycle_report pairs ladder and accumulator counts on the anchor grid") {
    const auto& lad = sim_ladder();
    const auto report = sim::cycle_report(lad);
    REQUIRE(report.size() == lad.anchors().size() + 1);
    CHECK(report[0].m == lad.m1());
    CHECK(report[0].rate == Rational(1, 2));
    CHECK(report[0].ladder_n4 == report[0].ldpca_n4);
    CHECK(report[0].ladder_n4 == graph::count_4cycles(lad.mother().matrix()));
    for (std::size_t t = 0; t < lad.anchors().size(); ++t) {
        const auto& row = report[t + 1];
        CHECK(row.m == lad.anchors()[t].m);
        CHECK(row.rate == lad.anchors()[t].rate);
        CHECK(row.ladder_n4 == lad.anchors()[t].n4);
        CHECK(row.ldpca_n4 ==
              graph::count_4cycles(ldpca::merged_code(lad.mother().matrix(), row.m)));
    }
}

TEST_CASE("sweep validation rejects broken grids and channels") {
    const auto& lad = sim_ladder();
    sim::SweepConfig config;
    config.couples = 1;
    auto id = [&lad](std::size_t m) -> const gf2::BinaryMatrix& {
        return lad.matrix_at(m);
    };
    CHECK_THROWS_AS(sim::min_rate_sweep(id, {}, lad.n(), config), std::invalid_argument);
    CHECK_THROWS_AS(sim::min_rate_sweep(id, {30, 24}, lad.n(), config),
                    std::invalid_argument);
    CHECK_THROWS_AS(sim::min_rate_sweep(id, {24, 24}, lad.n(), config),
                    std::invalid_argument);
    config.p = 0.6;
    CHECK_THROWS_AS(sim::min_rate_sweep(lad, config), DegenerateChannel);
}
