#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "raldpc/density_evolution.hpp"
#include "raldpc/errors.hpp"
#include "raldpc/protograph.hpp"

using namespace raldpc;
using proto::Protograph;

namespace {

de::DeParams quick_params(std::size_t samples = 2000) {
    de::DeParams p;
    p.samples_per_edge = samples;
    return p;
}

Protograph reg_3_6() { return Protograph({{3, 3}}); }
Protograph base_2x4() { return Protograph({{1, 2, 1, 3}, {1, 0, 2, 5}}); }

} // namespace

TEST_CASE("de_converges separates easy from hopeless channels") {
    auto params = quick_params();
    CHECK(de::de_converges(reg_3_6(), 0.04, params));
    CHECK_FALSE(de::de_converges(reg_3_6(), 0.2, params));
    CHECK(de::de_converges(base_2x4(), 0.05, params));
    CHECK_FALSE(de::de_converges(base_2x4(), 0.25, params));
    CHECK_THROWS_AS(de::de_converges(Protograph({{1, 0}}), 0.05, params), Unconnected);
    de::DeParams bad = params;
    bad.samples_per_edge = 0;
    CHECK_THROWS_AS(de::de_converges(reg_3_6(), 0.05, bad), std::invalid_argument);
}

TEST_CASE("threshold of the (3,6)-regular ensemble is near 0.084") {
    auto report = de::threshold(reg_3_6(), quick_params());
    CHECK(report.threshold > 0.075);
    CHECK(report.threshold < 0.093);
}

TEST_CASE("threshold of the rate-1/2 mother protograph is near 0.095") {
    auto report = de::threshold(base_2x4(), quick_params());
    CHECK(report.threshold > 0.088);
    CHECK(report.threshold < 0.103);
}

TEST_CASE("two-copy extension keeps the threshold") {
    auto params = quick_params(1000);
    const double base = de::threshold(base_2x4(), params).threshold;
    const double ext =
        de::threshold(proto::extend_protograph(base_2x4(), 2, 5), params).threshold;
    CHECK(std::abs(base - ext) <= 0.012);
}

TEST_CASE("a type with a single edge pushes the threshold to the floor") {
    // Such a variable never accumulates evidence beyond its own channel
    // draw, so the reported threshold collapses to the sampling resolution
    // floor (about 1/samples_per_edge) instead of a real operating point.
    de::DeParams params = quick_params(500);
    params.max_iterations = 50;
    auto report = de::threshold(Protograph({{1, 2}}), params);
    CHECK(report.threshold < 0.01);
    for (const auto& [p, ok] : report.history) {
        if (p >= 0.02) CHECK_FALSE(ok);
    }
}

TEST_CASE("threshold reports are deterministic and self-consistent") {
    auto params = quick_params(1000);
    auto a = de::threshold(reg_3_6(), params);
    auto b = de::threshold(reg_3_6(), params);
    CHECK(a.threshold == b.threshold);
    CHECK(a.history == b.history);
    CHECK(a.probes == a.history.size());
    double best = 0.0;
    for (const auto& [p, ok] : a.history) {
        if (ok) best = std::max(best, p);
    }
    CHECK(a.threshold == best);
    // Bisection with this tolerance takes exactly nine probes.
    CHECK(a.probes == 9);
    CHECK(a.converged);
    CHECK(a.params.samples_per_edge == params.samples_per_edge);
    CHECK_THROWS_AS(de::threshold(Protograph({{1, 0}}), params), Unconnected);

    de::DeParams starved = params;
    starved.max_bisection_steps = 3;
    CHECK_FALSE(de::threshold(reg_3_6(), starved).converged);
}

TEST_CASE("threshold report JSON round trip") {
    auto report = de::threshold(reg_3_6(), quick_params(500));
    auto back = de::report_from_json(de::to_json(report));
    CHECK(back.threshold == report.threshold);
    CHECK(back.converged == report.converged);
    CHECK(back.probes == report.probes);
    CHECK(back.history == report.history);
    CHECK(back.params.samples_per_edge == report.params.samples_per_edge);
    CHECK(back.params.seed == report.params.seed);
    CHECK_THROWS_AS(de::report_from_json("nope"), IoError);
    CHECK_THROWS_AS(de::report_from_json("{\"threshold\": 0.1}"), IoError);
}

TEST_CASE("probes straddling the threshold agree with the report") {
    // Re-probing clear of the bracket must reproduce the bisection's verdict;
    // right at the threshold the finite-sample estimate is allowed to waver.
    auto params = quick_params();
    auto report = de::threshold(reg_3_6(), params);
    const double margin = 5 * params.tolerance;
    CHECK(de::de_converges(reg_3_6(), report.threshold - margin, params));
    CHECK_FALSE(de::de_converges(reg_3_6(), report.threshold + margin, params));
}
