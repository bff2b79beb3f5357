#include "doctest.h"

#include <stdexcept>

#include "raldpc/protograph_search.hpp"

using namespace raldpc;

namespace {

search::SearchParams tiny_params() {
    search::SearchParams p;
    p.population = 6;
    p.generations = 3;
    p.max_entry = 4;
    p.seed = 11;
    p.de.samples_per_edge = 300;
    p.de.max_iterations = 60;
    p.de.tolerance = 4e-3;
    return p;
}

} // namespace

TEST_CASE("optimize_protograph validates its parameters") {
    auto p = tiny_params();
    CHECK_THROWS_AS(search::optimize_protograph(0, 2, p), std::invalid_argument);
    p.population = 3;
    CHECK_THROWS_AS(search::optimize_protograph(1, 2, p), std::invalid_argument);
    p = tiny_params();
    p.max_entry = 0;
    CHECK_THROWS_AS(search::optimize_protograph(1, 2, p), std::invalid_argument);
    p = tiny_params();
    p.cr = 1.5;
    CHECK_THROWS_AS(search::optimize_protograph(1, 2, p), std::invalid_argument);
    // The syndrome must be shorter than the source.
    p = tiny_params();
    CHECK_THROWS_AS(search::optimize_protograph(2, 2, p), std::invalid_argument);
    CHECK_THROWS_AS(search::optimize_protograph(3, 2, p), std::invalid_argument);
}

TEST_CASE("pool sizes far from 5x-10x the entry count draw an advisory") {
    auto params = tiny_params();
    params.generations = 0;
    params.population = 4;  // 1x2 entries want a pool of 10..20
    CHECK_FALSE(search::optimize_protograph(1, 2, params).warnings.empty());
    params.population = 12;
    CHECK(search::optimize_protograph(1, 2, params).warnings.empty());
}

TEST_CASE("search output is well formed and deterministic") {
    auto params = tiny_params();
    auto a = search::optimize_protograph(2, 4, params);
    auto b = search::optimize_protograph(2, 4, params);
    CHECK(a.best == b.best);
    CHECK(a.best_threshold == b.best_threshold);
    CHECK(a.generation_best == b.generation_best);

    CHECK(a.best.rows() == 2);
    CHECK(a.best.cols() == 4);
    CHECK(a.best.max_entry() <= params.max_entry);
    CHECK_FALSE(a.best.has_zero_column());
    // Initialization plus one entry per generation.
    CHECK(a.generation_best.size() == params.generations + 1);
    for (std::size_t g = 1; g < a.generation_best.size(); ++g) {
        CHECK(a.generation_best[g] >= a.generation_best[g - 1]);
    }
    CHECK(a.best_threshold == a.generation_best.back());
    CHECK(a.evaluations >= params.population);
    // Fitness is a pure function of the candidate, so the reported best
    // must reproduce.
    CHECK(de::threshold(a.best, params.de).threshold == a.best_threshold);
}

TEST_CASE("zero generations returns the best of the initial pool") {
    auto params = tiny_params();
    params.generations = 0;
    auto r = search::optimize_protograph(1, 2, params);
    CHECK(r.generation_best.size() == 1);
    CHECK(r.best_threshold == r.generation_best[0]);
    CHECK(r.evaluations <= params.population);
}

TEST_CASE("search finds a decent rate-1/2 ensemble quickly") {
    search::SearchParams params;
    params.population = 8;
    params.generations = 5;
    params.max_entry = 5;
    params.seed = 3;
    params.de.samples_per_edge = 500;
    params.de.max_iterations = 80;
    params.de.tolerance = 4e-3;
    auto r = search::optimize_protograph(1, 2, params);
    // The family contains ensembles near the 0.084 mark; even a short noisy
    // search should end well above a weak code.
    CHECK(r.best_threshold > 0.05);
}
