#include "doctest.h"

#include <algorithm>
#include <vector>

#include "raldpc/cycles.hpp"
#include "raldpc/errors.hpp"
#include "raldpc/peg.hpp"

using namespace raldpc;
using proto::Protograph;

namespace {

Protograph base_2x4() {
    return Protograph({{1, 2, 1, 3}, {1, 0, 2, 5}});
}

Protograph heavy_4x8() {
    return Protograph({{1, 1, 1, 2, 0, 1, 0, 1},
                       {0, 1, 0, 1, 1, 1, 1, 2},
                       {1, 0, 1, 4, 0, 0, 1, 1},
                       {0, 0, 1, 1, 1, 0, 1, 4}});
}

std::size_t median_random_4cycles(const Protograph& s, std::size_t z) {
    std::vector<std::size_t> counts;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        counts.push_back(graph::count_4cycles(graph::random_lift(s, z, seed).matrix()));
    }
    std::sort(counts.begin(), counts.end());
    return counts[counts.size() / 2];
}

} // namespace

TEST_CASE("peg_lift realizes the protograph exactly") {
    for (std::size_t z : {std::size_t{8}, std::size_t{16}}) {
        auto lift = graph::peg_lift(base_2x4(), z, 11);
        CHECK(lift.z() == z);
        CHECK(lift.matrix().rows() == 2 * z);
        CHECK(lift.matrix().cols() == 4 * z);
        CHECK(lift.realized_protograph() == base_2x4());
    }
    auto big = graph::peg_lift(heavy_4x8(), 62, 3);
    CHECK(big.matrix().rows() == 248);
    CHECK(big.matrix().cols() == 496);
    CHECK(big.realized_protograph() == heavy_4x8());
}

TEST_CASE("random_lift realizes the protograph exactly") {
    for (std::size_t z : {std::size_t{8}, std::size_t{62}}) {
        auto lift = graph::random_lift(heavy_4x8(), z, 21);
        CHECK(lift.realized_protograph() == heavy_4x8());
    }
}

TEST_CASE("lifts are deterministic per seed") {
    auto a = graph::peg_lift(base_2x4(), 8, 5);
    auto b = graph::peg_lift(base_2x4(), 8, 5);
    CHECK(a.matrix() == b.matrix());
    CHECK(a.matrix() != graph::peg_lift(base_2x4(), 8, 6).matrix());

    auto c = graph::random_lift(base_2x4(), 8, 5);
    auto d = graph::random_lift(base_2x4(), 8, 5);
    CHECK(c.matrix() == d.matrix());
    CHECK(c.matrix() != graph::random_lift(base_2x4(), 8, 6).matrix());
}

TEST_CASE("peg_lift beats random_lift on short cycles") {
    // At these sizes the graph is sparse enough for the greedy to matter; at
    // much smaller z the overlap pressure saturates both constructions.
    const auto median_single = median_random_4cycles(proto::Protograph({{3, 3}}), 24);
    const auto median_base = median_random_4cycles(base_2x4(), 62);
    for (std::uint64_t seed : {1, 7, 13}) {
        CHECK(graph::count_4cycles(
                  graph::peg_lift(proto::Protograph({{3, 3}}), 24, seed).matrix()) <=
              median_single);
        CHECK(graph::count_4cycles(graph::peg_lift(base_2x4(), 62, seed).matrix()) <
              median_base);
    }
}

TEST_CASE("lift with z = 1 reproduces a binary protograph") {
    Protograph binary({{1, 0, 1}, {0, 1, 1}});
    auto lift = graph::peg_lift(binary, 1, 9);
    CHECK(lift.matrix() == gf2::BinaryMatrix::from_rows(2, 3, {{0, 2}, {1, 2}}));
    auto rand = graph::random_lift(binary, 1, 9);
    CHECK(rand.matrix() == lift.matrix());
}

TEST_CASE("lift rejects impossible inputs") {
    CHECK_THROWS_AS(graph::peg_lift(Protograph({{1, 0}, {2, 0}}), 4, 1), Unconnected);
    CHECK_THROWS_AS(graph::random_lift(Protograph({{1, 0}, {2, 0}}), 4, 1), Unconnected);
    CHECK_THROWS_AS(graph::peg_lift(Protograph({{3, 1}}), 2, 1), Infeasible);
    CHECK_THROWS_AS(graph::random_lift(Protograph({{3, 1}}), 2, 1), Infeasible);
    CHECK_THROWS_AS(graph::peg_lift(Protograph({{1, 1}}), 0, 1), std::invalid_argument);
}
