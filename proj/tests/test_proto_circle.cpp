#include "doctest.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "raldpc/cycles.hpp"
#include "raldpc/errors.hpp"
#include "raldpc/peg.hpp"
#include "raldpc/proto_circle.hpp"
#include "raldpc/protograph.hpp"

using namespace raldpc;
using gf2::BinaryMatrix;
using proto::Protograph;

namespace {

Protograph base_2x4() { return Protograph({{1, 2, 1, 3}, {1, 0, 2, 5}}); }

Protograph extended_4x8() {
    return Protograph({{1, 1, 1, 2, 0, 1, 0, 1},
                       {0, 1, 0, 1, 1, 1, 1, 2},
                       {1, 0, 1, 4, 0, 0, 1, 1},
                       {0, 0, 1, 1, 1, 0, 1, 4}});
}

// Merge types a and b of four into the first daughter row, pass the other
// two through in ascending order.
Protograph merge_pair(std::size_t a, std::size_t b) {
    std::vector<std::vector<int>> rows(3, std::vector<int>(4, 0));
    rows[0][a] = 1;
    rows[0][b] = 1;
    std::size_t next = 1;
    for (std::size_t j = 0; j < 4; ++j) {
        if (j != a && j != b) rows[next++][j] = 1;
    }
    return Protograph(rows);
}

void check_structure(const graph::TypedMatrix& h1, const Protograph& s_int,
                     const ladder::ProtoCircleResult& result) {
    // The daughter is the combining matrix applied to the mother, and its
    // protograph is the integer product of the bases.
    CHECK(gf2::mul_gf2(result.h_int.matrix(), h1.matrix()) == result.h2.matrix());
    CHECK(result.h2.realized_protograph() ==
          proto::proto_product(s_int, h1.realized_protograph()));
    CHECK(result.n4 == graph::count_4cycles(result.h2.matrix()));
    // No column may disappear: every daughter support is the full union of
    // its parents' supports.
    for (std::size_t r = 0; r < result.h2.matrix().rows(); ++r) {
        std::size_t expect = 0;
        for (std::size_t parent : result.h_int.matrix().row_support(r)) {
            expect += h1.matrix().row_support(parent).size();
        }
        CHECK(result.h2.matrix().row_support(r).size() == expect);
    }
}

} // namespace

TEST_CASE("proto_circle on an identity combiner permutes nothing") {
    auto h1 = graph::peg_lift(base_2x4(), 8, 3);
    auto r = ladder::proto_circle(h1, Protograph({{1, 0}, {0, 1}}), 4, 2, 17, 1);
    CHECK(r.h2.matrix() == h1.matrix());
    CHECK(r.n4 == graph::count_4cycles(h1.matrix()));
    CHECK(r.pairs.empty());
    CHECK(r.h_int.matrix() == BinaryMatrix::identity(16));

    // A swapped identity reorders the blocks.
    auto swapped = ladder::proto_circle(h1, Protograph({{0, 1}, {1, 0}}), 4, 1, 17, 1);
    CHECK(swapped.n4 == r.n4);
    CHECK(swapped.h2.matrix().row_support(0) == h1.matrix().row_support(8));
}

TEST_CASE("proto_circle merges one type pair with the declared structure") {
    auto h1 = graph::peg_lift(extended_4x8(), 62, 5);
    auto s_int = merge_pair(0, 2);
    auto r = ladder::proto_circle(h1, s_int, 20, 3, 99, 1);
    CHECK(r.h2.matrix().rows() == 186);
    CHECK(r.h2.matrix().cols() == 496);
    CHECK(r.pairs.size() == 62);
    check_structure(h1, s_int, r);

    // Parents come one from each merged type, each mother row used once, and
    // pair q builds daughter row q (the merged block leads).
    std::set<std::size_t> seen;
    for (std::size_t q = 0; q < r.pairs.size(); ++q) {
        const auto& [u, v] = r.pairs[q];
        CHECK(u < 62);
        CHECK(v >= 2 * 62);
        CHECK(v < 3 * 62);
        CHECK(seen.insert(u).second);
        CHECK(seen.insert(v).second);
        CHECK(r.h2.matrix().row_support(q) ==
              [&] {
                  std::vector<std::size_t> out;
                  const auto& a = h1.matrix().row_support(u);
                  const auto& b = h1.matrix().row_support(v);
                  std::merge(a.begin(), a.end(), b.begin(), b.end(),
                             std::back_inserter(out));
                  return out;
              }());
    }

    // Deterministic in the seed.
    auto again = ladder::proto_circle(h1, s_int, 20, 3, 99, 1);
    CHECK(again.h2.matrix() == r.h2.matrix());
    CHECK(again.restart == r.restart);
    // Worker count does not change the winner.
    auto threaded = ladder::proto_circle(h1, s_int, 20, 3, 99, 3);
    CHECK(threaded.h2.matrix() == r.h2.matrix());
}

TEST_CASE("proto_circle handles two simultaneous merges") {
    auto h1 = graph::peg_lift(extended_4x8(), 62, 2);
    Protograph s_int({{1, 0, 1, 0}, {0, 1, 0, 1}});
    auto r = ladder::proto_circle(h1, s_int, 20, 2, 5, 1);
    CHECK(r.h2.matrix().rows() == 124);
    CHECK(r.pairs.size() == 124);
    check_structure(h1, s_int, r);
    CHECK(ladder::verify_rate_adaptive(h1.matrix(), r.h_int.matrix(),
                                       ladder::build_cprime(r.h_int), 1));
}

TEST_CASE("proto_circle validates its inputs") {
    auto h1 = graph::peg_lift(base_2x4(), 6, 3);
    CHECK_THROWS_AS(ladder::proto_circle(h1, Protograph({{1, 1}}), 0, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(ladder::proto_circle(h1, Protograph({{1, 1}}), 2, 0, 1),
                    std::invalid_argument);
    // Shape mismatch with the mother's check types.
    CHECK_THROWS_AS(ladder::proto_circle(h1, Protograph({{1, 1, 0}}), 2, 1, 1),
                    std::invalid_argument);
    // A type used twice.
    CHECK_THROWS_AS(ladder::proto_circle(h1, Protograph({{2, 0}, {0, 1}}), 2, 1, 1),
                    std::invalid_argument);
    // A row combining no types.
    CHECK_THROWS_AS(
        ladder::proto_circle(h1, Protograph({{1, 1}, {0, 0}}), 2, 1, 1),
        std::invalid_argument);
}

TEST_CASE("more restarts and candidates do not hurt the cycle count") {
    auto h1 = graph::peg_lift(extended_4x8(), 62, 7);
    auto s_int = merge_pair(0, 2);
    std::size_t better = 0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
        const auto seed = static_cast<std::uint64_t>(t) * 7919 + 1;
        auto rich = ladder::proto_circle(h1, s_int, 10, 5, seed, 1);
        auto poor = ladder::proto_circle(h1, s_int, 1, 1, seed, 1);
        if (rich.n4 <= poor.n4) ++better;
    }
    CHECK(better >= 45);
}

TEST_CASE("fine_steps walks one merge at a time") {
    const std::size_t z = 24;
    auto h1 = graph::peg_lift(extended_4x8(), z, 13);
    auto chain = ladder::fine_steps(h1, {0, 1}, z, 6, 31);
    REQUIRE(chain.matrices.size() == z);
    REQUIRE(chain.pairs.size() == z);
    const auto& mother = h1.matrix();
    for (std::size_t k = 0; k < z; ++k) {
        const auto& m = chain.matrices[k];
        CHECK(m.rows() == mother.rows() - (k + 1));
        CHECK(m.cols() == mother.cols());
        // Total edge mass is conserved: disjoint merges never cancel.
        CHECK(m.nonzeros() == mother.nonzeros());
        const auto& [a, b] = chain.pairs[k];
        const auto& before = k == 0 ? mother : chain.matrices[k - 1];
        CHECK(a < before.rows());
        CHECK(b < before.rows());
        // The new combined row sits after the previously combined block and
        // is the union of its parents.
        CHECK(m.row_support(k) ==
              [&] {
                  auto s = before.row_support(a);
                  auto t = before.row_support(b);
                  std::vector<std::size_t> u;
                  std::merge(s.begin(), s.end(), t.begin(), t.end(),
                             std::back_inserter(u));
                  return u;
              }());
    }
    // After z merges the chain realizes the merged protograph.
    auto final_typed = graph::TypedMatrix(chain.matrices.back(), 3, 8, z);
    CHECK(final_typed.realized_protograph() ==
          proto::proto_product(merge_pair(0, 1), extended_4x8()));

    CHECK(ladder::fine_steps(h1, {0, 1}, 0, 6, 31).matrices.empty());
    CHECK_THROWS_AS(ladder::fine_steps(h1, {0, 0}, 2, 6, 31), std::invalid_argument);
    CHECK_THROWS_AS(ladder::fine_steps(h1, {0, 9}, 2, 6, 31), std::invalid_argument);
    CHECK_THROWS_AS(ladder::fine_steps(h1, {0, 1}, z + 1, 6, 31),
                    std::invalid_argument);
    CHECK_THROWS_AS(ladder::fine_steps(h1, {0, 1}, 2, 0, 31), std::invalid_argument);
}

TEST_CASE("chain_from_pairs replays a proto_circle run onto its daughter") {
    auto h1 = graph::peg_lift(extended_4x8(), 62, 5);
    auto s_int = merge_pair(0, 2);
    auto r = ladder::proto_circle(h1, s_int, 5, 3, 99, 1);
    auto chain = ladder::chain_from_pairs(h1.matrix(), r.pairs, r.pairs.size());
    REQUIRE(chain.matrices.size() == 62);
    CHECK(chain.matrices.back() == r.h2.matrix());

    CHECK_THROWS_AS(ladder::chain_from_pairs(h1.matrix(), r.pairs, 63),
                    std::invalid_argument);
    auto bad = r.pairs;
    bad[1] = bad[0];
    CHECK_THROWS_AS(ladder::chain_from_pairs(h1.matrix(), bad, 2), std::invalid_argument);
}

TEST_CASE("impossible disjointness raises NoDisjointCandidate") {
    // Full rows: any two rows of different types always share every column.
    Protograph dense({{2, 2}, {2, 2}});
    auto h1 = graph::peg_lift(dense, 3, 1);
    CHECK_THROWS_AS(ladder::proto_circle(h1, Protograph({{1, 1}}), 3, 2, 1, 1),
                    NoDisjointCandidate);
    CHECK_THROWS_AS(ladder::fine_steps(h1, {0, 1}, 3, 3, 1), NoDisjointCandidate);
}
