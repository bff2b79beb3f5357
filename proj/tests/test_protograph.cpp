#include "doctest.h"

#include <cstdio>
#include <stdexcept>

#include "raldpc/errors.hpp"
#include "raldpc/protograph.hpp"
#include "raldpc/rng.hpp"

using namespace raldpc;
using proto::Protograph;

namespace {

Protograph base_2x4() {
    return Protograph({{1, 2, 1, 3}, {1, 0, 2, 5}});
}

// A known valid two-copy extension of base_2x4, used to pin the block layout:
// rows are grouped by check type (two copies each), columns by copy (four
// variable types each).
Protograph extended_4x8() {
    return Protograph({{1, 1, 1, 2, 0, 1, 0, 1},
                       {0, 1, 0, 1, 1, 1, 1, 2},
                       {1, 0, 1, 4, 0, 0, 1, 1},
                       {0, 0, 1, 1, 1, 0, 1, 4}});
}

} // namespace

TEST_CASE("Protograph construction and accessors") {
    CHECK_THROWS_AS(Protograph({{1, 2}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(Protograph({{1, -1}}), std::invalid_argument);

    auto s = base_2x4();
    CHECK(s.rows() == 2);
    CHECK(s.cols() == 4);
    CHECK(s.at(0, 1) == 2);
    CHECK(s.at(1, 3) == 5);
    CHECK(s.row_sum(0) == 7);
    CHECK(s.row_sum(1) == 8);
    CHECK(s.col_sum(3) == 8);
    CHECK(s.total_edges() == 15);
    CHECK(s.max_entry() == 5);
    CHECK_FALSE(s.has_zero_column());
    CHECK(Protograph({{1, 0}, {2, 0}}).has_zero_column());
    CHECK_THROWS_AS(s.at(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(s.set(0, 0, -1), std::invalid_argument);

    auto z = Protograph::zeros(3, 2);
    CHECK(z.total_edges() == 0);
    z.set(2, 1, 4);
    CHECK(z.at(2, 1) == 4);
}

TEST_CASE("proto_product is plain integer matrix multiplication") {
    Protograph merge({{1, 1}});
    auto s2 = proto_product(merge, base_2x4());
    CHECK(s2 == Protograph({{2, 2, 3, 8}}));

    Protograph a({{1, 2}, {0, 3}});
    Protograph b({{1, 0, 2}, {2, 1, 1}});
    CHECK(proto_product(a, b) == Protograph({{5, 2, 4}, {6, 3, 3}}));
    CHECK_THROWS_AS(proto_product(b, a), std::invalid_argument);
}

TEST_CASE("extend_protograph produces circulant blocks with the right sums") {
    auto s = base_2x4();
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        for (std::size_t ze : {std::size_t{2}, std::size_t{3}, std::size_t{5}}) {
            auto ext = proto::extend_protograph(s, ze, seed);
            REQUIRE(ext.rows() == s.rows() * ze);
            REQUIRE(ext.cols() == s.cols() * ze);
            for (std::size_t i = 0; i < s.rows(); ++i) {
                for (std::size_t j = 0; j < s.cols(); ++j) {
                    for (std::size_t r = 0; r < ze; ++r) {
                        int row_total = 0;
                        for (std::size_t c = 0; c < ze; ++c) {
                            const int v = ext.at(i * ze + r, c * s.cols() + j);
                            const int shifted =
                                ext.at(i * ze, ((c + ze - r) % ze) * s.cols() + j);
                            CHECK(v == shifted);
                            row_total += v;
                        }
                        CHECK(row_total == s.at(i, j));
                    }
                }
            }
            CHECK(proto::fold_extended(ext, ze) == s);
        }
    }
}

TEST_CASE("extend_protograph is deterministic in the seed") {
    auto s = base_2x4();
    auto a = proto::extend_protograph(s, 4, 7);
    auto b = proto::extend_protograph(s, 4, 7);
    CHECK(a == b);
    bool any_different = false;
    for (std::uint64_t seed = 0; seed < 8 && !any_different; ++seed) {
        any_different = proto::extend_protograph(s, 4, seed) != a;
    }
    CHECK(any_different);
    CHECK(proto::extend_protograph(s, 1, 3) == s);
}

TEST_CASE("the shipped 4x8 extension folds back to the 2x4 base") {
    CHECK(proto::fold_extended(extended_4x8(), 2) == base_2x4());
}

TEST_CASE("fold_extended rejects non-circulant layouts") {
    Protograph bad({{1, 0, 0, 0}, {0, 0, 0, 0}});
    CHECK_THROWS_AS(proto::fold_extended(bad, 2), std::invalid_argument);
    CHECK_THROWS_AS(proto::fold_extended(base_2x4(), 3), std::invalid_argument);
}

TEST_CASE("canonical_key ignores check type order only") {
    Protograph a({{1, 2, 0}, {3, 0, 1}});
    Protograph swapped({{3, 0, 1}, {1, 2, 0}});
    Protograph different({{1, 2, 1}, {3, 0, 1}});
    CHECK(proto::canonical_key(a) == proto::canonical_key(swapped));
    CHECK(proto::canonical_key(a) != proto::canonical_key(different));
    // Same entries, different shape.
    Protograph tall({{1}, {2}});
    Protograph wide({{1, 2}});
    CHECK(proto::canonical_key(tall) != proto::canonical_key(wide));
}

TEST_CASE("protograph JSON round trip and error handling") {
    auto s = extended_4x8();
    CHECK(proto::from_json(proto::to_json(s)) == s);
    CHECK_THROWS_AS(proto::from_json("not json"), IoError);
    CHECK_THROWS_AS(proto::from_json("{}"), IoError);
    CHECK_THROWS_AS(proto::from_json("{\"entries\": [[1], [2, 3]]}"), IoError);
    CHECK_THROWS_AS(proto::from_json("{\"entries\": [[-1]]}"), IoError);

    // The shape fields are written out and checked against the entries.
    CHECK(proto::to_json(s).find("\"cn_types\": 4") != std::string::npos);
    CHECK(proto::to_json(s).find("\"vn_types\": 8") != std::string::npos);
    CHECK_THROWS_AS(
        proto::from_json("{\"cn_types\": 2, \"vn_types\": 2, \"entries\": [[1, 2]]}"),
        IoError);
    CHECK_THROWS_AS(
        proto::from_json("{\"cn_types\": 1, \"vn_types\": 3, \"entries\": [[1, 2]]}"),
        IoError);
    CHECK(proto::from_json("{\"cn_types\": 1, \"vn_types\": 2, \"entries\": [[1, 2]]}") ==
          Protograph({{1, 2}}));

    const std::string path = "test_protograph_tmp.json";
    proto::save_protograph(path, s);
    CHECK(proto::load_protograph(path) == s);
    std::remove(path.c_str());
    CHECK_THROWS_AS(proto::load_protograph("/nonexistent/raldpc.json"), IoError);
}
