#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "raldpc/density_evolution.hpp"
#include "raldpc/gf2.hpp"
#include "raldpc/intermediate.hpp"
#include "raldpc/proto_circle.hpp"
#include "raldpc/protograph.hpp"
#include "raldpc/rational.hpp"
#include "raldpc/typed_matrix.hpp"

namespace raldpc::ladder {

// Protograph-level construction plan: which check types each anchor merges,
// chosen by daughter decoding threshold before any lifting happens.
struct PlanStep {
    // Combining protograph in canonical row order: the merged pair leads,
    // the surviving types follow in ascending order. This pins the daughter
    // row layout so that replaying the merges one at a time ends exactly on
    // the anchor matrix.
    proto::Protograph s_int;
    // Daughter protograph s_int * s_prev.
    proto::Protograph s;
    // Check types of the previous level merged by this step.
    std::pair<std::size_t, std::size_t> type_pair;
    double threshold = 0.0;
    std::size_t evaluations = 0;
};

struct LadderPlan {
    proto::Protograph s1;
    std::vector<PlanStep> steps;
};

// Picks the merge sequence from s1 down to a single check type: each level
// evaluates every one-merge combining protograph by the decoding threshold
// of its daughter and keeps the winner (select_intermediate_proto), then
// reorders its rows into canonical form.
LadderPlan plan_ladder(const proto::Protograph& s1, const de::DeParams& de_params);

struct Anchor {
    std::size_t m = 0;
    Rational rate;
    // Merge data relative to the previous anchor (the mother for the first).
    proto::Protograph s_int;
    proto::Protograph s;
    std::pair<std::size_t, std::size_t> type_pair;
    IntermediateMatrix h_int;
    graph::TypedMatrix h;
    std::vector<std::size_t> cprime;
    std::size_t n4 = 0;
    double threshold = 0.0;
};

struct FineStep {
    // Rows of the matrix this step merges; the result has m_before - 1.
    std::size_t m_before = 0;
    // Parent row positions (low, high) in the m_before-row matrix.
    std::pair<std::size_t, std::size_t> pair;
    gf2::BinaryMatrix after;
};

// The rate-adaptive artifact: the mother code plus one single-merge step per
// grid point, with the anchor levels the merges pass through. The decoder
// side needs only matrix_at and reconstruct; the encoder side only
// matrix_at and extract_increment.
class CodeLadder {
public:
    struct Parts {
        graph::TypedMatrix mother;
        proto::Protograph s1;
        std::vector<Anchor> anchors;
        std::vector<FineStep> steps;
        std::uint64_t seed = 0;
        std::size_t k = 0;
        std::size_t repeats = 0;
    };

    CodeLadder() = default;
    // Validates grid coherence: steps descend one row at a time from the
    // mother, anchor matrices sit on the grid, rates strictly decrease.
    explicit CodeLadder(Parts parts);

    const graph::TypedMatrix& mother() const { return parts_.mother; }
    const proto::Protograph& s1() const { return parts_.s1; }
    const std::vector<Anchor>& anchors() const { return parts_.anchors; }
    const std::vector<FineStep>& steps() const { return parts_.steps; }
    std::uint64_t seed() const { return parts_.seed; }
    std::size_t k() const { return parts_.k; }
    std::size_t repeats() const { return parts_.repeats; }

    std::size_t n() const { return parts_.mother.matrix().cols(); }
    std::size_t m1() const { return parts_.mother.matrix().rows(); }
    // Lowest row count on the grid.
    std::size_t m_min() const { return m1() - parts_.steps.size(); }

    Rational rate_at(std::size_t m) const;
    // Inverse of rate_at; throws RateOffGrid for rates not equal to m/n for
    // a grid m.
    std::size_t rate_to_m(const Rational& rate) const;
    // All grid rates, highest (mother) first.
    std::vector<Rational> grid() const;

    // Parity-check matrix with m rows; m ranges over [m_min, m1].
    const gf2::BinaryMatrix& matrix_at(std::size_t m) const;

    // Everything the decoder needs to run at `rate`: the syndrome of the
    // lowest-rate matrix followed by one upgrade bit per grid step up to
    // the requested rate. Output length = m = n * rate. The output for a
    // lower rate is a prefix of the output for any higher rate, so the
    // whole family is served by storing the m1-bit maximum once.
    gf2::BitVector extract_increment(const Rational& rate, const gf2::BitVector& x) const;

    // Rebuilds the syndrome of matrix_at(n * rate) from extract_increment
    // output, exactly. Each upgrade step splits one combined syndrome bit
    // using the transmitted parent bit.
    gf2::BitVector reconstruct(const Rational& rate, const gf2::BitVector& bits) const;

private:
    Parts parts_;
    // Position the combined row of steps[i] takes in its result: the length
    // of the combined prefix accumulated since the enclosing anchor segment
    // started. reconstruct needs it to know which syndrome bit each step
    // split in two.
    std::vector<std::size_t> insert_pos_;
};

// Lifts the plan into the full ladder: per anchor, proto_circle picks the
// row pairing, the single-merge chain replays its commits, and the
// rate-adaptive property is verified before moving on. Throws Error if any
// verification fails (which would indicate a construction bug, not bad
// input).
CodeLadder build_with_plan(const graph::TypedMatrix& h1, const LadderPlan& plan,
                           std::size_t k, std::size_t repeats, std::uint64_t seed,
                           std::size_t workers = 0);

// plan_ladder + build_with_plan. h1 must realize s1.
CodeLadder build_ladder(const graph::TypedMatrix& h1, const proto::Protograph& s1,
                        std::size_t k, std::size_t repeats, std::uint64_t seed,
                        const de::DeParams& de_params, std::size_t workers = 0);

// Writes <dir>/manifest.json plus one alist per stored matrix (mother,
// anchor daughters and combiners, fine steps). The manifest records exact
// rational rates, 0-based index sets, seeds and the tool version.
void save_ladder(const std::string& dir, const CodeLadder& ladder);

// Throws IoError on missing or inconsistent artifacts.
CodeLadder load_ladder(const std::string& dir);

} // namespace raldpc::ladder
