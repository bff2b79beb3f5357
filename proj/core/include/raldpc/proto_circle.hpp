#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "raldpc/gf2.hpp"
#include "raldpc/intermediate.hpp"
#include "raldpc/protograph.hpp"
#include "raldpc/typed_matrix.hpp"

namespace raldpc::ladder {

struct ProtoCircleResult {
    // The daughter matrix, in combining-protograph row-block order.
    graph::TypedMatrix h2;
    // The realized combining matrix; h2 = h_int * h1 over GF(2).
    IntermediateMatrix h_int;
    // 4-cycle count of the full daughter matrix.
    std::size_t n4 = 0;
    // Mother-row index pairs in commit order, one per combined row. Block i
    // of s_int commits its z pairs consecutively, so replaying this list one
    // pair at a time walks a chain of single-merge matrices that ends in h2.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    // Which restart produced the winner.
    std::size_t restart = 0;
};

// Greedy cycle-aware row combining. For each s_int row with two nonzero
// types (j1, j2) it builds z combined rows: draw a random unused mother row
// u of type j1, collect up to k random unused type-j2 rows whose supports
// are disjoint from u's (so no variable is cancelled by the GF(2) sum), and
// commit the candidate closing the fewest 4-cycles against the daughter
// rows emitted so far. Single-type rows pass their block through unchanged.
//
// When a draw of u has no disjoint partner, u is redrawn up to ten times;
// if that fails the whole pass for that s_int row restarts with a derived
// seed, up to five times, before NoDisjointCandidate is thrown.
//
// The construction runs `repeats` times with seeds derived per restart and
// keeps the lowest-n4 result (earliest restart on ties), so the outcome does
// not depend on the worker count. workers = 0 uses the hardware count.
ProtoCircleResult proto_circle(const graph::TypedMatrix& h1,
                               const proto::Protograph& s_int, std::size_t k,
                               std::size_t repeats, std::uint64_t seed,
                               std::size_t workers = 0);

struct FineChain {
    // matrices[i] is the result of step i+1; it has one row less than its
    // predecessor. Layout: combined rows first in commit order, then the
    // surviving mother rows in their original order.
    std::vector<gf2::BinaryMatrix> matrices;
    // Parent row positions (low, high) of each step, indexed into the matrix
    // the step started from.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Single-merge chain between two ladder anchors: each step combines one
// unused row of type j1 with one of type j2, chosen like in proto_circle
// (k random disjoint candidates, fewest 4-cycles against the rows combined
// so far). After z steps the result realizes the same protograph as the
// corresponding anchor.
FineChain fine_steps(const graph::TypedMatrix& h_prev,
                     std::pair<std::size_t, std::size_t> type_pair,
                     std::size_t steps, std::size_t k, std::uint64_t seed);

// Replays an already-chosen merge sequence (global row indices into h_prev)
// into the same chain layout fine_steps produces. Replaying all pairs of a
// proto_circle result reproduces its daughter matrix row for row, which ties
// the one-merge-per-step grid to the anchor exactly.
FineChain chain_from_pairs(const gf2::BinaryMatrix& h_prev,
                           const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                           std::size_t steps);

} // namespace raldpc::ladder
