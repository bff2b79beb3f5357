#pragma once

#include <cstdint>

#include "raldpc/protograph.hpp"
#include "raldpc/typed_matrix.hpp"

namespace raldpc::graph {

// Progressive edge growth lift of a protograph. Columns are processed in
// order; each edge goes to the admissible check row whose distance from the
// column in the partial Tanner graph is largest (unreachable rows first),
// which is the classic girth-friendly greedy. Admissible means: right check
// type, still short of its per-type quota toward this column's type, and not
// already connected to this column.
//
// Ties are broken toward the row with the smallest edge count into the
// column's type block, then by a seeded per-type row order, so different
// seeds explore different graphs while any single seed is fully
// deterministic.
//
// Throws Unconnected when the protograph has an all-zero column, Infeasible
// when some entry exceeds z (a column cannot reach enough distinct rows) or
// when the greedy runs out of admissible rows.
TypedMatrix peg_lift(const proto::Protograph& s, std::size_t z, std::uint64_t seed);

// Baseline lift without girth optimization: every unit of a protograph entry
// becomes one random perfect matching between the two type blocks, with
// matchings repaired so no pair of nodes is connected twice. Same exceptions
// as peg_lift.
TypedMatrix random_lift(const proto::Protograph& s, std::size_t z, std::uint64_t seed);

} // namespace raldpc::graph
