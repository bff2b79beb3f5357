#pragma once

#include <cstdint>
#include <vector>

#include "raldpc/density_evolution.hpp"
#include "raldpc/protograph.hpp"

namespace raldpc::search {

struct SearchParams {
    // Candidate pool size; rand/1 mutation needs at least four members.
    std::size_t population = 60;
    // Full mutate-cross-select sweeps over the pool after initialization.
    std::size_t generations = 100;
    // Entries are integers in [0, max_entry].
    int max_entry = 10;
    // Differential weight and crossover rate of rand/1/bin.
    double f = 0.5;
    double cr = 0.9;
    std::uint64_t seed = 1;
    // Threshold evaluation settings; evaluation dominates the run time, so
    // tune these rather than the pool size when iterating.
    de::DeParams de;
};

struct SearchResult {
    proto::Protograph best;
    double best_threshold = 0.0;
    // Best fitness after initialization and after each generation.
    std::vector<double> generation_best;
    // Number of distinct candidates actually evaluated (repeat candidates
    // hit a cache keyed on the protograph up to check type order).
    std::size_t evaluations = 0;
    // Advisories about questionable but accepted settings, e.g. a pool size
    // far from the usual 5x..10x the number of entries.
    std::vector<std::string> warnings;
};

// Differential evolution over rows x cols protographs, maximizing the
// decoding threshold. Requires rows < cols (the syndrome must compress).
// Mutant entries are rounded to the nearest integer and clipped into
// [0, max_entry]; all-zero columns are repaired by giving a random check
// type a single edge there. A challenger replaces its parent when it has a
// strictly higher threshold, or the same threshold with fewer total edges
// (sparser is cheaper to lift and decode).
SearchResult optimize_protograph(std::size_t rows, std::size_t cols,
                                 const SearchParams& params);

} // namespace raldpc::search
