#pragma once

#include <cstddef>
#include <vector>

#include "raldpc/gf2.hpp"

namespace raldpc::graph {

// Number of length-4 cycles closed by a pair of rows: every two columns
// shared by both rows form one cycle, so this is C(|a intersect b|, 2).
std::size_t pair_cycles(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

// Total length-4 cycles in the Tanner graph of m, summed over row pairs.
std::size_t count_4cycles(const gf2::BinaryMatrix& m);

// 4-cycles a new row would close against every existing row of m.
std::size_t added_4cycles(const gf2::BinaryMatrix& m,
                          const std::vector<std::size_t>& new_row_support);

// Incremental 4-cycle bookkeeping for greedy row-by-row construction: ask how
// many cycles a candidate row would close against everything added so far,
// then commit the row actually chosen.
class CycleCounter {
public:
    std::size_t added(const std::vector<std::size_t>& support) const;
    void add(std::vector<std::size_t> support);

    std::size_t total() const { return total_; }
    std::size_t size() const { return rows_.size(); }

private:
    std::vector<std::vector<std::size_t>> rows_;
    std::size_t total_ = 0;
};

} // namespace raldpc::graph
