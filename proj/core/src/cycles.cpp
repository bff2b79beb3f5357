#include "raldpc/cycles.hpp"

namespace raldpc::graph {

namespace {

std::size_t intersection_size(const std::vector<std::size_t>& a,
                              const std::vector<std::size_t>& b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

} // namespace

std::size_t pair_cycles(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    const std::size_t shared = intersection_size(a, b);
    return shared * (shared - 1) / 2;
}

std::size_t count_4cycles(const gf2::BinaryMatrix& m) {
    std::size_t total = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t s = r + 1; s < m.rows(); ++s) {
            total += pair_cycles(m.row_support(r), m.row_support(s));
        }
    }
    return total;
}

std::size_t added_4cycles(const gf2::BinaryMatrix& m,
                          const std::vector<std::size_t>& new_row_support) {
    std::size_t total = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        total += pair_cycles(m.row_support(r), new_row_support);
    }
    return total;
}

std::size_t CycleCounter::added(const std::vector<std::size_t>& support) const {
    std::size_t total = 0;
    for (const auto& row : rows_) total += pair_cycles(row, support);
    return total;
}

void CycleCounter::add(std::vector<std::size_t> support) {
    total_ += added(support);
    rows_.push_back(std::move(support));
}

} // namespace raldpc::graph
