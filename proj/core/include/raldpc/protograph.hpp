#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace raldpc::proto {

// Small non-negative integer matrix describing an LDPC ensemble: entry (i, j)
// is the number of edges between check type i and variable type j. Entries
// above 1 are parallel edges at the type level; lifting spreads them out.
class Protograph {
public:
    Protograph() = default;
    explicit Protograph(std::vector<std::vector<int>> entries);
    static Protograph zeros(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return entries_.size(); }
    std::size_t cols() const { return entries_.empty() ? 0 : entries_.front().size(); }

    int at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, int value);

    const std::vector<std::vector<int>>& entries() const { return entries_; }

    int row_sum(std::size_t i) const;
    int col_sum(std::size_t j) const;
    int total_edges() const;
    int max_entry() const;
    bool has_zero_column() const;

    friend bool operator==(const Protograph& a, const Protograph& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const Protograph& a, const Protograph& b) { return !(a == b); }

private:
    std::vector<std::vector<int>> entries_;
};

// Integer matrix product a * b (no reduction mod 2). The syndrome-former
// composition rule lives at this level: merging rows of a lifted code is the
// integer product of the merge pattern with the base matrix.
Protograph proto_product(const Protograph& a, const Protograph& b);

// Replace every entry s_ij by a Ze x Ze sum of s_ij uniformly random cyclic
// shift permutation matrices (shifts drawn with replacement, so entries can
// stack). Row i*Ze + r of the result is copy r of check type i; column
// c*cols + j is variable type j in copy c. This layout keeps the copies of
// one variable type adjacent in type order, which is what the rate ladder
// construction expects.
Protograph extend_protograph(const Protograph& s, std::size_t ze, std::uint64_t seed);

// Inverse of the extension layout: sums each (check type, variable type)
// block back to a single entry. Verifies that every block is circulant with
// balanced row and column sums, and throws std::invalid_argument when the
// input was not produced by extend_protograph's layout.
Protograph fold_extended(const Protograph& extended, std::size_t ze);

// Key that identifies a protograph up to row (check type) order. Row
// permutations describe the same ensemble, so threshold caches index on this.
std::string canonical_key(const Protograph& s);

// JSON object {"entries": [[...], ...]}.
std::string to_json(const Protograph& s);
Protograph from_json(const std::string& text);

Protograph load_protograph(const std::string& path);
void save_protograph(const std::string& path, const Protograph& s);

} // namespace raldpc::proto
