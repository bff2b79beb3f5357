#include "raldpc/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace raldpc::gf2 {

namespace {

// Dense bit-packed row store used by the elimination routines.
struct PackedRows {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t words = 0;
    std::vector<std::uint64_t> data;

    PackedRows(std::size_t r, std::size_t c)
        : rows(r), cols(c), words((c + 63) / 64), data(r * words, 0) {}

    std::uint64_t* row(std::size_t i) { return data.data() + i * words; }
    const std::uint64_t* row(std::size_t i) const { return data.data() + i * words; }

    void set(std::size_t i, std::size_t j) { row(i)[j / 64] ^= (1ULL << (j % 64)); }
    bool get(std::size_t i, std::size_t j) const {
        return (row(i)[j / 64] >> (j % 64)) & 1ULL;
    }
    void xor_rows(std::size_t dst, std::size_t src) {
        std::uint64_t* d = row(dst);
        const std::uint64_t* s = row(src);
        for (std::size_t w = 0; w < words; ++w) d[w] ^= s[w];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(row(a), row(a) + words, row(b));
    }
};

PackedRows pack(const BinaryMatrix& m) {
    PackedRows p(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j : m.row_support(i)) p.set(i, j);
    }
    return p;
}

// Forward elimination; returns the rank. Row i of `p` is modified in place.
// If `rhs` is non-null it carries one extra bit per row through the same ops.
std::size_t eliminate(PackedRows& p, std::vector<Bit>* rhs) {
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < p.cols && pivot_row < p.rows; ++col) {
        std::size_t found = p.rows;
        for (std::size_t r = pivot_row; r < p.rows; ++r) {
            if (p.get(r, col)) {
                found = r;
                break;
            }
        }
        if (found == p.rows) continue;
        p.swap_rows(pivot_row, found);
        if (rhs) std::swap((*rhs)[pivot_row], (*rhs)[found]);
        for (std::size_t r = pivot_row + 1; r < p.rows; ++r) {
            if (p.get(r, col)) {
                p.xor_rows(r, pivot_row);
                if (rhs) (*rhs)[r] ^= (*rhs)[pivot_row];
            }
        }
        ++pivot_row;
    }
    return pivot_row;
}

} // namespace

BinaryMatrix BinaryMatrix::from_rows(std::size_t rows, std::size_t cols,
                                     std::vector<std::vector<std::size_t>> supports,
                                     bool allow_zero_rows) {
    if (supports.size() != rows) {
        throw std::invalid_argument("BinaryMatrix: expected " + std::to_string(rows) +
                                    " support lists, got " + std::to_string(supports.size()));
    }
    for (std::size_t i = 0; i < rows; ++i) {
        auto& s = supports[i];
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw std::invalid_argument("BinaryMatrix: duplicate column in row " +
                                        std::to_string(i));
        }
        if (!s.empty() && s.back() >= cols) {
            throw std::invalid_argument("BinaryMatrix: column index out of range in row " +
                                        std::to_string(i));
        }
        if (s.empty() && !allow_zero_rows) {
            throw std::invalid_argument("BinaryMatrix: zero row " + std::to_string(i));
        }
    }
    BinaryMatrix m;
    m.cols_ = cols;
    m.supports_ = std::move(supports);
    return m;
}

BinaryMatrix BinaryMatrix::from_dense(const std::vector<BitVector>& dense,
                                      bool allow_zero_rows) {
    const std::size_t rows = dense.size();
    const std::size_t cols = rows == 0 ? 0 : dense.front().size();
    std::vector<std::vector<std::size_t>> supports(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (dense[i].size() != cols) {
            throw std::invalid_argument("BinaryMatrix: ragged dense input");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (dense[i][j] & 1) supports[i].push_back(j);
        }
    }
    return from_rows(rows, cols, std::move(supports), allow_zero_rows);
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
    std::vector<std::vector<std::size_t>> supports(n);
    for (std::size_t i = 0; i < n; ++i) supports[i] = {i};
    return from_rows(n, n, std::move(supports));
}

std::size_t BinaryMatrix::nonzeros() const {
    std::size_t total = 0;
    for (const auto& s : supports_) total += s.size();
    return total;
}

const std::vector<std::size_t>& BinaryMatrix::row_support(std::size_t i) const {
    if (i >= supports_.size()) throw std::invalid_argument("BinaryMatrix: row out of range");
    return supports_[i];
}

bool BinaryMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= supports_.size() || j >= cols_) {
        throw std::invalid_argument("BinaryMatrix: index out of range");
    }
    return std::binary_search(supports_[i].begin(), supports_[i].end(), j);
}

BitVector BinaryMatrix::row_dense(std::size_t i) const {
    BitVector d(cols_, 0);
    for (std::size_t j : row_support(i)) d[j] = 1;
    return d;
}

BinaryMatrix BinaryMatrix::vstack(const BinaryMatrix& other) const {
    if (cols_ != other.cols_) {
        throw std::invalid_argument("vstack: column count mismatch");
    }
    BinaryMatrix m;
    m.cols_ = cols_;
    m.supports_ = supports_;
    m.supports_.insert(m.supports_.end(), other.supports_.begin(), other.supports_.end());
    return m;
}

BinaryMatrix BinaryMatrix::select_rows(const std::vector<std::size_t>& idx) const {
    BinaryMatrix m;
    m.cols_ = cols_;
    m.supports_.reserve(idx.size());
    for (std::size_t i : idx) m.supports_.push_back(row_support(i));
    return m;
}

std::vector<std::size_t> xor_support(const std::vector<std::size_t>& a,
                                     const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

BinaryMatrix mul_gf2(const BinaryMatrix& a, const BinaryMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("mul_gf2: inner dimension mismatch (" +
                                    std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()) + ")");
    }
    std::vector<std::vector<std::size_t>> supports(a.rows());
    std::vector<Bit> acc(b.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k : a.row_support(i)) {
            for (std::size_t j : b.row_support(k)) acc[j] ^= 1;
        }
        for (std::size_t j = 0; j < acc.size(); ++j) {
            if (acc[j]) supports[i].push_back(j);
        }
    }
    return BinaryMatrix::from_rows(a.rows(), b.cols(), std::move(supports),
                                   /*allow_zero_rows=*/true);
}

BitVector mat_vec_gf2(const BinaryMatrix& a, const BitVector& x) {
    if (x.size() != a.cols()) {
        throw std::invalid_argument("mat_vec_gf2: vector length " + std::to_string(x.size()) +
                                    " does not match " + std::to_string(a.cols()) + " columns");
    }
    BitVector out(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Bit s = 0;
        for (std::size_t j : a.row_support(i)) s ^= (x[j] & 1);
        out[i] = s;
    }
    return out;
}

std::size_t rank_gf2(const BinaryMatrix& a) {
    PackedRows p = pack(a);
    return eliminate(p, nullptr);
}

std::optional<BitVector> solve_unique(const BinaryMatrix& a, const BitVector& b) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("solve_unique: matrix must be square");
    }
    if (b.size() != a.rows()) {
        throw std::invalid_argument("solve_unique: right-hand side length mismatch");
    }
    const std::size_t n = a.rows();
    PackedRows p = pack(a);
    std::vector<Bit> rhs(b.begin(), b.end());
    for (auto& bit : rhs) bit &= 1;
    if (eliminate(p, &rhs) < n) return std::nullopt;
    // Back substitution on the upper-triangular system.
    BitVector x(n, 0);
    for (std::size_t ii = n; ii-- > 0;) {
        Bit s = rhs[ii];
        // Pivot of row ii is at column ii because the matrix has full rank.
        for (std::size_t j = ii + 1; j < n; ++j) {
            if (p.get(ii, j)) s ^= x[j];
        }
        x[ii] = s;
    }
    return x;
}

Solver::Solver(const BinaryMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("Solver: matrix must be square");
    }
    n_ = a.rows();
    words_ = (n_ + 63) / 64;
    // Work on [A | I] and reduce A to the identity; the right half becomes
    // the inverse.
    PackedRows p(n_, 2 * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j : a.row_support(i)) p.set(i, j);
        p.set(i, n_ + i);
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n_; ++col) {
        std::size_t found = n_;
        for (std::size_t r = rank; r < n_; ++r) {
            if (p.get(r, col)) {
                found = r;
                break;
            }
        }
        if (found == n_) return; // singular, invertible_ stays false
        p.swap_rows(rank, found);
        for (std::size_t r = 0; r < n_; ++r) {
            if (r != rank && p.get(r, col)) p.xor_rows(r, rank);
        }
        ++rank;
    }
    invertible_ = true;
    inverse_.assign(n_ * words_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (p.get(i, n_ + j)) inverse_[i * words_ + j / 64] ^= (1ULL << (j % 64));
        }
    }
}

BitVector Solver::solve(const BitVector& b) const {
    if (!invertible_) throw std::logic_error("Solver: matrix is singular");
    if (b.size() != n_) {
        throw std::invalid_argument("Solver: right-hand side length mismatch");
    }
    std::vector<std::uint64_t> packed(words_, 0);
    for (std::size_t j = 0; j < n_; ++j) {
        if (b[j] & 1) packed[j / 64] ^= (1ULL << (j % 64));
    }
    BitVector x(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        std::uint64_t acc = 0;
        const std::uint64_t* row = inverse_.data() + i * words_;
        for (std::size_t w = 0; w < words_; ++w) acc ^= row[w] & packed[w];
        x[i] = static_cast<Bit>(std::popcount(acc) & 1);
    }
    return x;
}

} // namespace raldpc::gf2
