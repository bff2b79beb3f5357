#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace raldpc::gf2 {

using Bit = std::uint8_t;
using BitVector = std::vector<Bit>;

// Sparse binary matrix stored as one sorted column-index list per row.
// Instances are immutable after construction; all builders validate their
// input and throw std::invalid_argument on bad dimensions or duplicate
// entries. Zero rows are rejected by default because a parity check with no
// taps is almost always a bug; pass allow_zero_rows = true where they are a
// legitimate outcome (row merging can cancel a row completely).
class BinaryMatrix {
public:
    BinaryMatrix() = default;

    static BinaryMatrix from_rows(std::size_t rows, std::size_t cols,
                                  std::vector<std::vector<std::size_t>> supports,
                                  bool allow_zero_rows = false);
    static BinaryMatrix from_dense(const std::vector<BitVector>& dense,
                                   bool allow_zero_rows = false);
    static BinaryMatrix identity(std::size_t n);

    std::size_t rows() const { return supports_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const;

    const std::vector<std::size_t>& row_support(std::size_t i) const;
    bool at(std::size_t i, std::size_t j) const;
    BitVector row_dense(std::size_t i) const;

    // New matrix with this matrix's rows on top of other's rows.
    BinaryMatrix vstack(const BinaryMatrix& other) const;
    // New matrix keeping rows idx[0], idx[1], ... in that order (repeats allowed).
    BinaryMatrix select_rows(const std::vector<std::size_t>& idx) const;

    friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
        return a.cols_ == b.cols_ && a.supports_ == b.supports_;
    }
    friend bool operator!=(const BinaryMatrix& a, const BinaryMatrix& b) {
        return !(a == b);
    }

private:
    std::size_t cols_ = 0;
    std::vector<std::vector<std::size_t>> supports_;
};

// Symmetric difference of two sorted index lists (GF(2) sum of two rows).
std::vector<std::size_t> xor_support(const std::vector<std::size_t>& a,
                                     const std::vector<std::size_t>& b);

// a * b over GF(2). Result may contain zero rows.
BinaryMatrix mul_gf2(const BinaryMatrix& a, const BinaryMatrix& b);

// a * x over GF(2); x entries are taken mod 2.
BitVector mat_vec_gf2(const BinaryMatrix& a, const BitVector& x);

std::size_t rank_gf2(const BinaryMatrix& a);

// Solve the square system a * x = b. Returns the unique solution, or nullopt
// when a is singular (no solution or infinitely many).
std::optional<BitVector> solve_unique(const BinaryMatrix& a, const BitVector& b);

// Factor a square matrix once, then solve against many right-hand sides.
// Inverts via Gauss-Jordan on bit-packed rows; each solve is a packed
// matrix-vector product.
class Solver {
public:
    explicit Solver(const BinaryMatrix& a);

    bool invertible() const { return invertible_; }
    std::size_t size() const { return n_; }

    // Throws std::logic_error if the matrix was singular.
    BitVector solve(const BitVector& b) const;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    bool invertible_ = false;
    std::vector<std::uint64_t> inverse_;
};

} // namespace raldpc::gf2
