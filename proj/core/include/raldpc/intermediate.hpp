#pragma once

#include <cstdint>
#include <vector>

#include "raldpc/density_evolution.hpp"
#include "raldpc/gf2.hpp"
#include "raldpc/protograph.hpp"

namespace raldpc::ladder {

// A combining matrix that folds mother syndrome bits into daughter syndrome
// bits: each row picks one or two mother rows to add over GF(2), and every
// mother row is consumed by exactly one daughter row. The matrix carries the
// same block-type structure as the lifted codes, so its realized protograph
// is a 0/1 matrix with row sums in {1, 2} and column sums exactly 1.
class IntermediateMatrix {
public:
    IntermediateMatrix() = default;
    // Validates all structural invariants; throws NotTypeConsistent when the
    // matrix does not realize `base` with lifting factor z, and
    // std::invalid_argument on row/column degree violations.
    IntermediateMatrix(gf2::BinaryMatrix matrix, proto::Protograph base, std::size_t z);

    const gf2::BinaryMatrix& matrix() const { return matrix_; }
    const proto::Protograph& base() const { return base_; }
    std::size_t z() const { return z_; }

    std::size_t rows() const { return matrix_.rows(); }
    std::size_t cols() const { return matrix_.cols(); }

    // Mother-row pairs summed by the degree-2 rows, as (low, high) index
    // pairs in daughter row order.
    std::vector<std::pair<std::size_t, std::size_t>> merged_pairs() const;

private:
    gf2::BinaryMatrix matrix_;
    proto::Protograph base_;
    std::size_t z_ = 0;
};

// All combining protographs that fold s_m1 mother check types into s_m2
// daughter rows: ordered partitions of the types into groups of size one or
// two, one group per row, emitted in lexicographic group order. Requires
// ceil(s_m1 / 2) <= s_m2 < s_m1 (one protograph-level step can at most halve
// the check count); pass allow_equal to additionally admit s_m2 == s_m1
// (pure permutations, useful for testing). Throws EmptyFamily when the shape
// admits no candidates.
std::vector<proto::Protograph> enum_intermediate_protos(std::size_t s_m1,
                                                        std::size_t s_m2,
                                                        bool allow_equal = false);

struct IntermediateChoice {
    // The winning combining protograph and the daughter it induces.
    proto::Protograph s_int;
    proto::Protograph s2;
    de::ThresholdReport report;
    // Distinct daughters actually run through density evolution; candidates
    // that differ only by row order share a cache entry.
    std::size_t evaluations = 0;
};

// Evaluates each candidate combining protograph by the decoding threshold
// of the daughter it induces and keeps the best. Ties go to the daughter
// with fewer total edges, then to the lexicographically smallest combining
// protograph, so the choice is deterministic. Candidates differing only in
// row order induce the same daughter ensemble and share one evaluation.
IntermediateChoice select_intermediate_proto(const proto::Protograph& s1,
                                             const std::vector<proto::Protograph>& candidates,
                                             const de::DeParams& de_params);

// The syndrome bits that must accompany the daughter syndrome for lossless
// rate upgrades: the lower mother-row index of every merged pair, ascending.
std::vector<std::size_t> build_cprime(const IntermediateMatrix& h_int);

// Checks that (h1, h_int, cprime) really is rate adaptive: stacking h_int on
// top of the unit rows picked by cprime must give an invertible m1 x m1
// matrix, and reconstructing the mother syndrome from (daughter syndrome,
// cprime bits) must be exact for `trials` random sources.
bool verify_rate_adaptive(const gf2::BinaryMatrix& h1, const gf2::BinaryMatrix& h_int,
                          const std::vector<std::size_t>& cprime, std::uint64_t seed,
                          std::size_t trials = 100);

} // namespace raldpc::ladder
