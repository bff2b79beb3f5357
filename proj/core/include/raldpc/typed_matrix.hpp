#pragma once

#include <cstdint>
#include <string>

#include "raldpc/gf2.hpp"
#include "raldpc/protograph.hpp"

namespace raldpc::graph {

// A lifted parity-check matrix that keeps its type structure: row r belongs
// to check type r / z and column c to variable type c / z, so each type
// occupies one contiguous block of z rows or columns. Rate laddering relies
// on this layout to merge whole type blocks at once.
class TypedMatrix {
public:
    TypedMatrix() = default;
    TypedMatrix(gf2::BinaryMatrix matrix, std::size_t base_rows, std::size_t base_cols,
                std::size_t z);

    const gf2::BinaryMatrix& matrix() const { return matrix_; }
    std::size_t z() const { return z_; }
    std::size_t base_rows() const { return base_rows_; }
    std::size_t base_cols() const { return base_cols_; }

    std::size_t check_type(std::size_t row) const { return row / z_; }
    std::size_t var_type(std::size_t col) const { return col / z_; }

    // Counts edges between each (check type, variable type) block pair and
    // verifies the count is the same for every row and every column of the
    // block. Throws NotTypeConsistent when any row or column deviates, i.e.
    // when this lift does not realize a protograph.
    proto::Protograph realized_protograph() const;

private:
    gf2::BinaryMatrix matrix_;
    std::size_t base_rows_ = 0;
    std::size_t base_cols_ = 0;
    std::size_t z_ = 0;
};

// Provenance carried next to a stored matrix; the alist format has no room
// for it, so it travels in a JSON sidecar.
struct LiftInfo {
    std::string method;
    std::uint64_t seed = 0;
};

// Writes <prefix>.alist plus <prefix>.json (tool version, base dimensions,
// lifting factor, construction method and seed).
void save_typed(const std::string& prefix, const TypedMatrix& m, const LiftInfo& info);

struct LoadedTypedMatrix {
    TypedMatrix matrix;
    LiftInfo info;
};

LoadedTypedMatrix load_typed(const std::string& prefix);

} // namespace raldpc::graph
