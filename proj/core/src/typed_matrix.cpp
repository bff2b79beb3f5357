#include "raldpc/typed_matrix.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "raldpc/alist.hpp"
#include "raldpc/errors.hpp"
#include "raldpc/version.hpp"

namespace raldpc::graph {

TypedMatrix::TypedMatrix(gf2::BinaryMatrix matrix, std::size_t base_rows,
                         std::size_t base_cols, std::size_t z)
    : matrix_(std::move(matrix)), base_rows_(base_rows), base_cols_(base_cols), z_(z) {
    if (z_ == 0) throw std::invalid_argument("TypedMatrix: z must be positive");
    if (matrix_.rows() != base_rows_ * z_ || matrix_.cols() != base_cols_ * z_) {
        throw std::invalid_argument("TypedMatrix: matrix is " + std::to_string(matrix_.rows()) +
                                    "x" + std::to_string(matrix_.cols()) + ", expected " +
                                    std::to_string(base_rows_ * z_) + "x" +
                                    std::to_string(base_cols_ * z_));
    }
}

proto::Protograph TypedMatrix::realized_protograph() const {
    auto base = proto::Protograph::zeros(base_rows_, base_cols_);
    // Per-row and per-column edge counts into each opposite-side type block.
    std::vector<std::vector<int>> row_counts(matrix_.rows(),
                                             std::vector<int>(base_cols_, 0));
    std::vector<std::vector<int>> col_counts(matrix_.cols(),
                                             std::vector<int>(base_rows_, 0));
    for (std::size_t r = 0; r < matrix_.rows(); ++r) {
        for (std::size_t c : matrix_.row_support(r)) {
            ++row_counts[r][var_type(c)];
            ++col_counts[c][check_type(r)];
        }
    }
    for (std::size_t i = 0; i < base_rows_; ++i) {
        for (std::size_t j = 0; j < base_cols_; ++j) {
            const int expected = row_counts[i * z_][j];
            for (std::size_t r = i * z_; r < (i + 1) * z_; ++r) {
                if (row_counts[r][j] != expected) {
                    throw NotTypeConsistent("row " + std::to_string(r) + " has " +
                                            std::to_string(row_counts[r][j]) +
                                            " edges into variable type " + std::to_string(j) +
                                            ", expected " + std::to_string(expected));
                }
            }
            for (std::size_t c = j * z_; c < (j + 1) * z_; ++c) {
                if (col_counts[c][i] != expected) {
                    throw NotTypeConsistent("column " + std::to_string(c) + " has " +
                                            std::to_string(col_counts[c][i]) +
                                            " edges into check type " + std::to_string(i) +
                                            ", expected " + std::to_string(expected));
                }
            }
            base.set(i, j, expected);
        }
    }
    return base;
}

void save_typed(const std::string& prefix, const TypedMatrix& m, const LiftInfo& info) {
    io::write_alist_file(prefix + ".alist", m.matrix());
    nlohmann::json j;
    j["version"] = kVersion;
    j["z"] = m.z();
    j["base_rows"] = m.base_rows();
    j["base_cols"] = m.base_cols();
    j["method"] = info.method;
    j["seed"] = info.seed;
    std::ofstream out(prefix + ".json");
    if (!out) throw IoError("cannot open '" + prefix + ".json' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write to '" + prefix + ".json' failed");
}

LoadedTypedMatrix load_typed(const std::string& prefix) {
    std::ifstream in(prefix + ".json");
    if (!in) throw IoError("cannot open '" + prefix + ".json' for reading");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("typed matrix sidecar: " + std::string(e.what()));
    }
    LoadedTypedMatrix loaded;
    try {
        const auto z = j.at("z").get<std::size_t>();
        const auto base_rows = j.at("base_rows").get<std::size_t>();
        const auto base_cols = j.at("base_cols").get<std::size_t>();
        loaded.info.method = j.at("method").get<std::string>();
        loaded.info.seed = j.at("seed").get<std::uint64_t>();
        loaded.matrix = TypedMatrix(io::read_alist_file(prefix + ".alist"),
                                    base_rows, base_cols, z);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("typed matrix sidecar: " + std::string(e.what()));
    } catch (const std::invalid_argument& e) {
        throw IoError("typed matrix: " + std::string(e.what()));
    }
    return loaded;
}

} // namespace raldpc::graph
