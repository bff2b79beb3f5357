#include "raldpc/alist.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "raldpc/errors.hpp"

namespace raldpc::io {

namespace {

long read_long(std::istream& in, const char* what) {
    long v = 0;
    if (!(in >> v)) throw IoError(std::string("alist: missing or malformed ") + what);
    return v;
}

std::size_t read_size(std::istream& in, const char* what) {
    const long v = read_long(in, what);
    if (v < 0) throw IoError(std::string("alist: negative ") + what);
    return static_cast<std::size_t>(v);
}

} // namespace

gf2::BinaryMatrix read_alist(std::istream& in) {
    const std::size_t n = read_size(in, "column count");
    const std::size_t m = read_size(in, "row count");
    const std::size_t max_col = read_size(in, "max column degree");
    const std::size_t max_row = read_size(in, "max row degree");

    std::vector<std::size_t> col_deg(n), row_deg(m);
    for (std::size_t j = 0; j < n; ++j) {
        col_deg[j] = read_size(in, "column degree");
        if (col_deg[j] > max_col) throw IoError("alist: column degree exceeds stated maximum");
        if (col_deg[j] > m) throw IoError("alist: column degree exceeds row count");
    }
    for (std::size_t i = 0; i < m; ++i) {
        row_deg[i] = read_size(in, "row degree");
        if (row_deg[i] > max_row) throw IoError("alist: row degree exceeds stated maximum");
        if (row_deg[i] > n) throw IoError("alist: row degree exceeds column count");
    }

    // Entry lists may be zero-padded to the stated maximum or written bare.
    // Read eagerly: after the stated degree count, consume any zeros up to the
    // maximum, but stop early if a nonzero (the next list) appears.
    auto read_index_list = [&](std::size_t degree, std::size_t max_degree,
                               std::size_t bound, const char* what) {
        std::vector<std::size_t> out;
        out.reserve(degree);
        for (std::size_t k = 0; k < degree; ++k) {
            const std::size_t v = read_size(in, what);
            if (v == 0 || v > bound) {
                throw IoError(std::string("alist: index out of range in ") + what + " list");
            }
            out.push_back(v - 1);
        }
        for (std::size_t k = degree; k < max_degree; ++k) {
            const auto pos = in.tellg();
            long v = 0;
            if (!(in >> v)) {
                in.clear();
                break;
            }
            if (v != 0) {
                in.seekg(pos);
                break;
            }
        }
        return out;
    };

    std::vector<std::vector<std::size_t>> col_lists(n);
    for (std::size_t j = 0; j < n; ++j) {
        col_lists[j] = read_index_list(col_deg[j], max_col, m, "row index");
    }
    std::vector<std::vector<std::size_t>> row_lists(m);
    for (std::size_t i = 0; i < m; ++i) {
        row_lists[i] = read_index_list(row_deg[i], max_row, n, "column index");
    }

    auto matrix = gf2::BinaryMatrix::from_rows(m, n, std::move(row_lists),
                                               /*allow_zero_rows=*/true);

    // The column lists are redundant; verify they describe the same matrix.
    std::vector<std::vector<std::size_t>> from_rows_cols(n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j : matrix.row_support(i)) from_rows_cols[j].push_back(i);
    }
    for (std::size_t j = 0; j < n; ++j) {
        auto& claimed = col_lists[j];
        std::sort(claimed.begin(), claimed.end());
        if (claimed != from_rows_cols[j]) {
            throw IoError("alist: row and column adjacency lists disagree at column " +
                          std::to_string(j + 1));
        }
    }
    return matrix;
}

gf2::BinaryMatrix read_alist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("alist: cannot open '" + path + "' for reading");
    return read_alist(in);
}

void write_alist(std::ostream& out, const gf2::BinaryMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::vector<std::size_t>> col_lists(cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j : m.row_support(i)) col_lists[j].push_back(i);
    }
    std::size_t max_col = 0, max_row = 0;
    for (const auto& c : col_lists) max_col = std::max(max_col, c.size());
    for (std::size_t i = 0; i < rows; ++i) {
        max_row = std::max(max_row, m.row_support(i).size());
    }

    auto write_list = [&out](const std::vector<std::size_t>& entries, std::size_t pad_to) {
        for (std::size_t k = 0; k < pad_to; ++k) {
            if (k) out << ' ';
            out << (k < entries.size() ? entries[k] + 1 : 0);
        }
        out << '\n';
    };

    out << cols << ' ' << rows << '\n';
    out << max_col << ' ' << max_row << '\n';
    for (std::size_t j = 0; j < cols; ++j) {
        out << (j ? " " : "") << col_lists[j].size();
    }
    out << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        out << (i ? " " : "") << m.row_support(i).size();
    }
    out << '\n';
    for (std::size_t j = 0; j < cols; ++j) write_list(col_lists[j], max_col);
    for (std::size_t i = 0; i < rows; ++i) write_list(m.row_support(i), max_row);
}

void write_alist_file(const std::string& path, const gf2::BinaryMatrix& m) {
    std::ofstream out(path);
    if (!out) throw IoError("alist: cannot open '" + path + "' for writing");
    write_alist(out, m);
    if (!out) throw IoError("alist: write to '" + path + "' failed");
}

} // namespace raldpc::io
