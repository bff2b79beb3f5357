#include "raldpc/protograph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "raldpc/errors.hpp"
#include "raldpc/rng.hpp"

namespace raldpc::proto {

Protograph::Protograph(std::vector<std::vector<int>> entries) : entries_(std::move(entries)) {
    const std::size_t c = cols();
    for (const auto& row : entries_) {
        if (row.size() != c) throw std::invalid_argument("Protograph: ragged rows");
        for (int v : row) {
            if (v < 0) throw std::invalid_argument("Protograph: negative entry");
        }
    }
}

Protograph Protograph::zeros(std::size_t rows, std::size_t cols) {
    return Protograph(std::vector<std::vector<int>>(rows, std::vector<int>(cols, 0)));
}

int Protograph::at(std::size_t i, std::size_t j) const {
    if (i >= rows() || j >= cols()) throw std::invalid_argument("Protograph: index out of range");
    return entries_[i][j];
}

void Protograph::set(std::size_t i, std::size_t j, int value) {
    if (i >= rows() || j >= cols()) throw std::invalid_argument("Protograph: index out of range");
    if (value < 0) throw std::invalid_argument("Protograph: negative entry");
    entries_[i][j] = value;
}

int Protograph::row_sum(std::size_t i) const {
    if (i >= rows()) throw std::invalid_argument("Protograph: row out of range");
    int s = 0;
    for (int v : entries_[i]) s += v;
    return s;
}

int Protograph::col_sum(std::size_t j) const {
    if (j >= cols()) throw std::invalid_argument("Protograph: column out of range");
    int s = 0;
    for (const auto& row : entries_) s += row[j];
    return s;
}

int Protograph::total_edges() const {
    int s = 0;
    for (const auto& row : entries_) {
        for (int v : row) s += v;
    }
    return s;
}

int Protograph::max_entry() const {
    int m = 0;
    for (const auto& row : entries_) {
        for (int v : row) m = std::max(m, v);
    }
    return m;
}

bool Protograph::has_zero_column() const {
    for (std::size_t j = 0; j < cols(); ++j) {
        if (col_sum(j) == 0) return true;
    }
    return false;
}

Protograph proto_product(const Protograph& a, const Protograph& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("proto_product: inner dimension mismatch");
    }
    Protograph c = Protograph::zeros(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const int aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c.set(i, j, c.at(i, j) + aik * b.at(k, j));
            }
        }
    }
    return c;
}

Protograph extend_protograph(const Protograph& s, std::size_t ze, std::uint64_t seed) {
    if (ze == 0) throw std::invalid_argument("extend_protograph: ze must be positive");
    const std::size_t m = s.rows();
    const std::size_t n = s.cols();
    Protograph ext = Protograph::zeros(m * ze, n * ze);
    Rng rng(seed);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (int e = 0; e < s.at(i, j); ++e) {
                const std::size_t shift = ze == 1 ? 0 : rng.next_index(ze);
                for (std::size_t r = 0; r < ze; ++r) {
                    const std::size_t c = (r + shift) % ze;
                    const std::size_t row = i * ze + r;
                    const std::size_t col = c * n + j;
                    ext.set(row, col, ext.at(row, col) + 1);
                }
            }
        }
    }
    return ext;
}

Protograph fold_extended(const Protograph& extended, std::size_t ze) {
    if (ze == 0) throw std::invalid_argument("fold_extended: ze must be positive");
    if (extended.rows() % ze != 0 || extended.cols() % ze != 0) {
        throw std::invalid_argument("fold_extended: dimensions not divisible by ze");
    }
    const std::size_t m = extended.rows() / ze;
    const std::size_t n = extended.cols() / ze;
    Protograph base = Protograph::zeros(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // Block entry (r, c) = extended(i*ze + r, c*n + j); circulant
            // means it depends only on (c - r) mod ze.
            for (std::size_t r = 0; r < ze; ++r) {
                for (std::size_t c = 0; c < ze; ++c) {
                    const int v = extended.at(i * ze + r, c * n + j);
                    const int diag = extended.at(i * ze, ((c + ze - r) % ze) * n + j);
                    if (v != diag) {
                        throw std::invalid_argument("fold_extended: block (" +
                                                    std::to_string(i) + "," + std::to_string(j) +
                                                    ") is not circulant");
                    }
                }
            }
            int sum = 0;
            for (std::size_t c = 0; c < ze; ++c) sum += extended.at(i * ze, c * n + j);
            base.set(i, j, sum);
        }
    }
    return base;
}

std::string canonical_key(const Protograph& s) {
    std::vector<std::vector<int>> rows = s.entries();
    std::sort(rows.begin(), rows.end());
    std::ostringstream out;
    out << s.rows() << 'x' << s.cols() << ':';
    for (const auto& row : rows) {
        for (int v : row) out << v << ',';
        out << ';';
    }
    return out.str();
}

std::string to_json(const Protograph& s) {
    nlohmann::json j;
    j["cn_types"] = s.rows();
    j["vn_types"] = s.cols();
    j["entries"] = s.entries();
    return j.dump(2) + "\n";
}

Protograph from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("protograph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("entries")) {
        throw IoError("protograph JSON: missing 'entries'");
    }
    std::vector<std::vector<int>> entries;
    try {
        entries = j.at("entries").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("protograph JSON: ") + e.what());
    }
    Protograph s = [&] {
        try {
            return Protograph(std::move(entries));
        } catch (const std::invalid_argument& e) {
            throw IoError(std::string("protograph JSON: ") + e.what());
        }
    }();
    if (j.contains("cn_types") &&
        j.at("cn_types").get<std::size_t>() != s.rows()) {
        throw IoError("protograph JSON: cn_types does not match entries");
    }
    if (j.contains("vn_types") &&
        j.at("vn_types").get<std::size_t>() != s.cols()) {
        throw IoError("protograph JSON: vn_types does not match entries");
    }
    return s;
}

Protograph load_protograph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

void save_protograph(const std::string& path, const Protograph& s) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << to_json(s);
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace raldpc::proto
