#include "raldpc/ldpca.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace raldpc::ldpca {

gf2::BitVector accumulate(const gf2::BitVector& s) {
    gf2::BitVector a(s.size());
    gf2::Bit running = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        running ^= s[j] & 1u;
        a[j] = running;
    }
    return a;
}

gf2::BitVector unaccumulate(const gf2::BitVector& a) {
    gf2::BitVector s(a.size());
    gf2::Bit previous = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        s[j] = (a[j] ^ previous) & 1u;
        previous = a[j] & 1u;
    }
    return s;
}

std::vector<std::size_t> transmit_indices(std::size_t m1, std::size_t target_m) {
    if (target_m == 0 || target_m > m1) {
        throw std::invalid_argument("transmit_indices: target " + std::to_string(target_m) +
                                    " outside [1, " + std::to_string(m1) + "]");
    }
    std::vector<std::size_t> indices(target_m);
    for (std::size_t k = 1; k <= target_m; ++k) {
        // round(k * m1 / target_m), halves up, in exact integer arithmetic.
        indices[k - 1] = (2 * k * m1 + target_m) / (2 * target_m);
    }
    return indices;
}

Transmission transmit(const gf2::BitVector& accumulated, std::size_t target_m) {
    Transmission t;
    t.indices = transmit_indices(accumulated.size(), target_m);
    t.values.reserve(target_m);
    for (std::size_t index : t.indices) t.values.push_back(accumulated[index - 1]);
    return t;
}

gf2::BinaryMatrix merged_code(const gf2::BinaryMatrix& h1, std::size_t target_m) {
    const auto indices = transmit_indices(h1.rows(), target_m);
    std::vector<std::vector<std::size_t>> rows;
    rows.reserve(target_m);
    std::size_t previous = 0;
    for (std::size_t index : indices) {
        std::vector<std::size_t> merged;
        for (std::size_t r = previous; r < index; ++r) {
            merged = gf2::xor_support(merged, h1.row_support(r));
        }
        rows.push_back(std::move(merged));
        previous = index;
    }
    return gf2::BinaryMatrix::from_rows(target_m, h1.cols(), std::move(rows), true);
}

gf2::BitVector merged_syndrome(const Transmission& t) {
    gf2::BitVector s(t.values.size());
    gf2::Bit previous = 0;
    for (std::size_t k = 0; k < t.values.size(); ++k) {
        s[k] = (t.values[k] ^ previous) & 1u;
        previous = t.values[k] & 1u;
    }
    return s;
}

LdpcaCode::LdpcaCode(gf2::BinaryMatrix h1) : h1_(std::move(h1)) {
    if (h1_.rows() == 0 || h1_.cols() == 0) {
        throw std::invalid_argument("LdpcaCode: empty mother matrix");
    }
}

const gf2::BinaryMatrix& LdpcaCode::code_at(std::size_t target_m) {
    if (target_m == m1()) return h1_;
    auto it = cache_.find(target_m);
    if (it == cache_.end()) {
        it = cache_.emplace(target_m, merged_code(h1_, target_m)).first;
    }
    return it->second;
}

Transmission LdpcaCode::extract(std::size_t target_m, const gf2::BitVector& x) const {
    return transmit(accumulate(gf2::mat_vec_gf2(h1_, x)), target_m);
}

} // namespace raldpc::ldpca
