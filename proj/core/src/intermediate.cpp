#include "raldpc/intermediate.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "raldpc/errors.hpp"
#include "raldpc/rng.hpp"
#include "raldpc/typed_matrix.hpp"

namespace raldpc::ladder {

IntermediateMatrix::IntermediateMatrix(gf2::BinaryMatrix matrix, proto::Protograph base,
                                       std::size_t z)
    : matrix_(std::move(matrix)), base_(std::move(base)), z_(z) {
    if (z_ == 0) throw std::invalid_argument("IntermediateMatrix: z must be positive");
    if (matrix_.rows() != base_.rows() * z_ || matrix_.cols() != base_.cols() * z_) {
        throw std::invalid_argument("IntermediateMatrix: shape does not match base and z");
    }
    std::vector<std::size_t> col_sum(matrix_.cols(), 0);
    for (std::size_t r = 0; r < matrix_.rows(); ++r) {
        const auto& support = matrix_.row_support(r);
        if (support.size() < 1 || support.size() > 2) {
            throw std::invalid_argument(
                "IntermediateMatrix: row " + std::to_string(r) +
                " combines " + std::to_string(support.size()) +
                " mother rows; only 1 or 2 are allowed");
        }
        for (std::size_t c : support) ++col_sum[c];
    }
    for (std::size_t c = 0; c < matrix_.cols(); ++c) {
        if (col_sum[c] != 1) {
            throw std::invalid_argument(
                "IntermediateMatrix: mother row " + std::to_string(c) + " is used " +
                std::to_string(col_sum[c]) + " times; every row must be used once");
        }
    }
    for (std::size_t i = 0; i < base_.rows(); ++i) {
        for (std::size_t j = 0; j < base_.cols(); ++j) {
            if (base_.at(i, j) > 1) {
                throw std::invalid_argument(
                    "IntermediateMatrix: base entries must be 0 or 1");
            }
        }
    }
    // Throws NotTypeConsistent when any row or column strays from its block.
    auto realized = graph::TypedMatrix(matrix_, base_.rows(), base_.cols(), z_)
                        .realized_protograph();
    if (realized != base_) {
        throw NotTypeConsistent("IntermediateMatrix: matrix does not realize its base");
    }
}

std::vector<std::pair<std::size_t, std::size_t>> IntermediateMatrix::merged_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t r = 0; r < matrix_.rows(); ++r) {
        const auto& support = matrix_.row_support(r);
        if (support.size() == 2) pairs.emplace_back(support[0], support[1]);
    }
    return pairs;
}

namespace {

void enum_groups(std::size_t s_m1, std::size_t rows_left,
                 std::vector<bool>& used, std::size_t used_count,
                 std::vector<std::vector<int>>& current,
                 std::vector<proto::Protograph>& out) {
    const std::size_t types_left = s_m1 - used_count;
    if (rows_left == 0) {
        if (types_left == 0) out.emplace_back(current);
        return;
    }
    if (types_left < rows_left || types_left > 2 * rows_left) return;
    for (std::size_t a = 0; a < s_m1; ++a) {
        if (used[a]) continue;
        used[a] = true;
        current.emplace_back(s_m1, 0);
        current.back()[a] = 1;
        enum_groups(s_m1, rows_left - 1, used, used_count + 1, current, out);
        for (std::size_t b = a + 1; b < s_m1; ++b) {
            if (used[b]) continue;
            used[b] = true;
            current.back()[b] = 1;
            enum_groups(s_m1, rows_left - 1, used, used_count + 2, current, out);
            current.back()[b] = 0;
            used[b] = false;
        }
        current.pop_back();
        used[a] = false;
    }
}

} // namespace

std::vector<proto::Protograph> enum_intermediate_protos(std::size_t s_m1,
                                                        std::size_t s_m2,
                                                        bool allow_equal) {
    if (s_m1 == 0 || s_m2 == 0) {
        throw EmptyFamily("enum_intermediate_protos: empty shape");
    }
    const bool shrinking = s_m2 < s_m1 && 2 * s_m2 >= s_m1;
    const bool identity_like = allow_equal && s_m2 == s_m1;
    if (!shrinking && !identity_like) {
        throw EmptyFamily("enum_intermediate_protos: no " + std::to_string(s_m2) + "x" +
                          std::to_string(s_m1) +
                          " combiner with rows of one or two mother types exists");
    }
    std::vector<proto::Protograph> out;
    std::vector<bool> used(s_m1, false);
    std::vector<std::vector<int>> current;
    enum_groups(s_m1, s_m2, used, 0, current, out);
    return out;
}

IntermediateChoice select_intermediate_proto(const proto::Protograph& s1,
                                             const std::vector<proto::Protograph>& candidates,
                                             const de::DeParams& de_params) {
    if (candidates.empty()) throw EmptyFamily("select_intermediate_proto: no candidates");
    IntermediateChoice choice;
    std::unordered_map<std::string, de::ThresholdReport> cache;
    bool have = false;
    for (const auto& cand : candidates) {
        if (cand.cols() != s1.rows()) {
            throw std::invalid_argument(
                "select_intermediate_proto: candidate has " + std::to_string(cand.cols()) +
                " columns, expected " + std::to_string(s1.rows()));
        }
        auto s2 = proto::proto_product(cand, s1);
        const auto key = proto::canonical_key(s2);
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, de::threshold(s2, de_params)).first;
        }
        const auto& report = it->second;
        const bool better =
            !have || report.threshold > choice.report.threshold ||
            (report.threshold == choice.report.threshold &&
             (s2.total_edges() < choice.s2.total_edges() ||
              (s2.total_edges() == choice.s2.total_edges() &&
               cand.entries() < choice.s_int.entries())));
        if (better) {
            choice.s_int = cand;
            choice.s2 = std::move(s2);
            choice.report = report;
            have = true;
        }
    }
    choice.evaluations = cache.size();
    return choice;
}

std::vector<std::size_t> build_cprime(const IntermediateMatrix& h_int) {
    std::vector<std::size_t> cprime;
    for (const auto& pair : h_int.merged_pairs()) cprime.push_back(pair.first);
    std::sort(cprime.begin(), cprime.end());
    return cprime;
}

bool verify_rate_adaptive(const gf2::BinaryMatrix& h1, const gf2::BinaryMatrix& h_int,
                          const std::vector<std::size_t>& cprime, std::uint64_t seed,
                          std::size_t trials) {
    const std::size_t m1 = h1.rows();
    if (h_int.cols() != m1) return false;
    if (h_int.rows() + cprime.size() != m1) return false;
    for (std::size_t c : cprime) {
        if (c >= m1) return false;
    }
    std::vector<std::vector<std::size_t>> stacked;
    stacked.reserve(m1);
    for (std::size_t r = 0; r < h_int.rows(); ++r) stacked.push_back(h_int.row_support(r));
    for (std::size_t c : cprime) stacked.push_back({c});
    gf2::Solver solver(gf2::BinaryMatrix::from_rows(m1, m1, std::move(stacked)));
    if (!solver.invertible()) return false;

    Rng rng(derive_seed(seed, 0x5EED));
    for (std::size_t t = 0; t < trials; ++t) {
        gf2::BitVector x(h1.cols());
        for (auto& bit : x) bit = rng.next_bit();
        const auto s = gf2::mat_vec_gf2(h1, x);
        auto rhs = gf2::mat_vec_gf2(h_int, s);
        rhs.reserve(m1);
        for (std::size_t c : cprime) rhs.push_back(s[c]);
        if (solver.solve(rhs) != s) return false;
    }
    return true;
}

} // namespace raldpc::ladder
