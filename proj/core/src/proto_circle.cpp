#include "raldpc/proto_circle.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>

#include "raldpc/cycles.hpp"
#include "raldpc/errors.hpp"
#include "raldpc/parallel.hpp"
#include "raldpc/rng.hpp"

namespace raldpc::ladder {

namespace {

bool supports_disjoint(const std::vector<std::size_t>& a,
                       const std::vector<std::size_t>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            return false;
        }
    }
    return true;
}

std::vector<std::size_t> merge_supports(const std::vector<std::size_t>& a,
                                        const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::size_t score_against(const std::vector<std::vector<std::size_t>>& rows,
                          const std::vector<std::size_t>& cand) {
    std::size_t total = 0;
    for (const auto& row : rows) total += graph::pair_cycles(row, cand);
    return total;
}

struct PassOutput {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::vector<std::size_t>> combined;
};

// One greedy pairing pass committing `steps` merges. Candidates are scored
// against score_base plus the rows this pass has already combined. Returns
// false when some merge finds no disjoint partner within the u redraws.
bool run_pair_pass(const gf2::BinaryMatrix& mother,
                   const std::vector<std::size_t>& pool1,
                   const std::vector<std::size_t>& pool2,
                   const std::vector<std::vector<std::size_t>>& score_base,
                   std::size_t steps, std::size_t k, Rng& rng, PassOutput& out) {
    std::vector<std::size_t> unused1 = pool1;
    std::vector<std::size_t> unused2 = pool2;
    std::vector<std::size_t> order_u;
    std::vector<std::size_t> order_v;
    for (std::size_t step = 0; step < steps; ++step) {
        // One random u plus up to ten distinct resamples when u has no
        // disjoint partner at all.
        order_u = unused1;
        fisher_yates(order_u, rng);
        const std::size_t draws = std::min<std::size_t>(order_u.size(), 11);
        bool committed = false;
        for (std::size_t draw = 0; draw < draws && !committed; ++draw) {
            const std::size_t u = order_u[draw];
            const auto& u_sup = mother.row_support(u);
            order_v = unused2;
            fisher_yates(order_v, rng);
            std::size_t found = 0;
            std::size_t best_v = 0;
            std::size_t best_score = 0;
            std::vector<std::size_t> best_sup;
            for (std::size_t v : order_v) {
                if (!supports_disjoint(u_sup, mother.row_support(v))) continue;
                auto cand = merge_supports(u_sup, mother.row_support(v));
                const std::size_t score =
                    score_against(score_base, cand) + score_against(out.combined, cand);
                if (found == 0 || score < best_score) {
                    best_v = v;
                    best_score = score;
                    best_sup = std::move(cand);
                }
                if (++found == k) break;
            }
            if (found == 0) continue;
            unused1.erase(std::find(unused1.begin(), unused1.end(), u));
            unused2.erase(std::find(unused2.begin(), unused2.end(), best_v));
            out.pairs.emplace_back(u, best_v);
            out.combined.push_back(std::move(best_sup));
            committed = true;
        }
        if (!committed) return false;
    }
    return true;
}

void check_combining_proto(const proto::Protograph& s_int, std::size_t base_rows) {
    if (s_int.cols() != base_rows) {
        throw std::invalid_argument(
            "proto_circle: combining protograph has " + std::to_string(s_int.cols()) +
            " columns for " + std::to_string(base_rows) + " mother check types");
    }
    std::vector<int> col_sum(s_int.cols(), 0);
    for (std::size_t i = 0; i < s_int.rows(); ++i) {
        int row_sum = 0;
        for (std::size_t j = 0; j < s_int.cols(); ++j) {
            const int e = s_int.at(i, j);
            if (e > 1) {
                throw std::invalid_argument("proto_circle: combining entries must be 0/1");
            }
            row_sum += e;
            col_sum[j] += e;
        }
        if (row_sum < 1 || row_sum > 2) {
            throw std::invalid_argument("proto_circle: combining rows must have 1 or 2 ones");
        }
    }
    for (int c : col_sum) {
        if (c != 1) {
            throw std::invalid_argument(
                "proto_circle: every mother check type must be used exactly once");
        }
    }
}

ProtoCircleResult build_once(const graph::TypedMatrix& h1, const proto::Protograph& s_int,
                             std::size_t k, std::uint64_t restart_seed) {
    const auto& mother = h1.matrix();
    const std::size_t z = h1.z();
    std::vector<std::vector<std::size_t>> emitted;
    std::vector<std::vector<std::size_t>> h_int_rows;
    std::vector<std::pair<std::size_t, std::size_t>> all_pairs;
    emitted.reserve(s_int.rows() * z);
    h_int_rows.reserve(s_int.rows() * z);

    for (std::size_t i = 0; i < s_int.rows(); ++i) {
        std::vector<std::size_t> types;
        for (std::size_t j = 0; j < s_int.cols(); ++j) {
            if (s_int.at(i, j) != 0) types.push_back(j);
        }
        if (types.size() == 1) {
            for (std::size_t r = 0; r < z; ++r) {
                const std::size_t row = types[0] * z + r;
                emitted.push_back(mother.row_support(row));
                h_int_rows.push_back({row});
            }
            continue;
        }
        std::vector<std::size_t> pool1(z), pool2(z);
        for (std::size_t r = 0; r < z; ++r) {
            pool1[r] = types[0] * z + r;
            pool2[r] = types[1] * z + r;
        }
        bool ok = false;
        for (std::size_t attempt = 0; attempt <= 5 && !ok; ++attempt) {
            Rng rng(derive_seed(restart_seed, i * 8 + attempt));
            PassOutput out;
            if (!run_pair_pass(mother, pool1, pool2, emitted, z, k, rng, out)) continue;
            for (std::size_t q = 0; q < z; ++q) {
                emitted.push_back(std::move(out.combined[q]));
                h_int_rows.push_back({out.pairs[q].first, out.pairs[q].second});
                all_pairs.push_back(out.pairs[q]);
            }
            ok = true;
        }
        if (!ok) {
            throw NoDisjointCandidate(
                "proto_circle: no disjoint partner for combining row " +
                std::to_string(i) + " after all fallbacks");
        }
    }

    const std::size_t m2 = s_int.rows() * z;
    ProtoCircleResult result;
    result.h2 = graph::TypedMatrix(
        gf2::BinaryMatrix::from_rows(m2, mother.cols(), std::move(emitted)),
        s_int.rows(), h1.base_cols(), z);
    result.h_int = IntermediateMatrix(
        gf2::BinaryMatrix::from_rows(m2, mother.rows(), std::move(h_int_rows)), s_int, z);
    result.n4 = graph::count_4cycles(result.h2.matrix());
    result.pairs = std::move(all_pairs);
    return result;
}

} // namespace

ProtoCircleResult proto_circle(const graph::TypedMatrix& h1,
                               const proto::Protograph& s_int, std::size_t k,
                               std::size_t repeats, std::uint64_t seed,
                               std::size_t workers) {
    if (k == 0) throw std::invalid_argument("proto_circle: k must be positive");
    if (repeats == 0) throw std::invalid_argument("proto_circle: repeats must be positive");
    check_combining_proto(s_int, h1.base_rows());

    std::vector<ProtoCircleResult> results(repeats);
    parallel_for(repeats, workers, [&](std::size_t r) {
        results[r] = build_once(h1, s_int, k, derive_seed(seed, r));
        results[r].restart = r;
    });
    std::size_t best = 0;
    for (std::size_t r = 1; r < repeats; ++r) {
        if (results[r].n4 < results[best].n4) best = r;
    }
    return std::move(results[best]);
}

FineChain chain_from_pairs(const gf2::BinaryMatrix& h_prev,
                           const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                           std::size_t steps) {
    if (steps > pairs.size()) {
        throw std::invalid_argument("chain_from_pairs: not enough pairs for the steps");
    }
    FineChain chain;
    std::vector<bool> consumed(h_prev.rows(), false);
    std::vector<std::vector<std::size_t>> combined;
    for (std::size_t q = 0; q < steps; ++q) {
        const auto [u, v] = pairs[q];
        if (u >= h_prev.rows() || v >= h_prev.rows() || u == v || consumed[u] ||
            consumed[v]) {
            throw std::invalid_argument("chain_from_pairs: bad pair at step " +
                                        std::to_string(q));
        }
        // Positions of the parents in the matrix this step starts from:
        // q combined rows on top, then the surviving rows in mother order.
        std::size_t pos_u = q, pos_v = q;
        for (std::size_t r = 0; r < u; ++r) {
            if (!consumed[r]) ++pos_u;
        }
        for (std::size_t r = 0; r < v; ++r) {
            if (!consumed[r]) ++pos_v;
        }
        chain.pairs.emplace_back(std::min(pos_u, pos_v), std::max(pos_u, pos_v));
        consumed[u] = true;
        consumed[v] = true;
        combined.push_back(merge_supports(h_prev.row_support(u), h_prev.row_support(v)));

        std::vector<std::vector<std::size_t>> rows = combined;
        for (std::size_t r = 0; r < h_prev.rows(); ++r) {
            if (!consumed[r]) rows.push_back(h_prev.row_support(r));
        }
        const std::size_t n_rows = rows.size();
        chain.matrices.push_back(
            gf2::BinaryMatrix::from_rows(n_rows, h_prev.cols(), std::move(rows)));
    }
    return chain;
}

FineChain fine_steps(const graph::TypedMatrix& h_prev,
                     std::pair<std::size_t, std::size_t> type_pair, std::size_t steps,
                     std::size_t k, std::uint64_t seed) {
    const std::size_t z = h_prev.z();
    const auto [j1, j2] = type_pair;
    if (j1 >= h_prev.base_rows() || j2 >= h_prev.base_rows() || j1 == j2) {
        throw std::invalid_argument("fine_steps: bad type pair");
    }
    if (steps > z) {
        throw std::invalid_argument("fine_steps: at most z merges per type pair");
    }
    if (k == 0) throw std::invalid_argument("fine_steps: k must be positive");
    if (steps == 0) return {};

    std::vector<std::size_t> pool1(z), pool2(z);
    for (std::size_t r = 0; r < z; ++r) {
        pool1[r] = j1 * z + r;
        pool2[r] = j2 * z + r;
    }
    const std::vector<std::vector<std::size_t>> empty_base;
    for (std::size_t attempt = 0; attempt <= 5; ++attempt) {
        Rng rng(derive_seed(seed, attempt));
        PassOutput out;
        if (run_pair_pass(h_prev.matrix(), pool1, pool2, empty_base, steps, k, rng, out)) {
            return chain_from_pairs(h_prev.matrix(), out.pairs, steps);
        }
    }
    throw NoDisjointCandidate("fine_steps: no disjoint partner after all fallbacks");
}

} // namespace raldpc::ladder
