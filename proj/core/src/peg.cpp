#include "raldpc/peg.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "raldpc/errors.hpp"
#include "raldpc/rng.hpp"

namespace raldpc::graph {

namespace {

void validate_lift(const proto::Protograph& s, std::size_t z) {
    if (z == 0) throw std::invalid_argument("lift: z must be positive");
    if (s.rows() == 0 || s.cols() == 0) {
        throw std::invalid_argument("lift: empty protograph");
    }
    if (s.has_zero_column()) {
        throw Unconnected("lift: protograph has an all-zero column");
    }
    for (std::size_t i = 0; i < s.rows(); ++i) {
        for (std::size_t j = 0; j < s.cols(); ++j) {
            if (static_cast<std::size_t>(s.at(i, j)) > z) {
                throw Infeasible("lift: entry " + std::to_string(s.at(i, j)) + " at (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ") exceeds lifting factor " + std::to_string(z));
            }
        }
    }
}

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

// Distance from column v to every row in the partial bipartite graph,
// kUnreached where there is no path.
void bfs_row_depths(std::size_t v, const std::vector<std::vector<std::size_t>>& vn_rows,
                    const std::vector<std::vector<std::size_t>>& cn_cols,
                    std::vector<std::size_t>& depth, std::vector<std::size_t>& vn_seen,
                    std::vector<std::size_t>& cn_seen, std::size_t stamp) {
    std::fill(depth.begin(), depth.end(), kUnreached);
    std::queue<std::size_t> frontier;
    frontier.push(v);
    vn_seen[v] = stamp;
    // depth[r] is the row layer index (1 for rows adjacent to v, 2 for rows
    // two column-hops away, ...), a monotone function of graph distance,
    // which is all the greedy comparison needs.
    std::size_t level = 0;
    while (!frontier.empty()) {
        ++level;
        for (std::size_t count = frontier.size(); count > 0; --count) {
            const std::size_t u = frontier.front();
            frontier.pop();
            for (std::size_t r : vn_rows[u]) {
                if (cn_seen[r] == stamp) continue;
                cn_seen[r] = stamp;
                depth[r] = level;
                for (std::size_t w : cn_cols[r]) {
                    if (vn_seen[w] != stamp) {
                        vn_seen[w] = stamp;
                        frontier.push(w);
                    }
                }
            }
        }
    }
}

} // namespace

TypedMatrix peg_lift(const proto::Protograph& s, std::size_t z, std::uint64_t seed) {
    validate_lift(s, z);
    const std::size_t mp = s.rows();
    const std::size_t np = s.cols();
    const std::size_t m = mp * z;
    const std::size_t n = np * z;

    Rng rng(seed);
    // Seeded preference order among the rows of each check type.
    std::vector<std::size_t> pref(m);
    for (std::size_t i = 0; i < mp; ++i) {
        auto perm = random_permutation(z, rng);
        for (std::size_t k = 0; k < z; ++k) pref[i * z + perm[k]] = k;
    }

    std::vector<std::vector<std::size_t>> vn_rows(n), cn_cols(m);
    // block_deg[r][j]: edges from row r into variable type j so far.
    std::vector<std::vector<int>> block_deg(m, std::vector<int>(np, 0));

    std::vector<std::size_t> depth(m, kUnreached);
    std::vector<std::size_t> vn_seen(n, 0), cn_seen(m, 0);
    std::size_t stamp = 0;

    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t j = v / z;
        for (std::size_t i = 0; i < mp; ++i) {
            const int quota = s.at(i, j);
            for (int e = 0; e < quota; ++e) {
                ++stamp;
                bfs_row_depths(v, vn_rows, cn_cols, depth, vn_seen, cn_seen, stamp);
                std::size_t best = m;
                for (std::size_t r = i * z; r < (i + 1) * z; ++r) {
                    if (block_deg[r][j] >= quota) continue;
                    if (std::find(vn_rows[v].begin(), vn_rows[v].end(), r) !=
                        vn_rows[v].end()) {
                        continue;
                    }
                    if (best == m) {
                        best = r;
                        continue;
                    }
                    // Prefer larger distance, then lighter block load, then
                    // the seeded order.
                    const bool deeper = depth[r] > depth[best];
                    const bool equal_depth = depth[r] == depth[best];
                    const bool lighter = block_deg[r][j] < block_deg[best][j];
                    const bool equal_load = block_deg[r][j] == block_deg[best][j];
                    if (deeper || (equal_depth && lighter) ||
                        (equal_depth && equal_load && pref[r] < pref[best])) {
                        best = r;
                    }
                }
                if (best == m) {
                    throw Infeasible("peg_lift: no admissible row for column " +
                                     std::to_string(v) + " check type " + std::to_string(i));
                }
                vn_rows[v].push_back(best);
                cn_cols[best].push_back(v);
                ++block_deg[best][j];
            }
        }
    }

    auto matrix = gf2::BinaryMatrix::from_rows(m, n, std::move(cn_cols));
    return TypedMatrix(std::move(matrix), mp, np, z);
}

TypedMatrix random_lift(const proto::Protograph& s, std::size_t z, std::uint64_t seed) {
    validate_lift(s, z);
    const std::size_t mp = s.rows();
    const std::size_t np = s.cols();

    Rng rng(seed);
    std::vector<std::vector<std::size_t>> cn_cols(mp * z);

    for (std::size_t i = 0; i < mp; ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            const int quota = s.at(i, j);
            // taken[r] holds the in-block column offsets already used by row
            // i*z + r; each round adds one perfect matching avoiding them.
            std::vector<std::vector<std::size_t>> taken(z);
            for (int round = 0; round < quota; ++round) {
                auto sigma = random_permutation(z, rng);
                auto conflicted = [&](std::size_t r) {
                    return std::find(taken[r].begin(), taken[r].end(), sigma[r]) !=
                           taken[r].end();
                };
                std::size_t budget = 100 * z + 100;
                bool clean = false;
                while (budget-- > 0) {
                    std::size_t r = z;
                    for (std::size_t cand = 0; cand < z; ++cand) {
                        if (conflicted(cand)) {
                            r = cand;
                            break;
                        }
                    }
                    if (r == z) {
                        clean = true;
                        break;
                    }
                    // Swap with a random partner when that removes the
                    // conflict here without creating one there.
                    const std::size_t other = rng.next_index(z);
                    if (other == r) continue;
                    const bool ok_here =
                        std::find(taken[r].begin(), taken[r].end(), sigma[other]) ==
                        taken[r].end();
                    const bool ok_there =
                        std::find(taken[other].begin(), taken[other].end(), sigma[r]) ==
                        taken[other].end();
                    if (ok_here && ok_there) std::swap(sigma[r], sigma[other]);
                }
                if (!clean) {
                    throw Infeasible("random_lift: could not complete matching for block (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
                }
                for (std::size_t r = 0; r < z; ++r) {
                    taken[r].push_back(sigma[r]);
                    cn_cols[i * z + r].push_back(j * z + sigma[r]);
                }
            }
        }
    }

    auto matrix = gf2::BinaryMatrix::from_rows(mp * z, np * z, std::move(cn_cols));
    return TypedMatrix(std::move(matrix), mp, np, z);
}

} // namespace raldpc::graph
