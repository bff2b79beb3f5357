#include "raldpc/protograph_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "raldpc/rng.hpp"

namespace raldpc::search {

namespace {

void repair_zero_columns(proto::Protograph& s, Rng& rng) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
        if (s.col_sum(j) == 0) {
            s.set(rng.next_index(s.rows()), j, 1);
        }
    }
}

proto::Protograph random_candidate(std::size_t rows, std::size_t cols, int max_entry,
                                   Rng& rng) {
    proto::Protograph s = proto::Protograph::zeros(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            s.set(i, j, static_cast<int>(rng.next_index(
                            static_cast<std::uint64_t>(max_entry) + 1)));
        }
    }
    repair_zero_columns(s, rng);
    return s;
}

} // namespace

SearchResult optimize_protograph(std::size_t rows, std::size_t cols,
                                 const SearchParams& params) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("optimize_protograph: empty shape");
    }
    if (rows >= cols) {
        throw std::invalid_argument(
            "optimize_protograph: need fewer check types than variable types");
    }
    if (params.population < 4) {
        throw std::invalid_argument("optimize_protograph: population must be at least 4");
    }
    if (params.max_entry < 1) {
        throw std::invalid_argument("optimize_protograph: max_entry must be positive");
    }
    if (!(params.f > 0.0) || !(params.cr >= 0.0) || !(params.cr <= 1.0)) {
        throw std::invalid_argument("optimize_protograph: bad f or cr");
    }

    Rng rng(params.seed);
    SearchResult result;
    const std::size_t dim = rows * cols;
    if (params.population < 5 * dim || params.population > 10 * dim) {
        result.warnings.push_back(
            "population " + std::to_string(params.population) +
            " is outside the usual 5x-10x the " + std::to_string(dim) +
            " entries being optimized");
    }
    std::unordered_map<std::string, double> cache;
    auto fitness = [&](const proto::Protograph& s) {
        const auto key = proto::canonical_key(s);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const double th = de::threshold(s, params.de).threshold;
        cache.emplace(key, th);
        ++result.evaluations;
        return th;
    };

    const std::size_t v = params.population;
    std::vector<proto::Protograph> pool;
    std::vector<double> score;
    pool.reserve(v);
    score.reserve(v);
    for (std::size_t i = 0; i < v; ++i) {
        pool.push_back(random_candidate(rows, cols, params.max_entry, rng));
        score.push_back(fitness(pool.back()));
    }

    auto best_index = [&]() {
        std::size_t best = 0;
        for (std::size_t i = 1; i < v; ++i) {
            if (score[i] > score[best]) best = i;
        }
        return best;
    };
    auto record_best = [&]() { result.generation_best.push_back(score[best_index()]); };
    record_best();

    for (std::size_t gen = 0; gen < params.generations; ++gen) {
        for (std::size_t i = 0; i < v; ++i) {
            // Three distinct partners, all different from i.
            std::size_t r1, r2, r3;
            do {
                r1 = rng.next_index(v);
            } while (r1 == i);
            do {
                r2 = rng.next_index(v);
            } while (r2 == i || r2 == r1);
            do {
                r3 = rng.next_index(v);
            } while (r3 == i || r3 == r1 || r3 == r2);

            proto::Protograph child = pool[i];
            const std::size_t forced = rng.next_index(rows * cols);
            for (std::size_t e = 0; e < rows * cols; ++e) {
                const std::size_t a = e / cols;
                const std::size_t b = e % cols;
                const bool take = rng.next_double() < params.cr || e == forced;
                if (!take) continue;
                const double mutant =
                    static_cast<double>(pool[r1].at(a, b)) +
                    params.f * (static_cast<double>(pool[r2].at(a, b)) -
                                static_cast<double>(pool[r3].at(a, b)));
                const int entry = std::clamp(static_cast<int>(std::llround(mutant)), 0,
                                             params.max_entry);
                child.set(a, b, entry);
            }
            repair_zero_columns(child, rng);

            const double child_score = fitness(child);
            const bool better = child_score > score[i];
            const bool sparser_tie = child_score == score[i] &&
                                     child.total_edges() < pool[i].total_edges();
            if (better || sparser_tie) {
                pool[i] = std::move(child);
                score[i] = child_score;
            }
        }
        record_best();
    }

    const std::size_t best = best_index();
    result.best = pool[best];
    result.best_threshold = score[best];
    return result;
}

} // namespace raldpc::search
