#include "raldpc/ladder.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

#include "raldpc/alist.hpp"
#include "raldpc/errors.hpp"
#include "raldpc/rng.hpp"
#include "raldpc/version.hpp"

namespace raldpc::ladder {

namespace {

std::pair<std::size_t, std::size_t> merged_types(const proto::Protograph& s_int) {
    for (std::size_t r = 0; r < s_int.rows(); ++r) {
        std::vector<std::size_t> ones;
        for (std::size_t c = 0; c < s_int.cols(); ++c) {
            if (s_int.at(r, c) != 0) ones.push_back(c);
        }
        if (ones.size() == 2) return {ones[0], ones[1]};
    }
    throw std::invalid_argument("merged_types: combining protograph has no degree-2 row");
}

// Merged pair first, surviving types ascending. proto_circle then emits the
// combined rows as the leading block, which makes the endpoint of the
// one-merge-at-a-time replay equal to the anchor matrix row for row.
proto::Protograph canonical_one_merge(std::size_t types,
                                      std::pair<std::size_t, std::size_t> tp) {
    std::vector<std::vector<int>> rows;
    rows.emplace_back(types, 0);
    rows.back()[tp.first] = 1;
    rows.back()[tp.second] = 1;
    for (std::size_t j = 0; j < types; ++j) {
        if (j == tp.first || j == tp.second) continue;
        rows.emplace_back(types, 0);
        rows.back()[j] = 1;
    }
    return proto::Protograph(rows);
}

} // namespace

LadderPlan plan_ladder(const proto::Protograph& s1, const de::DeParams& de_params) {
    LadderPlan plan;
    plan.s1 = s1;
    proto::Protograph current = s1;
    while (current.rows() > 1) {
        const auto family = enum_intermediate_protos(current.rows(), current.rows() - 1);
        auto choice = select_intermediate_proto(current, family, de_params);
        PlanStep step;
        step.type_pair = merged_types(choice.s_int);
        step.s_int = canonical_one_merge(current.rows(), step.type_pair);
        step.s = proto::proto_product(step.s_int, current);
        step.threshold = choice.report.threshold;
        step.evaluations = choice.evaluations;
        current = step.s;
        plan.steps.push_back(std::move(step));
    }
    return plan;
}

CodeLadder::CodeLadder(Parts parts) : parts_(std::move(parts)) {
    const auto& mother = parts_.mother.matrix();
    if (mother.rows() == 0 || mother.cols() == 0) {
        throw std::invalid_argument("CodeLadder: empty mother matrix");
    }
    if (parts_.s1.rows() != parts_.mother.base_rows() ||
        parts_.s1.cols() != parts_.mother.base_cols()) {
        throw std::invalid_argument("CodeLadder: s1 shape does not match the mother lift");
    }
    const std::size_t m1_ = mother.rows();
    const std::size_t n_ = mother.cols();
    if (parts_.steps.size() >= m1_) {
        throw std::invalid_argument("CodeLadder: more merge steps than mother rows");
    }

    // Each step drops exactly one row; the new combined row lands at the end
    // of the current anchor segment's combined prefix. Precompute that
    // position per step from the anchor boundaries.
    insert_pos_.assign(parts_.steps.size(), 0);
    {
        std::size_t segment_start = m1_;
        std::size_t ai = 0;
        for (std::size_t i = 0; i < parts_.steps.size(); ++i) {
            const std::size_t m_before = m1_ - i;
            while (ai < parts_.anchors.size() && parts_.anchors[ai].m >= m_before) {
                segment_start = parts_.anchors[ai].m;
                ++ai;
            }
            insert_pos_[i] = segment_start - m_before;
        }
    }

    const gf2::BinaryMatrix* prev = &mother;
    for (std::size_t i = 0; i < parts_.steps.size(); ++i) {
        const auto& step = parts_.steps[i];
        const std::size_t m_before = m1_ - i;
        if (step.m_before != m_before) {
            throw std::invalid_argument("CodeLadder: step " + std::to_string(i) +
                                        " expected m_before " + std::to_string(m_before));
        }
        if (step.after.rows() != m_before - 1 || step.after.cols() != n_) {
            throw std::invalid_argument("CodeLadder: step " + std::to_string(i) +
                                        " has the wrong shape");
        }
        const auto [a, b] = step.pair;
        const std::size_t q = insert_pos_[i];
        if (a < q || a >= b || b >= m_before || q >= m_before - 1) {
            throw std::invalid_argument("CodeLadder: step " + std::to_string(i) +
                                        " merges invalid row positions");
        }
        // Replay the merge and demand equality: combined prefix unchanged,
        // xor of the parents inserted at q, remaining rows in order.
        const auto merged = gf2::xor_support(prev->row_support(a), prev->row_support(b));
        bool ok = step.after.row_support(q) == merged;
        std::size_t dst = 0;
        for (std::size_t p = 0; p < m_before && ok; ++p) {
            if (p == a || p == b) continue;
            const std::size_t at = dst < q ? dst : dst + 1;
            if (step.after.row_support(at) != prev->row_support(p)) ok = false;
            ++dst;
        }
        if (!ok) {
            throw std::invalid_argument("CodeLadder: step " + std::to_string(i) +
                                        " is not the single merge it claims to be");
        }
        prev = &step.after;
    }

    std::size_t prev_m = m1_;
    for (std::size_t t = 0; t < parts_.anchors.size(); ++t) {
        const auto& anchor = parts_.anchors[t];
        if (anchor.m >= prev_m || anchor.m < m_min()) {
            throw std::invalid_argument("CodeLadder: anchor " + std::to_string(t) +
                                        " row count off the grid");
        }
        if (anchor.rate != Rational(static_cast<std::int64_t>(anchor.m),
                                    static_cast<std::int64_t>(n_))) {
            throw std::invalid_argument("CodeLadder: anchor " + std::to_string(t) +
                                        " rate does not equal m/n");
        }
        if (!(anchor.h.matrix() == matrix_at(anchor.m))) {
            throw std::invalid_argument("CodeLadder: anchor " + std::to_string(t) +
                                        " matrix differs from the fine-step grid");
        }
        const auto& prev_matrix = t == 0 ? mother : parts_.anchors[t - 1].h.matrix();
        if (anchor.h_int.rows() != anchor.m || anchor.h_int.cols() != prev_m ||
            !(gf2::mul_gf2(anchor.h_int.matrix(), prev_matrix) == anchor.h.matrix())) {
            throw std::invalid_argument("CodeLadder: anchor " + std::to_string(t) +
                                        " combiner does not map onto its matrix");
        }
        if (anchor.cprime.size() != prev_m - anchor.m) {
            throw std::invalid_argument("CodeLadder: anchor " + std::to_string(t) +
                                        " index set has the wrong size");
        }
        for (std::size_t c : anchor.cprime) {
            if (c >= prev_m) {
                throw std::invalid_argument("CodeLadder: anchor " + std::to_string(t) +
                                            " index set out of range");
            }
        }
        prev_m = anchor.m;
    }
}

Rational CodeLadder::rate_at(std::size_t m) const {
    if (m < m_min() || m > m1()) {
        throw RateOffGrid("rate_at: " + std::to_string(m) + " rows is outside [" +
                          std::to_string(m_min()) + ", " + std::to_string(m1()) + "]");
    }
    return Rational(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n()));
}

std::size_t CodeLadder::rate_to_m(const Rational& rate) const {
    const std::int64_t n_ = static_cast<std::int64_t>(n());
    if (rate.num > 0 && (rate.num * n_) % rate.den == 0) {
        const std::int64_t m = rate.num * n_ / rate.den;
        if (m >= static_cast<std::int64_t>(m_min()) && m <= static_cast<std::int64_t>(m1())) {
            return static_cast<std::size_t>(m);
        }
    }
    throw RateOffGrid("rate " + rate.str() + " is not m/" + std::to_string(n_) +
                      " for any m in [" + std::to_string(m_min()) + ", " +
                      std::to_string(m1()) + "]");
}

std::vector<Rational> CodeLadder::grid() const {
    std::vector<Rational> rates;
    rates.reserve(m1() - m_min() + 1);
    for (std::size_t m = m1(); m >= m_min() && m > 0; --m) rates.push_back(rate_at(m));
    return rates;
}

const gf2::BinaryMatrix& CodeLadder::matrix_at(std::size_t m) const {
    if (m == m1()) return parts_.mother.matrix();
    if (m < m_min() || m > m1()) {
        throw RateOffGrid("matrix_at: " + std::to_string(m) + " rows is outside [" +
                          std::to_string(m_min()) + ", " + std::to_string(m1()) + "]");
    }
    return parts_.steps[m1() - m - 1].after;
}

gf2::BitVector CodeLadder::extract_increment(const Rational& rate,
                                             const gf2::BitVector& x) const {
    if (x.size() != n()) {
        throw std::invalid_argument("extract_increment: source length does not match n");
    }
    const std::size_t target = rate_to_m(rate);
    auto out = gf2::mat_vec_gf2(matrix_at(m_min()), x);
    out.reserve(target);
    for (std::size_t m = m_min() + 1; m <= target; ++m) {
        const auto& step = parts_.steps[m1() - m];
        gf2::Bit bit = 0;
        for (std::size_t c : matrix_at(m).row_support(step.pair.first)) bit ^= x[c] & 1u;
        out.push_back(bit);
    }
    return out;
}

gf2::BitVector CodeLadder::reconstruct(const Rational& rate,
                                       const gf2::BitVector& bits) const {
    const std::size_t target = rate_to_m(rate);
    if (bits.size() != target) {
        throw std::invalid_argument("reconstruct: expected " + std::to_string(target) +
                                    " bits, got " + std::to_string(bits.size()));
    }
    gf2::BitVector s(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(m_min()));
    for (std::size_t m = m_min() + 1; m <= target; ++m) {
        const std::size_t i = m1() - m;
        const auto [a, b] = parts_.steps[i].pair;
        const std::size_t q = insert_pos_[i];
        const gf2::Bit bit = bits[m - 1];
        // s holds the syndrome of matrix_at(m - 1); row q there is the sum
        // of rows a and b of matrix_at(m), whose syndrome we produce next.
        gf2::BitVector next(m);
        for (std::size_t p = 0; p < q; ++p) next[p] = s[p];
        next[a] = bit;
        next[b] = s[q] ^ bit;
        std::size_t src = q + 1;
        for (std::size_t p = q; p < m; ++p) {
            if (p == a || p == b) continue;
            next[p] = s[src++];
        }
        s = std::move(next);
    }
    return s;
}

CodeLadder build_with_plan(const graph::TypedMatrix& h1, const LadderPlan& plan,
                           std::size_t k, std::size_t repeats, std::uint64_t seed,
                           std::size_t workers) {
    if (h1.realized_protograph() != plan.s1) {
        throw NotTypeConsistent("build_with_plan: mother does not realize the planned protograph");
    }
    const std::size_t z = h1.z();
    CodeLadder::Parts parts;
    parts.mother = h1;
    parts.s1 = plan.s1;
    parts.seed = seed;
    parts.k = k;
    parts.repeats = repeats;

    graph::TypedMatrix current = h1;
    std::size_t cur_m = h1.matrix().rows();
    for (std::size_t t = 0; t < plan.steps.size(); ++t) {
        const auto& step = plan.steps[t];
        auto result = proto_circle(current, step.s_int, k, repeats,
                                   derive_seed(seed, t), workers);
        auto chain = chain_from_pairs(current.matrix(), result.pairs, z);
        if (!(chain.matrices.back() == result.h2.matrix())) {
            throw Error("build_with_plan: merge replay does not reach anchor " +
                        std::to_string(t));
        }
        auto cprime = build_cprime(result.h_int);
        if (!verify_rate_adaptive(current.matrix(), result.h_int.matrix(), cprime,
                                  derive_seed(seed, 0xACCE55 + t))) {
            throw Error("build_with_plan: rate-adaptive check failed at anchor " +
                        std::to_string(t));
        }
        for (std::size_t j = 0; j < z; ++j) {
            FineStep fine;
            fine.m_before = cur_m - j;
            fine.pair = chain.pairs[j];
            fine.after = std::move(chain.matrices[j]);
            parts.steps.push_back(std::move(fine));
        }
        Anchor anchor;
        anchor.m = cur_m - z;
        anchor.rate = Rational(static_cast<std::int64_t>(anchor.m),
                               static_cast<std::int64_t>(h1.matrix().cols()));
        anchor.s_int = step.s_int;
        anchor.s = step.s;
        anchor.type_pair = step.type_pair;
        anchor.h_int = std::move(result.h_int);
        anchor.h = std::move(result.h2);
        anchor.cprime = std::move(cprime);
        anchor.n4 = result.n4;
        anchor.threshold = step.threshold;
        parts.anchors.push_back(std::move(anchor));
        current = parts.anchors.back().h;
        cur_m -= z;
    }
    return CodeLadder(std::move(parts));
}

CodeLadder build_ladder(const graph::TypedMatrix& h1, const proto::Protograph& s1,
                        std::size_t k, std::size_t repeats, std::uint64_t seed,
                        const de::DeParams& de_params, std::size_t workers) {
    return build_with_plan(h1, plan_ladder(s1, de_params), k, repeats, seed, workers);
}

namespace {

using nlohmann::json;

json proto_entries(const proto::Protograph& s) { return json(s.entries()); }

proto::Protograph proto_from_entries(const json& j) {
    return proto::Protograph(j.get<std::vector<std::vector<int>>>());
}

} // namespace

void save_ladder(const std::string& dir, const CodeLadder& ladder) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("save_ladder: cannot create " + dir + ": " + ec.message());

    json manifest;
    manifest["version"] = kVersion;
    manifest["seed"] = ladder.seed();
    manifest["k"] = ladder.k();
    manifest["repeats"] = ladder.repeats();
    manifest["z"] = ladder.mother().z();
    manifest["n"] = ladder.n();
    manifest["m1"] = ladder.m1();
    manifest["m_min"] = ladder.m_min();
    manifest["s1"] = proto_entries(ladder.s1());
    manifest["mother"] = "mother.alist";
    io::write_alist_file(dir + "/mother.alist", ladder.mother().matrix());

    manifest["anchors"] = json::array();
    for (std::size_t t = 0; t < ladder.anchors().size(); ++t) {
        const auto& anchor = ladder.anchors()[t];
        const std::string stem = "anchor_" + std::to_string(t + 2);
        io::write_alist_file(dir + "/" + stem + ".alist", anchor.h.matrix());
        io::write_alist_file(dir + "/" + stem + "_combiner.alist", anchor.h_int.matrix());
        json entry;
        entry["m"] = anchor.m;
        entry["rate"] = {{"num", anchor.rate.num}, {"den", anchor.rate.den}};
        entry["s_int"] = proto_entries(anchor.s_int);
        entry["s"] = proto_entries(anchor.s);
        entry["type_pair"] = {anchor.type_pair.first, anchor.type_pair.second};
        entry["h"] = stem + ".alist";
        entry["h_int"] = stem + "_combiner.alist";
        entry["cprime"] = anchor.cprime;
        entry["n4"] = anchor.n4;
        entry["threshold"] = anchor.threshold;
        manifest["anchors"].push_back(std::move(entry));
    }

    manifest["steps"] = json::array();
    for (const auto& step : ladder.steps()) {
        const std::string file = "m_" + std::to_string(step.m_before - 1) + ".alist";
        io::write_alist_file(dir + "/" + file, step.after);
        json entry;
        entry["m_before"] = step.m_before;
        entry["pair"] = {step.pair.first, step.pair.second};
        entry["after"] = file;
        manifest["steps"].push_back(std::move(entry));
    }

    std::ofstream out(dir + "/manifest.json");
    if (!out) throw IoError("save_ladder: cannot write " + dir + "/manifest.json");
    out << manifest.dump(2) << "\n";
    if (!out) throw IoError("save_ladder: write failed for " + dir + "/manifest.json");
}

CodeLadder load_ladder(const std::string& dir) {
    std::ifstream in(dir + "/manifest.json");
    if (!in) throw IoError("load_ladder: cannot open " + dir + "/manifest.json");
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception& e) {
        throw IoError("load_ladder: bad manifest: " + std::string(e.what()));
    }
    try {
        CodeLadder::Parts parts;
        parts.seed = manifest.at("seed").get<std::uint64_t>();
        parts.k = manifest.at("k").get<std::size_t>();
        parts.repeats = manifest.at("repeats").get<std::size_t>();
        parts.s1 = proto_from_entries(manifest.at("s1"));
        const auto z = manifest.at("z").get<std::size_t>();
        parts.mother = graph::TypedMatrix(
            io::read_alist_file(dir + "/" + manifest.at("mother").get<std::string>()),
            parts.s1.rows(), parts.s1.cols(), z);
        for (const auto& entry : manifest.at("anchors")) {
            Anchor anchor;
            anchor.m = entry.at("m").get<std::size_t>();
            anchor.rate = Rational(entry.at("rate").at("num").get<std::int64_t>(),
                                   entry.at("rate").at("den").get<std::int64_t>());
            anchor.s_int = proto_from_entries(entry.at("s_int"));
            anchor.s = proto_from_entries(entry.at("s"));
            const auto pair = entry.at("type_pair").get<std::vector<std::size_t>>();
            if (pair.size() != 2) throw IoError("load_ladder: bad type_pair");
            anchor.type_pair = {pair[0], pair[1]};
            anchor.h_int = IntermediateMatrix(
                io::read_alist_file(dir + "/" + entry.at("h_int").get<std::string>()),
                anchor.s_int, z);
            anchor.h = graph::TypedMatrix(
                io::read_alist_file(dir + "/" + entry.at("h").get<std::string>()),
                anchor.s.rows(), anchor.s.cols(), z);
            anchor.cprime = entry.at("cprime").get<std::vector<std::size_t>>();
            anchor.n4 = entry.at("n4").get<std::size_t>();
            anchor.threshold = entry.at("threshold").get<double>();
            parts.anchors.push_back(std::move(anchor));
        }
        for (const auto& entry : manifest.at("steps")) {
            FineStep step;
            step.m_before = entry.at("m_before").get<std::size_t>();
            const auto pair = entry.at("pair").get<std::vector<std::size_t>>();
            if (pair.size() != 2) throw IoError("load_ladder: bad step pair");
            step.pair = {pair[0], pair[1]};
            step.after = io::read_alist_file(dir + "/" + entry.at("after").get<std::string>());
            parts.steps.push_back(std::move(step));
        }
        return CodeLadder(std::move(parts));
    } catch (const IoError&) {
        throw;
    } catch (const json::exception& e) {
        throw IoError("load_ladder: bad manifest: " + std::string(e.what()));
    } catch (const std::exception& e) {
        throw IoError("load_ladder: inconsistent artifacts in " + dir + ": " + e.what());
    }
}

} // namespace raldpc::ladder
