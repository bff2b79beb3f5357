#include "raldpc/density_evolution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "raldpc/bsc.hpp"
#include "raldpc/errors.hpp"
#include "raldpc/rng.hpp"

namespace raldpc::de {

namespace {

constexpr double kLlrClamp = 30.0;

double clamp_llr(double v) { return std::clamp(v, -kLlrClamp, kLlrClamp); }

std::uint64_t probe_seed(std::uint64_t seed, double p) {
    return derive_seed(seed, std::bit_cast<std::uint64_t>(p));
}

// Message populations are tracked per protograph edge instance: an entry
// s_ij contributes s_ij separate instances. Each update draws independent
// alignments between populations (fresh shuffles), which realizes the
// cycle-free ensemble assumption without building any graph.
struct EdgeList {
    struct Edge {
        std::size_t row;
        std::size_t col;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> row_edges;
    std::vector<std::vector<std::size_t>> col_edges;

    explicit EdgeList(const proto::Protograph& s)
        : row_edges(s.rows()), col_edges(s.cols()) {
        for (std::size_t i = 0; i < s.rows(); ++i) {
            for (std::size_t j = 0; j < s.cols(); ++j) {
                for (int k = 0; k < s.at(i, j); ++k) {
                    row_edges[i].push_back(edges.size());
                    col_edges[j].push_back(edges.size());
                    edges.push_back({i, j});
                }
            }
        }
    }
};

} // namespace

bool de_converges(const proto::Protograph& s, double p, const DeParams& params) {
    if (params.samples_per_edge == 0) {
        throw std::invalid_argument("de_converges: samples_per_edge must be positive");
    }
    if (s.has_zero_column()) {
        throw Unconnected("de_converges: protograph has an all-zero column");
    }
    const BscChannel channel(p);
    const double mag = channel.llr_magnitude();
    const std::size_t n = params.samples_per_edge;

    EdgeList graph(s);
    const std::size_t e_total = graph.edges.size();
    Rng rng(probe_seed(params.seed, p));

    auto channel_sample = [&]() { return channel.flip_sample(rng) ? -mag : mag; };

    std::vector<std::vector<double>> v2c(e_total, std::vector<double>(n));
    std::vector<std::vector<double>> c2v(e_total, std::vector<double>(n, 0.0));
    for (auto& population : v2c) {
        for (auto& msg : population) msg = channel_sample();
    }

    std::vector<std::vector<std::size_t>> perm(e_total);
    auto reshuffle = [&](const std::vector<std::size_t>& edge_ids) {
        for (std::size_t e : edge_ids) perm[e] = random_permutation(n, rng);
    };

    std::vector<double> tanh_in, fwd, bwd, gathered;
    for (std::size_t iter = 0; iter < params.max_iterations; ++iter) {
        // Check-side update: per sample, exclusion products in the tanh
        // domain via forward and backward partial products.
        for (std::size_t i = 0; i < graph.row_edges.size(); ++i) {
            const auto& ids = graph.row_edges[i];
            const std::size_t d = ids.size();
            if (d == 0) continue;
            reshuffle(ids);
            tanh_in.resize(d);
            fwd.assign(d + 1, 1.0);
            bwd.assign(d + 1, 1.0);
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t a = 0; a < d; ++a) {
                    tanh_in[a] = std::tanh(0.5 * v2c[ids[a]][perm[ids[a]][k]]);
                }
                for (std::size_t a = 0; a < d; ++a) fwd[a + 1] = fwd[a] * tanh_in[a];
                bwd[d] = 1.0;
                for (std::size_t a = d; a-- > 0;) bwd[a] = tanh_in[a] * bwd[a + 1];
                for (std::size_t a = 0; a < d; ++a) {
                    c2v[ids[a]][k] = clamp_llr(2.0 * std::atanh(fwd[a] * bwd[a + 1]));
                }
            }
        }

        // Variable-side update: fresh channel draw plus exclusion by
        // subtraction over freshly aligned check messages.
        bool all_converged = true;
        for (std::size_t j = 0; j < graph.col_edges.size(); ++j) {
            const auto& ids = graph.col_edges[j];
            const std::size_t d = ids.size();
            reshuffle(ids);
            gathered.resize(d);
            std::vector<std::size_t> bad(d, 0);
            for (std::size_t k = 0; k < n; ++k) {
                double total = channel_sample();
                for (std::size_t a = 0; a < d; ++a) {
                    gathered[a] = c2v[ids[a]][perm[ids[a]][k]];
                    total += gathered[a];
                }
                for (std::size_t a = 0; a < d; ++a) {
                    const double msg = clamp_llr(total - gathered[a]);
                    v2c[ids[a]][k] = msg;
                    if (msg < 0.0) {
                        bad[a] += 2;
                    } else if (msg == 0.0) {
                        bad[a] += 1;
                    }
                }
            }
            for (std::size_t a = 0; a < d; ++a) {
                const double err = static_cast<double>(bad[a]) / (2.0 * static_cast<double>(n));
                if (err >= params.target_error) all_converged = false;
            }
        }
        if (all_converged) return true;
    }
    return false;
}

ThresholdReport threshold(const proto::Protograph& s, const DeParams& params) {
    if (s.has_zero_column()) {
        throw Unconnected("threshold: protograph has an all-zero column");
    }
    ThresholdReport report;
    report.params = params;
    double lo = 0.0;
    double hi = 0.5;
    for (std::size_t step = 0; step < params.max_bisection_steps; ++step) {
        if (hi - lo <= params.tolerance) break;
        const double mid = 0.5 * (lo + hi);
        const bool ok = de_converges(s, mid, params);
        report.history.emplace_back(mid, ok);
        ++report.probes;
        if (ok) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    report.threshold = lo;
    report.converged = hi - lo <= params.tolerance;
    return report;
}

std::string to_json(const ThresholdReport& report) {
    nlohmann::json j;
    j["threshold"] = report.threshold;
    j["converged"] = report.converged;
    j["probes"] = report.probes;
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [p, ok] : report.history) {
        hist.push_back({{"p", p}, {"ok", ok}});
    }
    j["history"] = std::move(hist);
    j["params"] = {{"samples_per_edge", report.params.samples_per_edge},
                   {"max_iterations", report.params.max_iterations},
                   {"target_error", report.params.target_error},
                   {"tolerance", report.params.tolerance},
                   {"max_bisection_steps", report.params.max_bisection_steps},
                   {"seed", report.params.seed}};
    return j.dump(2) + "\n";
}

ThresholdReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("threshold report JSON: ") + e.what());
    }
    ThresholdReport report;
    try {
        report.threshold = j.at("threshold").get<double>();
        report.converged = j.at("converged").get<bool>();
        report.probes = j.at("probes").get<std::size_t>();
        for (const auto& entry : j.at("history")) {
            report.history.emplace_back(entry.at("p").get<double>(),
                                        entry.at("ok").get<bool>());
        }
        const auto& p = j.at("params");
        report.params.samples_per_edge = p.at("samples_per_edge").get<std::size_t>();
        report.params.max_iterations = p.at("max_iterations").get<std::size_t>();
        report.params.target_error = p.at("target_error").get<double>();
        report.params.tolerance = p.at("tolerance").get<double>();
        report.params.max_bisection_steps =
            p.at("max_bisection_steps").get<std::size_t>();
        report.params.seed = p.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("threshold report JSON: ") + e.what());
    }
    return report;
}

} // namespace raldpc::de
