#include "raldpc/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "raldpc/bsc.hpp"
#include "raldpc/cycles.hpp"
#include "raldpc/errors.hpp"
#include "raldpc/parallel.hpp"
#include "raldpc/rng.hpp"

namespace raldpc::sim {

WilsonInterval wilson_interval(std::size_t errors, std::size_t trials, double z) {
    if (trials == 0) return {};
    const double t = static_cast<double>(trials);
    const double phat = static_cast<double>(errors) / t;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / t;
    const double center = (phat + z2 / (2.0 * t)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / t + z2 / (4.0 * t * t)) / denom;
    // The bound touching an observed extreme is exactly the extreme; keep
    // it free of rounding dust.
    const double low = errors == 0 ? 0.0 : std::max(0.0, center - half);
    const double high = errors == trials ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

namespace {

std::uint64_t point_seed(std::uint64_t base, const Rational& rate, double p) {
    const auto rate_key = (static_cast<std::uint64_t>(rate.num) << 32) ^
                          static_cast<std::uint64_t>(rate.den);
    return derive_seed(derive_seed(base, rate_key), std::bit_cast<std::uint64_t>(p));
}

struct FrameOutcome {
    std::uint32_t bit_errors = 0;
    bool exact = false;
};

FrameOutcome run_frame(const gf2::BinaryMatrix& h, const BscChannel& channel,
                       double p, const codec::DecoderConfig& decoder,
                       std::uint64_t frame_seed) {
    Rng rng(frame_seed);
    const std::size_t n = h.cols();
    gf2::BitVector x(n);
    for (auto& bit : x) bit = rng.next_bit();
    auto y = x;
    const auto flips = channel.flip_vector(n, rng);
    for (std::size_t i = 0; i < n; ++i) y[i] ^= flips[i];
    const auto s = gf2::mat_vec_gf2(h, x);
    const auto result =
        codec::bp_decode(h, s, codec::channel_llr(y, p, decoder.llr_clamp), decoder);
    FrameOutcome outcome;
    for (std::size_t i = 0; i < n; ++i) {
        outcome.bit_errors += result.x_hat[i] != x[i];
    }
    outcome.exact = outcome.bit_errors == 0;
    return outcome;
}

} // namespace

BerPoint simulate_ber(const gf2::BinaryMatrix& h, const std::string& code_id,
                      const Rational& rate, double p, const BerConfig& config) {
    if (h.rows() == 0 || h.cols() == 0) {
        throw std::invalid_argument("simulate_ber: empty matrix");
    }
    const BscChannel channel(p);
    BerPoint point;
    point.code_id = code_id;
    point.rate = rate;
    point.p = p;
    point.seed = point_seed(config.seed, rate, p);

    constexpr std::size_t kBatch = 512;
    std::vector<FrameOutcome> outcomes;
    bool stop = false;
    while (!stop && point.frames < config.frames) {
        const std::size_t count = std::min(kBatch, config.frames - point.frames);
        const std::size_t first = point.frames;
        outcomes.assign(count, {});
        parallel_for(count, static_cast<unsigned>(config.workers), [&](std::size_t i) {
            outcomes[i] = run_frame(h, channel, p, config.decoder,
                                    derive_seed(point.seed, first + i));
        });
        // Tally in frame order so the cutoff lands on the same frame no
        // matter how many workers ran the batch.
        for (std::size_t i = 0; i < count; ++i) {
            ++point.frames;
            point.bit_errors += outcomes[i].bit_errors;
            point.frame_errors += outcomes[i].exact ? 0 : 1;
            if (config.max_frame_errors != 0 &&
                point.frame_errors >= config.max_frame_errors) {
                stop = true;
                break;
            }
        }
    }
    const std::size_t bits = point.frames * h.cols();
    point.ber = bits == 0 ? 0.0 : static_cast<double>(point.bit_errors) / bits;
    point.fer = point.frames == 0
                    ? 0.0
                    : static_cast<double>(point.frame_errors) / point.frames;
    const auto ci = wilson_interval(point.bit_errors, bits);
    point.ci_low = ci.low;
    point.ci_high = ci.high;
    return point;
}

std::string csv_header() {
    return "code_id,rate_num,rate_den,p,frames,bit_errors,frame_errors,ber,fer,"
           "ci_low,ci_high,seed";
}

std::string to_csv_row(const BerPoint& point) {
    std::ostringstream out;
    out << std::setprecision(10);
    out << point.code_id << ',' << point.rate.num << ',' << point.rate.den << ','
        << point.p << ',' << point.frames << ',' << point.bit_errors << ','
        << point.frame_errors << ',' << point.ber << ',' << point.fer << ','
        << point.ci_low << ',' << point.ci_high << ',' << point.seed;
    return out.str();
}

void write_csv(const std::string& path, const std::vector<BerPoint>& points) {
    std::ofstream out(path);
    if (!out) throw IoError("write_csv: cannot open " + path);
    out << csv_header() << "\n";
    for (const auto& point : points) out << to_csv_row(point) << "\n";
    if (!out) throw IoError("write_csv: write failed for " + path);
}

ExperimentSpec spec_from_json(const std::string& text) {
    using nlohmann::json;
    try {
        const json j = json::parse(text);
        ExperimentSpec spec;
        spec.ladders = j.value("ladders", std::vector<std::string>{});
        spec.include_ldpca = j.value("include_ldpca", false);
        for (const auto& r : j.value("rates", std::vector<std::string>{})) {
            spec.rates.push_back(parse_rational(r));
        }
        spec.p_values = j.value("p_values", std::vector<double>{});
        spec.frames = j.value("frames", std::size_t{1000});
        spec.max_frame_errors = j.value("max_frame_errors", std::size_t{200});
        if (j.contains("decoder")) {
            const auto& d = j.at("decoder");
            spec.decoder.max_iterations =
                d.value("max_iterations", spec.decoder.max_iterations);
            spec.decoder.early_stop = d.value("early_stop", spec.decoder.early_stop);
            spec.decoder.llr_clamp = d.value("llr_clamp", spec.decoder.llr_clamp);
        }
        spec.seed = j.value("seed", std::uint64_t{1});
        spec.workers = j.value("workers", std::size_t{0});
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("spec_from_json: " + std::string(e.what()));
    } catch (const std::invalid_argument& e) {
        throw IoError("spec_from_json: " + std::string(e.what()));
    }
}

std::string to_json(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["ladders"] = spec.ladders;
    j["include_ldpca"] = spec.include_ldpca;
    std::vector<std::string> rates;
    for (const auto& r : spec.rates) rates.push_back(r.str());
    j["rates"] = rates;
    j["p_values"] = spec.p_values;
    j["frames"] = spec.frames;
    j["max_frame_errors"] = spec.max_frame_errors;
    j["decoder"] = {{"max_iterations", spec.decoder.max_iterations},
                    {"early_stop", spec.decoder.early_stop},
                    {"llr_clamp", spec.decoder.llr_clamp}};
    j["seed"] = spec.seed;
    j["workers"] = spec.workers;
    return j.dump(2);
}

namespace {

std::string dir_label(const std::string& dir) {
    std::string trimmed = dir;
    while (trimmed.size() > 1 && trimmed.back() == '/') trimmed.pop_back();
    const auto name = std::filesystem::path(trimmed).filename().string();
    return name.empty() ? trimmed : name;
}

} // namespace

std::vector<BerPoint> run_experiment(const ExperimentSpec& spec) {
    std::vector<BerPoint> points;
    BerConfig config;
    config.frames = spec.frames;
    config.max_frame_errors = spec.max_frame_errors;
    config.decoder = spec.decoder;
    config.seed = spec.seed;
    config.workers = spec.workers;
    for (const auto& dir : spec.ladders) {
        const auto lad = ladder::load_ladder(dir);
        const auto label = dir_label(dir);
        ldpca::LdpcaCode baseline(lad.mother().matrix());
        for (const auto& rate : spec.rates) {
            const std::size_t m = lad.rate_to_m(rate);
            for (double p : spec.p_values) {
                points.push_back(
                    simulate_ber(lad.matrix_at(m), label + ":ladder", rate, p, config));
                if (spec.include_ldpca) {
                    points.push_back(simulate_ber(baseline.code_at(m), label + ":ldpca",
                                                  rate, p, config));
                }
            }
        }
    }
    return points;
}

SweepResult min_rate_sweep(
    const std::function<const gf2::BinaryMatrix&(std::size_t)>& matrix_at,
    const std::vector<std::size_t>& grid_ms, std::size_t n, const SweepConfig& config) {
    if (grid_ms.empty() || !std::is_sorted(grid_ms.begin(), grid_ms.end()) ||
        std::adjacent_find(grid_ms.begin(), grid_ms.end()) != grid_ms.end()) {
        throw std::invalid_argument("min_rate_sweep: grid must be ascending and unique");
    }
    const BscChannel channel(config.p);
    SweepResult result;
    result.min_m.assign(config.couples, 0);
    result.never.assign(config.couples, 0);
    const std::uint64_t sweep_seed =
        derive_seed(config.seed, std::bit_cast<std::uint64_t>(config.p));
    parallel_for(config.couples, static_cast<unsigned>(config.workers),
                 [&](std::size_t couple) {
        Rng rng(derive_seed(sweep_seed, couple));
        gf2::BitVector x(n);
        for (auto& bit : x) bit = rng.next_bit();
        auto y = x;
        const auto flips = channel.flip_vector(n, rng);
        for (std::size_t i = 0; i < n; ++i) y[i] ^= flips[i];
        const auto llr = codec::channel_llr(y, config.p, config.decoder.llr_clamp);
        for (std::size_t m : grid_ms) {
            const auto& h = matrix_at(m);
            const auto decoded =
                codec::bp_decode(h, gf2::mat_vec_gf2(h, x), llr, config.decoder);
            if (decoded.x_hat == x) {
                result.min_m[couple] = m;
                return;
            }
        }
        result.min_m[couple] = grid_ms.back();
        result.never[couple] = 1;
    });
    std::size_t total = 0;
    for (std::size_t couple = 0; couple < config.couples; ++couple) {
        total += result.min_m[couple];
        result.never_count += result.never[couple];
    }
    result.mean_rate = config.couples == 0
                           ? 0.0
                           : static_cast<double>(total) /
                                 (static_cast<double>(config.couples) *
                                  static_cast<double>(n));
    return result;
}

SweepResult min_rate_sweep(const ladder::CodeLadder& lad, const SweepConfig& config) {
    std::vector<std::size_t> grid_ms;
    for (std::size_t m = lad.m_min(); m <= lad.m1(); ++m) grid_ms.push_back(m);
    return min_rate_sweep([&lad](std::size_t m) -> const gf2::BinaryMatrix& {
        return lad.matrix_at(m);
    }, grid_ms, lad.n(), config);
}

SweepResult min_rate_sweep(ldpca::LdpcaCode& code,
                           const std::vector<std::size_t>& grid_ms,
                           const SweepConfig& config) {
    // Materialize every merged code first; concurrent lookups below then
    // never mutate the cache.
    for (std::size_t m : grid_ms) code.code_at(m);
    return min_rate_sweep([&code](std::size_t m) -> const gf2::BinaryMatrix& {
        return code.code_at(m);
    }, grid_ms, code.n(), config);
}

std::vector<CycleRow> cycle_report(const ladder::CodeLadder& lad) {
    std::vector<CycleRow> rows;
    const std::size_t mother_n4 = graph::count_4cycles(lad.mother().matrix());
    rows.push_back({lad.rate_at(lad.m1()), lad.m1(), mother_n4, mother_n4});
    for (const auto& anchor : lad.anchors()) {
        rows.push_back({anchor.rate, anchor.m, anchor.n4,
                        graph::count_4cycles(ldpca::merged_code(lad.mother().matrix(),
                                                                anchor.m))});
    }
    return rows;
}

} // namespace raldpc::sim
