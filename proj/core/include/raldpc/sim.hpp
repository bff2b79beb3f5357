#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "raldpc/codec.hpp"
#include "raldpc/gf2.hpp"
#include "raldpc/ladder.hpp"
#include "raldpc/ldpca.hpp"
#include "raldpc/rational.hpp"

namespace raldpc::sim {

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

// Wilson score interval for a binomial proportion; the default z covers 95%.
// Zero trials yield the vacuous [0, 1].
WilsonInterval wilson_interval(std::size_t errors, std::size_t trials,
                               double z = 1.959963984540054);

struct BerPoint {
    std::string code_id;
    Rational rate;
    double p = 0.0;
    // Frames actually decoded; smaller than requested when the frame-error
    // budget cut the point short.
    std::size_t frames = 0;
    std::size_t bit_errors = 0;
    std::size_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    // Wilson 95% interval on the bit error rate.
    double ci_low = 0.0;
    double ci_high = 0.0;
    // The seed this point actually used (derived from the run seed, the
    // rate and the crossover, so points are reproducible in isolation).
    std::uint64_t seed = 0;
};

struct BerConfig {
    std::size_t frames = 1000;
    // Stop a point once this many frame errors accumulate; 0 disables the
    // cutoff. Error counts stay exact because frames are tallied in order.
    std::size_t max_frame_errors = 200;
    codec::DecoderConfig decoder;
    std::uint64_t seed = 1;
    std::size_t workers = 0;
};

// Monte Carlo bit and frame error rates for one fixed code at one crossover:
// per frame, draw a source, flip it through BSC(p) for the side information,
// decode the syndrome, compare. Frame outcomes depend only on the derived
// per-frame seed, so results do not depend on the worker count.
BerPoint simulate_ber(const gf2::BinaryMatrix& h, const std::string& code_id,
                      const Rational& rate, double p, const BerConfig& config);

std::string csv_header();
std::string to_csv_row(const BerPoint& point);
void write_csv(const std::string& path, const std::vector<BerPoint>& points);

// A batch of BER points over stored ladders: every (rate, p) pair for each
// ladder, and optionally the accumulator baseline built from the same
// mother at the same row counts.
struct ExperimentSpec {
    std::vector<std::string> ladders;
    bool include_ldpca = false;
    std::vector<Rational> rates;
    std::vector<double> p_values;
    std::size_t frames = 1000;
    std::size_t max_frame_errors = 200;
    codec::DecoderConfig decoder;
    std::uint64_t seed = 1;
    std::size_t workers = 0;
};

ExperimentSpec spec_from_json(const std::string& text);
std::string to_json(const ExperimentSpec& spec);
std::vector<BerPoint> run_experiment(const ExperimentSpec& spec);

struct SweepConfig {
    std::size_t couples = 1000;
    double p = 0.05;
    codec::DecoderConfig decoder;
    std::uint64_t seed = 1;
    std::size_t workers = 0;
};

struct SweepResult {
    // Per couple: the smallest grid row count whose code recovered the
    // source exactly; couples that fail everywhere get the full mother row
    // count and a set `never` flag.
    std::vector<std::size_t> min_m;
    std::vector<std::uint8_t> never;
    std::size_t never_count = 0;
    // Mean transmitted bits per source bit, i.e. mean(min_m) / n.
    double mean_rate = 0.0;
};

// Minimal successful rate per source/side-information couple: walk the rate
// grid from the lowest rate up and stop at the first exact recovery. The
// callback must be safe to call concurrently (prebuild any cache).
SweepResult min_rate_sweep(
    const std::function<const gf2::BinaryMatrix&(std::size_t)>& matrix_at,
    const std::vector<std::size_t>& grid_ms, std::size_t n, const SweepConfig& config);

// Convenience wrappers over the ladder grid and the accumulator baseline on
// the same grid.
SweepResult min_rate_sweep(const ladder::CodeLadder& lad, const SweepConfig& config);
SweepResult min_rate_sweep(ldpca::LdpcaCode& code,
                           const std::vector<std::size_t>& grid_ms,
                           const SweepConfig& config);

struct CycleRow {
    Rational rate;
    std::size_t m = 0;
    std::size_t ladder_n4 = 0;
    std::size_t ldpca_n4 = 0;
};

// 4-cycle counts at the mother rate and every anchor rate, for the ladder
// matrices against the accumulator-merged codes of the same size.
std::vector<CycleRow> cycle_report(const ladder::CodeLadder& lad);

} // namespace raldpc::sim
