#include <benchmark/benchmark.h>

#include <cstdint>

#include "raldpc/bsc.hpp"
#include "raldpc/codec.hpp"
#include "raldpc/cycles.hpp"
#include "raldpc/density_evolution.hpp"
#include "raldpc/gf2.hpp"
#include "raldpc/peg.hpp"
#include "raldpc/protograph.hpp"
#include "raldpc/rng.hpp"

namespace {

using namespace raldpc;

proto::Protograph half_rate_base() {
    return proto::Protograph{{{1, 2, 1, 3}, {1, 0, 2, 5}}};
}

proto::Protograph optimized_4x8() {
    return proto::Protograph{{{2, 1, 1, 1, 0, 1, 1, 0},
                              {1, 2, 1, 1, 1, 0, 1, 1},
                              {1, 1, 2, 1, 1, 1, 0, 1},
                              {1, 1, 1, 2, 1, 1, 1, 0}}};
}

void BM_peg_lift(benchmark::State& state) {
    const auto s = optimized_4x8();
    const auto z = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(graph::peg_lift(s, z, seed++));
    }
}
BENCHMARK(BM_peg_lift)->Arg(16)->Arg(64);

void BM_count_4cycles(benchmark::State& state) {
    const auto z = static_cast<std::size_t>(state.range(0));
    const auto h = graph::peg_lift(optimized_4x8(), z, 3).matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(graph::count_4cycles(h));
    }
}
BENCHMARK(BM_count_4cycles)->Arg(16)->Arg(64);

// One decoded frame at a crossover comfortably inside the decoding region,
// so the timing reflects the typical early-stopped iteration count.
void BM_bp_decode(benchmark::State& state) {
    const auto h = graph::peg_lift(half_rate_base(), 32, 5).matrix();
    const double p = 0.04;
    const BscChannel channel(p);
    const codec::DecoderConfig config;
    std::uint64_t frame = 0;
    for (auto _ : state) {
        state.PauseTiming();
        Rng rng(derive_seed(1234, frame++));
        gf2::BitVector x(h.cols());
        for (auto& bit : x) bit = rng.next_bit();
        auto y = x;
        const auto flips = channel.flip_vector(h.cols(), rng);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] ^= flips[i];
        const auto syndrome = codec::encode_syndrome(h, x);
        const auto llr = codec::channel_llr(y, p, config.llr_clamp);
        state.ResumeTiming();
        benchmark::DoNotOptimize(codec::bp_decode(h, syndrome, llr, config));
    }
}
BENCHMARK(BM_bp_decode);

// A single density evolution probe near the ensemble threshold dominates the
// cost of the protograph search; track it at search-grade sample counts.
void BM_de_probe(benchmark::State& state) {
    const auto s = half_rate_base();
    de::DeParams params;
    params.samples_per_edge = static_cast<std::size_t>(state.range(0));
    params.max_iterations = 100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(de::de_converges(s, 0.08, params));
    }
}
BENCHMARK(BM_de_probe)->Arg(1000)->Arg(5000);

} // namespace

BENCHMARK_MAIN();
