#pragma once

#include <cstddef>
#include <vector>

#include "raldpc/gf2.hpp"

namespace raldpc::codec {

struct DecoderConfig {
    std::size_t max_iterations = 100;
    // Stop as soon as the hard decision satisfies the syndrome. Turning
    // this off always runs max_iterations, which is only useful for timing.
    bool early_stop = true;
    // Messages are clamped to [-llr_clamp, llr_clamp] in both directions.
    double llr_clamp = 30.0;
};

// s = h * x over GF(2).
gf2::BitVector encode_syndrome(const gf2::BinaryMatrix& h, const gf2::BitVector& x);

// Log-likelihood ratios log P(x=0 | y) / P(x=1 | y) for side information y
// observed through a binary symmetric channel with crossover p: +|L| when
// y = 0, -|L| when y = 1, with |L| = log((1-p)/p) capped at `clamp`. p = 0
// means y is trusted completely and yields exactly +-clamp. p outside
// [0, 1/2) throws DegenerateChannel.
std::vector<double> channel_llr(const gf2::BitVector& y, double p, double clamp = 30.0);

struct DecodeResult {
    gf2::BitVector x_hat;
    // Whether x_hat reproduces the given syndrome exactly.
    bool converged = false;
    // Iterations actually run; equals max_iterations when not converged.
    std::size_t iterations = 0;
    // Final a-posteriori LLR per source bit (channel term plus all check
    // messages, unclamped).
    std::vector<double> posterior;
};

// Flooding sum-product decoder for syndrome constraints h * x = s: check
// messages carry the sign (1 - 2 s_j), so a translated problem
// (x ^ t, llr with flipped signs at t) decodes to x_hat ^ t bit for bit.
// The hard decision maps L < 0 to 1, so an exactly zero posterior reads as
// bit 0. Rows may be empty; an empty row with syndrome 1 simply never
// converges.
DecodeResult bp_decode(const gf2::BinaryMatrix& h, const gf2::BitVector& syndrome,
                       const std::vector<double>& llr, const DecoderConfig& config = {});

} // namespace raldpc::codec
