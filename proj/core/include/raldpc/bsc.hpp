#pragma once

#include <cstddef>

#include "raldpc/gf2.hpp"
#include "raldpc/rng.hpp"

namespace raldpc {

// Shannon entropy of a Bernoulli(p) bit, in bits. Defined on [0, 1] with the
// usual convention H(0) = H(1) = 0.
double binary_entropy(double p);

// Correlation model between the source and the decoder's side information:
// the side information is the source with each bit flipped independently
// with probability p. Requires 0 < p < 1/2; the endpoints make the
// log-likelihood ratio infinite or identically zero.
class BscChannel {
public:
    explicit BscChannel(double p);

    double p() const { return p_; }

    // ln((1-p)/p), the magnitude of every intrinsic log-likelihood ratio.
    double llr_magnitude() const { return llr_; }

    // Intrinsic LLR of one source bit given the corresponding side
    // information bit: positive when they agree on 0.
    double llr_for(gf2::Bit side_info_bit) const {
        return side_info_bit ? -llr_ : llr_;
    }

    gf2::Bit flip_sample(Rng& rng) const { return rng.next_bernoulli(p_) ? 1 : 0; }

    gf2::BitVector flip_vector(std::size_t n, Rng& rng) const;

private:
    double p_;
    double llr_;
};

} // namespace raldpc
