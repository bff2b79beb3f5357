#include "raldpc/bsc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "raldpc/errors.hpp"

namespace raldpc {

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0 || std::isnan(p)) {
        throw std::invalid_argument("binary_entropy: p must be in [0, 1]");
    }
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

BscChannel::BscChannel(double p) : p_(p) {
    if (!(p > 0.0) || !(p < 0.5)) {
        throw DegenerateChannel("BscChannel: p = " + std::to_string(p) +
                                " outside (0, 0.5)");
    }
    llr_ = std::log((1.0 - p) / p);
}

gf2::BitVector BscChannel::flip_vector(std::size_t n, Rng& rng) const {
    gf2::BitVector v(n);
    for (auto& bit : v) bit = flip_sample(rng);
    return v;
}

} // namespace raldpc
