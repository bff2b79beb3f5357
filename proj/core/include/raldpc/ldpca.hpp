#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "raldpc/gf2.hpp"

namespace raldpc::ldpca {

// Running prefix parity: out[j] = s[0] ^ ... ^ s[j]. Rate adaptation then
// reduces to transmitting a subset of these bits, since any range parity of
// s is the difference of two accumulated bits.
gf2::BitVector accumulate(const gf2::BitVector& s);
// Inverse of accumulate.
gf2::BitVector unaccumulate(const gf2::BitVector& a);

struct Transmission {
    // 1-based positions into the accumulated stream, strictly ascending,
    // ending at the stream length.
    std::vector<std::size_t> indices;
    gf2::BitVector values;
};

// The target_m accumulated bits sent at rate target_m / n: positions
// round(k * m1 / target_m) for k = 1..target_m.
std::vector<std::size_t> transmit_indices(std::size_t m1, std::size_t target_m);
Transmission transmit(const gf2::BitVector& accumulated, std::size_t target_m);

// Code the receiver decodes against at target_m: row k is the XOR of the
// mother rows between consecutive transmitted positions. Opposite rows can
// cancel completely, so zero rows are allowed (such a row just pins one
// parity of the source with no graph support).
gf2::BinaryMatrix merged_code(const gf2::BinaryMatrix& h1, std::size_t target_m);

// Syndrome of merged_code(h1, target_m) recovered from the transmitted
// accumulated bits alone: consecutive differences.
gf2::BitVector merged_syndrome(const Transmission& t);

// Mother code plus a cache of merged codes, built on first use per rate.
class LdpcaCode {
public:
    LdpcaCode() = default;
    explicit LdpcaCode(gf2::BinaryMatrix h1);

    const gf2::BinaryMatrix& mother() const { return h1_; }
    std::size_t m1() const { return h1_.rows(); }
    std::size_t n() const { return h1_.cols(); }

    const gf2::BinaryMatrix& code_at(std::size_t target_m);

    // Encoder side: syndrome, accumulate, pick the transmitted subset.
    Transmission extract(std::size_t target_m, const gf2::BitVector& x) const;

private:
    gf2::BinaryMatrix h1_;
    std::map<std::size_t, gf2::BinaryMatrix> cache_;
};

} // namespace raldpc::ldpca
