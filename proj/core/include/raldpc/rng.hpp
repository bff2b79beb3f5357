#pragma once

#include <cstdint>
#include <vector>

namespace raldpc {

// splitmix64 step. Used both as the seed-derivation hash and as the core of
// Rng below, so every random choice in the library is reproducible across
// platforms (std::mt19937 would be fine, but the std distributions are
// implementation-defined and we promise bit-identical artifacts).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4a2ca9f6cc2edULL;
    return z ^ (z >> 31);
}

// Derive a child seed from a parent seed and a stream index. Distinct
// (seed, stream) pairs give statistically independent child streams; the same
// pair always gives the same child. This is how per-frame / per-probe seeds
// are made so that results do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

// Small deterministic generator. All sampling helpers are hand-rolled on top
// of splitmix64 output for cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t next_index(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    bool next_bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
};

// In-place Fisher-Yates shuffle.
template <class T>
void fisher_yates(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_index(i));
        std::swap(v[i - 1], v[j]);
    }
}

// Identity permutation 0..n-1, then shuffled.
inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    fisher_yates(p, rng);
    return p;
}

} // namespace raldpc
