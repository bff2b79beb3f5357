#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "raldpc/bsc.hpp"
#include "raldpc/errors.hpp"

using namespace raldpc;

TEST_CASE("binary_entropy has the textbook values") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK(binary_entropy(0.11) == doctest::Approx(0.499916).epsilon(1e-4));
    CHECK(binary_entropy(0.25) == doctest::Approx(0.811278).epsilon(1e-4));
    CHECK(binary_entropy(0.3) == binary_entropy(0.7));
    CHECK(binary_entropy(0.1) < binary_entropy(0.2));
    CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(1.1), std::invalid_argument);
}

TEST_CASE("BscChannel validates the crossover probability") {
    CHECK_THROWS_AS(BscChannel(0.0), DegenerateChannel);
    CHECK_THROWS_AS(BscChannel(0.5), DegenerateChannel);
    CHECK_THROWS_AS(BscChannel(-0.2), DegenerateChannel);
    CHECK_THROWS_AS(BscChannel(0.7), DegenerateChannel);
    CHECK_NOTHROW(BscChannel(1e-6));
    CHECK_NOTHROW(BscChannel(0.499));
}

TEST_CASE("BscChannel log-likelihood ratios") {
    BscChannel ch(0.1);
    CHECK(ch.llr_magnitude() == doctest::Approx(std::log(9.0)));
    CHECK(ch.llr_for(0) == doctest::Approx(std::log(9.0)));
    CHECK(ch.llr_for(1) == doctest::Approx(-std::log(9.0)));
    // Noisier channel, weaker evidence.
    CHECK(BscChannel(0.4).llr_magnitude() < ch.llr_magnitude());
}

TEST_CASE("flip_vector is deterministic per seed with the right statistics") {
    BscChannel ch(0.1);
    Rng a(42), b(42), c(43);
    auto va = ch.flip_vector(100000, a);
    auto vb = ch.flip_vector(100000, b);
    CHECK(va == vb);
    CHECK(va != ch.flip_vector(100000, c));
    std::size_t ones = 0;
    for (auto bit : va) ones += bit;
    const double rate = static_cast<double>(ones) / static_cast<double>(va.size());
    CHECK(rate == doctest::Approx(0.1).epsilon(0.05));
}
