#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "raldpc/protograph.hpp"

namespace raldpc::de {

struct DeParams {
    // Sampled messages per protograph edge instance.
    std::size_t samples_per_edge = 10000;
    // Flooding iterations before a probe is declared failed.
    std::size_t max_iterations = 200;
    // A probe succeeds when every edge population's error proxy (fraction of
    // negative messages plus half the zeros) falls below this.
    double target_error = 1e-6;
    // Bisection stops when the bracket is narrower than this.
    double tolerance = 1e-3;
    std::size_t max_bisection_steps = 30;
    // Master seed; each probe derives its own stream from (seed, p), so a
    // probe's outcome does not depend on the order probes run in.
    std::uint64_t seed = 1;
};

// One density evolution run at crossover probability p: does belief
// propagation on the cycle-free ensemble of s drive the error of every edge
// message population below the target?
bool de_converges(const proto::Protograph& s, double p, const DeParams& params);

struct ThresholdReport {
    // Largest probed crossover probability that converged; 0 when none did.
    double threshold = 0.0;
    // True when the bisection bracket narrowed below tolerance within the
    // step budget.
    bool converged = false;
    std::size_t probes = 0;
    // (p, converged) in probe order.
    std::vector<std::pair<double, bool>> history;
    // Parameters the run used, kept with the result so it can be reproduced.
    DeParams params;
};

// Bisection over [0, 1/2] for the decoding threshold of the ensemble.
// Throws Unconnected when the protograph has an all-zero column.
//
// Resolution note: a probe succeeds when a finite population shows no failed
// samples, so crossover probabilities below roughly 1/samples_per_edge look
// noiseless. Ensembles whose true threshold is zero (e.g. with a degree-1
// variable type) therefore report a small positive value at that floor.
ThresholdReport threshold(const proto::Protograph& s, const DeParams& params);

std::string to_json(const ThresholdReport& report);
// Throws IoError on malformed input.
ThresholdReport report_from_json(const std::string& text);

} // namespace raldpc::de
