#include "raldpc/codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "raldpc/errors.hpp"

namespace raldpc::codec {

gf2::BitVector encode_syndrome(const gf2::BinaryMatrix& h, const gf2::BitVector& x) {
    return gf2::mat_vec_gf2(h, x);
}

std::vector<double> channel_llr(const gf2::BitVector& y, double p, double clamp) {
    if (!(p >= 0.0) || p >= 0.5) {
        throw DegenerateChannel("channel_llr: crossover " + std::to_string(p) +
                                " outside [0, 1/2)");
    }
    const double magnitude = p == 0.0 ? clamp : std::min(std::log((1.0 - p) / p), clamp);
    std::vector<double> llr(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        llr[i] = y[i] & 1u ? -magnitude : magnitude;
    }
    return llr;
}

DecodeResult bp_decode(const gf2::BinaryMatrix& h, const gf2::BitVector& syndrome,
                       const std::vector<double>& llr, const DecoderConfig& config) {
    if (syndrome.size() != h.rows()) {
        throw std::invalid_argument("bp_decode: syndrome length does not match rows");
    }
    if (llr.size() != h.cols()) {
        throw std::invalid_argument("bp_decode: llr length does not match columns");
    }
    const std::size_t rows = h.rows();
    const std::size_t cols = h.cols();
    const double cap = config.llr_clamp;
    // Largest representable tanh value below 1; an empty or single-edge
    // product then maps through atanh to a large finite value, which the
    // clamp below turns into full confidence.
    const double tanh_cap = std::nextafter(1.0, 0.0);

    // Row-major edge ids: edges of row j occupy [row_ptr[j], row_ptr[j+1]).
    std::vector<std::size_t> row_ptr(rows + 1, 0);
    for (std::size_t j = 0; j < rows; ++j) {
        row_ptr[j + 1] = row_ptr[j] + h.row_support(j).size();
    }
    const std::size_t edges = row_ptr[rows];
    std::vector<std::vector<std::size_t>> var_edges(cols);
    {
        std::size_t e = 0;
        for (std::size_t j = 0; j < rows; ++j) {
            for (std::size_t c : h.row_support(j)) var_edges[c].push_back(e++);
        }
    }

    std::vector<double> sign(rows);
    for (std::size_t j = 0; j < rows; ++j) sign[j] = syndrome[j] & 1u ? -1.0 : 1.0;

    std::vector<double> v2c(edges);
    {
        std::size_t e = 0;
        for (std::size_t j = 0; j < rows; ++j) {
            for (std::size_t c : h.row_support(j)) {
                v2c[e++] = std::clamp(llr[c], -cap, cap);
            }
        }
    }
    std::vector<double> c2v(edges, 0.0);

    DecodeResult result;
    result.x_hat.assign(cols, 0);
    result.posterior.assign(cols, 0.0);

    std::size_t max_degree = 0;
    for (std::size_t j = 0; j < rows; ++j) {
        max_degree = std::max(max_degree, row_ptr[j + 1] - row_ptr[j]);
    }
    std::vector<double> tanhs(max_degree), suffix(max_degree);

    bool satisfied = false;
    std::size_t used = config.max_iterations;
    for (std::size_t iter = 1; iter <= config.max_iterations; ++iter) {
        // Check pass: exclusive tanh products via prefix * suffix.
        for (std::size_t j = 0; j < rows; ++j) {
            const std::size_t begin = row_ptr[j];
            const std::size_t degree = row_ptr[j + 1] - begin;
            if (degree == 0) continue;
            for (std::size_t i = 0; i < degree; ++i) {
                tanhs[i] = std::tanh(0.5 * v2c[begin + i]);
            }
            suffix[degree - 1] = 1.0;
            for (std::size_t i = degree - 1; i > 0; --i) {
                suffix[i - 1] = suffix[i] * tanhs[i];
            }
            double prefix = 1.0;
            for (std::size_t i = 0; i < degree; ++i) {
                const double prod =
                    std::clamp(prefix * suffix[i], -tanh_cap, tanh_cap);
                c2v[begin + i] =
                    std::clamp(sign[j] * 2.0 * std::atanh(prod), -cap, cap);
                prefix *= tanhs[i];
            }
        }
        // Variable pass: posterior and exclusive sums back to the checks.
        for (std::size_t c = 0; c < cols; ++c) {
            double total = llr[c];
            for (std::size_t e : var_edges[c]) total += c2v[e];
            result.posterior[c] = total;
            result.x_hat[c] = total < 0.0 ? 1 : 0;
            for (std::size_t e : var_edges[c]) {
                v2c[e] = std::clamp(total - c2v[e], -cap, cap);
            }
        }
        satisfied = true;
        for (std::size_t j = 0; j < rows && satisfied; ++j) {
            gf2::Bit parity = 0;
            for (std::size_t c : h.row_support(j)) parity ^= result.x_hat[c];
            if (parity != (syndrome[j] & 1u)) satisfied = false;
        }
        if (satisfied && config.early_stop) {
            used = iter;
            break;
        }
    }
    result.converged = satisfied;
    result.iterations = used;
    return result;
}

} // namespace raldpc::codec
