#pragma once

// Reference implementations kept independent of the library's hot paths:
// dense Kronecker-power encoders and a brute-force maximum-likelihood
// decoder. Test-only.

#include <cstdint>
#include <limits>
#include <vector>

#include "ppc/bits.hpp"
#include "ppc/decoders.hpp"
#include "ppc/frozen.hpp"

namespace oracle {

/// T_N built by explicit Kronecker squaring of [[1,0],[1,1]].
inline ppc::BitMatrix dense_transform(std::size_t n_len)
{
    ppc::BitMatrix t(1, 1);
    t.at(0, 0) = 1;
    while (t.rows < n_len) {
        const std::size_t m = t.rows;
        ppc::BitMatrix next(2 * m, 2 * m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                if (t.at(r, c)) {
                    next.at(r, c) = 1;
                    next.at(m + r, c) = 1;
                    next.at(m + r, m + c) = 1;
                }
        t = std::move(next);
    }
    return t;
}

/// x = u * T_N by explicit matrix-vector multiplication over GF(2).
inline ppc::BitVector dense_encode(const ppc::BitVector& u)
{
    const std::size_t n = u.size();
    const ppc::BitMatrix t = dense_transform(n);
    ppc::BitVector x(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        std::uint8_t acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            acc ^= u[i] & t.at(i, j);
        x[j] = acc;
    }
    return x;
}

/// X = T_{Nc}^T * U * T_{Nr} by explicit triple matrix product.
inline ppc::BitMatrix dense_product_encode(const ppc::BitMatrix& u)
{
    const std::size_t rows = u.rows, cols = u.cols;
    const ppc::BitMatrix t_r = dense_transform(cols);
    const ppc::BitMatrix t_c = dense_transform(rows);

    ppc::BitMatrix mid(rows, cols);  // U * T_{Nr}
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            std::uint8_t acc = 0;
            for (std::size_t k = 0; k < cols; ++k)
                acc ^= u.at(r, k) & t_r.at(k, c);
            mid.at(r, c) = acc;
        }
    ppc::BitMatrix x(rows, cols);  // T_{Nc}^T * mid
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            std::uint8_t acc = 0;
            for (std::size_t k = 0; k < rows; ++k)
                acc ^= t_c.at(k, r) & mid.at(k, c);
            x.at(r, c) = acc;
        }
    return x;
}

/// Exact-metric cost of deciding codeword x against channel LLRs y.
inline double codeword_cost(const ppc::BitVector& x, const ppc::LlrVector& y)
{
    double m = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        m += ppc::path_penalty(y[j], x[j], ppc::MetricMode::Exact);
    return m;
}

/// Brute-force ML decoding: the codeword minimizing the exact path metric
/// over all 2^K inputs. Ties resolve to the first input in counting order.
inline ppc::ListCandidate ml_decode(const ppc::LlrVector& y, const ppc::FrozenSet& f)
{
    const std::size_t n = f.code_length;
    const std::size_t k = f.dimension();
    std::vector<std::size_t> info_pos;
    for (std::size_t i = 0; i < n; ++i)
        if (!f.contains(i))
            info_pos.push_back(i);

    ppc::ListCandidate best;
    best.metric = std::numeric_limits<double>::infinity();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
        ppc::BitVector u(n, 0);
        for (std::size_t i = 0; i < k; ++i)
            u[info_pos[i]] = (bits >> i) & 1;
        ppc::BitVector x = ppc::polar_encode(u);
        const double m = codeword_cost(x, y);
        if (m < best.metric) {
            best.u_hat = u;
            best.x_hat = x;
            best.metric = m;
        }
    }
    return best;
}

/// Direct per-bit evaluation of the list soft-output rule.
inline std::vector<double> direct_soft_output(const std::vector<ppc::ListCandidate>& cands,
                                              double agreement)
{
    const std::size_t n = cands.front().x_hat.size();
    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool any0 = false, any1 = false;
        double m0 = std::numeric_limits<double>::infinity();
        double m1 = m0;
        for (const auto& c : cands) {
            if (c.x_hat[i]) {
                any1 = true;
                m1 = std::min(m1, c.metric);
            } else {
                any0 = true;
                m0 = std::min(m0, c.metric);
            }
        }
        if (!any1)
            lambda[i] = agreement;
        else if (!any0)
            lambda[i] = -agreement;
        else {
            double v = m1 - m0;
            if (v > agreement)
                v = agreement;
            if (v < -agreement)
                v = -agreement;
            lambda[i] = v;
        }
    }
    return lambda;
}

}  // namespace oracle
