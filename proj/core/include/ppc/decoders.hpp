#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ppc/bits.hpp"
#include "ppc/frozen.hpp"

namespace ppc {

/// Channel and decision log-likelihood ratios, convention
/// llr = log(P(bit=0) / P(bit=1)); nonnegative values decide 0.
using LlrVector = std::vector<double>;

/// Check-node / path-penalty arithmetic.
/// MinSum pairs the min-sum check update with the magnitude penalty a
/// hardware decoder would use; Exact pairs the exact log-domain update with
/// the log1p penalty, under which a complete path's metric equals the
/// codeword's negative log-likelihood up to a constant.
enum class MetricMode { MinSum, Exact };

inline double llr_combine_f(double a, double b, MetricMode mode)
{
    const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    const double mag = std::min(std::abs(a), std::abs(b));
    if (mode == MetricMode::MinSum)
        return sign * mag;
    return sign * mag + std::log1p(std::exp(-std::abs(a + b))) -
           std::log1p(std::exp(-std::abs(a - b)));
}

inline double llr_combine_g(double a, double b, std::uint8_t left_bit)
{
    return left_bit ? b - a : b + a;
}

/// Penalty added to a path metric for deciding `bit` against decision LLR
/// `llr`.
inline double path_penalty(double llr, std::uint8_t bit, MetricMode mode)
{
    const double delta = bit ? -llr : llr;
    if (mode == MetricMode::MinSum)
        return delta < 0.0 ? -delta : 0.0;
    // softplus(-delta), stable for large |delta|
    return delta > 0.0 ? std::log1p(std::exp(-delta)) : -delta + std::log1p(std::exp(delta));
}

/// One surviving decoding path: input estimate (zeros on frozen positions),
/// re-encoded codeword, and accumulated path metric.
struct ListCandidate {
    BitVector u_hat;
    BitVector x_hat;
    double metric = 0.0;
};

/// Per-codeword-bit soft output derived from a candidate list.
struct SoftOutput {
    std::vector<double> lambda;
};

/// Successive cancellation decoder. One instance serves one codeword at a
/// time; instances are independent and hold their own scratch.
class ScDecoder {
public:
    explicit ScDecoder(std::size_t code_length, MetricMode mode = MetricMode::MinSum);

    /// frozen_mask[i] == 1 marks a frozen position.
    ListCandidate decode(std::span<const double> llr, std::span<const std::uint8_t> frozen_mask);

    /// Same, reusing the caller's candidate storage.
    void decode_into(std::span<const double> llr, std::span<const std::uint8_t> frozen_mask,
                     ListCandidate& out);

    std::size_t code_length() const { return n_; }

private:
    void recurse(std::size_t level, std::size_t len, std::size_t u_base, std::uint8_t* beta);

    std::size_t n_;
    std::size_t stages_;
    MetricMode mode_;
    std::vector<double> alpha_;            // per-level scratch, 2N doubles
    std::vector<std::size_t> level_off_;
    std::span<const std::uint8_t> frozen_;
    BitVector u_;
    double metric_ = 0.0;
};

/// Successive cancellation list decoder with lazy-copied per-level state.
class SclDecoder {
public:
    SclDecoder(std::size_t code_length, std::size_t list_size,
               MetricMode mode = MetricMode::MinSum);

    /// Returns all surviving paths sorted by ascending metric.
    std::vector<ListCandidate> decode(std::span<const double> llr,
                                      std::span<const std::uint8_t> frozen_mask);

    /// Same, reusing the caller's candidate storage.
    void decode_list(std::span<const double> llr, std::span<const std::uint8_t> frozen_mask,
                     std::vector<ListCandidate>& out);

    /// Lowest-metric survivor only; skips re-encoding the rest.
    void decode_best(std::span<const double> llr, std::span<const std::uint8_t> frozen_mask,
                     ListCandidate& out);

    std::size_t code_length() const { return n_; }
    std::size_t list_size() const { return list_size_; }

private:
    void run_phases(std::span<const double> llr, std::span<const std::uint8_t> frozen_mask);
    std::size_t slot_for_write(std::size_t level, std::size_t path);
    const double* peek_llr(std::size_t level, std::size_t path) const;
    std::size_t assign_initial_path();
    std::size_t clone_path(std::size_t path);
    void kill_path(std::size_t path);
    void calc_llr(std::size_t level, std::size_t phase);
    void update_csums(std::size_t level, std::size_t phase);
    void continue_frozen(std::size_t phase);
    void continue_unfrozen(std::size_t phase);

    std::size_t n_;
    std::size_t stages_;
    std::size_t list_size_;
    MetricMode mode_;

    // Indexed [level][slot]; level l nodes span n >> l positions.
    std::vector<std::vector<std::vector<double>>> llr_;
    std::vector<std::vector<std::vector<std::uint8_t>>> csum_;
    std::vector<std::vector<std::size_t>> path_slot_;
    std::vector<std::vector<std::size_t>> ref_count_;
    std::vector<std::vector<std::size_t>> free_slots_;

    std::vector<std::uint8_t> active_;
    std::vector<double> metric_;
    std::vector<BitVector> u_hist_;
    std::vector<std::size_t> free_paths_;
    std::size_t active_count_ = 0;

    struct Fork {
        double metric;
        std::uint32_t path;
        std::uint8_t bit;
        bool keep;
    };
    std::vector<Fork> forks_;
    std::vector<std::size_t> survivor_order_;
};

/// Convenience single-shot wrappers.
ListCandidate sc_decode(const LlrVector& y, const FrozenSet& f,
                        MetricMode mode = MetricMode::MinSum);
std::vector<ListCandidate> scl_decode(const LlrVector& y, const FrozenSet& f,
                                      std::size_t list_size,
                                      MetricMode mode = MetricMode::MinSum);

/// Per-bit soft output from a metric-sorted candidate list: the path-metric
/// difference between the best candidates deciding 1 and 0 for that bit,
/// clamped to [-agreement, agreement]; +/-agreement where all candidates
/// agree.
SoftOutput list_soft_output(const std::vector<ListCandidate>& candidates, double agreement);

/// Writes the soft output into caller storage of matching length.
void list_soft_output_into(const std::vector<ListCandidate>& candidates, double agreement,
                           std::span<double> out);

}  // namespace ppc
