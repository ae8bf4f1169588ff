#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ppc/bits.hpp"
#include "ppc/construction.hpp"
#include "ppc/decoders.hpp"
#include "ppc/latency.hpp"

namespace ppc {

/// Row-major matrix of LLRs; the working state of product decoding.
struct LlrMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    LlrMatrix() = default;
    LlrMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

    bool operator==(const LlrMatrix&) const = default;
};

enum class TwoStepVariant { ScHd, SclHd, SclSd };

struct TwoStepConfig {
    TwoStepVariant variant = TwoStepVariant::ScHd;
    std::size_t max_iterations = 4;  // t
    std::size_t list_size = 8;       // L, SCL variants only
    double saturation = 1000.0;      // stands in for +/- infinity
    double agreement = 1000.0;       // soft-output consensus magnitude
    bool frozen_check = true;        // re-encode check on the full frozen set
    double sd_blend = 0.0;           // 0 = pure substitution on SD exchange
    MetricMode metric_mode = MetricMode::MinSum;
};

struct TwoStepOutcome {
    BitVector u_hat;
    std::size_t iterations_used = 0;
    bool step2_used = false;
    long long time_steps = 0;
    bool agreement_achieved = false;
};

/// Rows and columns flagged as incorrectly decoded, ascending.
struct MismatchReport {
    std::vector<std::size_t> err_rows;
    std::vector<std::size_t> err_cols;

    bool empty() const { return err_rows.empty() && err_cols.empty(); }
    bool operator==(const MismatchReport&) const = default;
};

/// Greedy localization of wrong rows/columns from the disagreement matrix
/// x_d: repeatedly flags the line with the most mismatches (column on ties)
/// and removes its contribution, until every mismatch lies on a flagged
/// line.
MismatchReport find_erroneous(const BitMatrix& x_d);

/// Hard-decision LLR update. Flagged rows of y_rows are pinned to the column
/// decoders' estimates (col_estimate) at saturation magnitude, except at
/// flagged-column intersections, which become erasures (LLR 0); flagged
/// columns of y_cols are updated symmetrically from row_estimate. Unflagged
/// lines are untouched.
void update_llrs_hd(LlrMatrix& y_rows, LlrMatrix& y_cols, const MismatchReport& report,
                    const BitMatrix& row_estimate, const BitMatrix& col_estimate,
                    double saturation);

/// Soft-decision exchange: the row decoders' soft output becomes the next
/// column-decoder input and vice versa. A nonzero blend adds that fraction
/// of the original channel LLRs back in.
std::pair<LlrMatrix, LlrMatrix> step1_sd_exchange(const LlrMatrix& lambda_rows,
                                                  const LlrMatrix& lambda_cols,
                                                  const LlrMatrix* channel = nullptr,
                                                  double blend = 0.0);

/// Two-step decoder: up to t product-decoding iterations over the component
/// codes, then a full-length SC/SCL pass on the original LLRs if the row and
/// column estimates never agree (or the re-encode check rejects the
/// agreement).
class TwoStepDecoder {
public:
    TwoStepDecoder(const CodeSpec& spec, TwoStepConfig cfg);

    TwoStepOutcome decode(const LlrMatrix& y);
    TwoStepOutcome decode(const LlrVector& y);

    const CodeSpec& spec() const { return spec_; }
    const TwoStepConfig& config() const { return cfg_; }

    /// Time steps charged per step-1 iteration and for a step-2 pass.
    long long step1_delta() const { return delta_step1_; }
    long long step2_delta() const { return delta_full_; }

private:
    TwoStepOutcome decode_hd(const LlrMatrix& y);
    TwoStepOutcome decode_sd(const LlrMatrix& y);
    TwoStepOutcome finish_step2(const LlrMatrix& y, std::size_t iterations, bool agreed,
                                long long steps);
    bool passes_frozen_check(const BitVector& u) const;

    CodeSpec spec_;
    TwoStepConfig cfg_;
    std::size_t n_rows_ = 0;  // N_c
    std::size_t n_cols_ = 0;  // N_r

    std::vector<std::vector<std::uint8_t>> row_masks_;
    std::vector<std::vector<std::uint8_t>> col_masks_;
    std::vector<std::uint8_t> full_mask_;

    std::optional<ScDecoder> sc_row_, sc_col_, sc_full_;
    std::optional<SclDecoder> scl_row_, scl_col_, scl_full_;

    long long delta_step1_ = 0;
    long long delta_full_ = 0;

    // per-decode scratch
    LlrMatrix y_rows_, y_cols_;
    BitMatrix x_rows_, x_cols_, x_diff_;
    LlrMatrix lam_rows_, lam_cols_;
    std::vector<double> col_buf_;
    std::vector<std::uint8_t> row_todo_, col_todo_;
    ListCandidate cand_;
    std::vector<ListCandidate> list_;
    std::vector<double> lam_buf_;
};

}  // namespace ppc
