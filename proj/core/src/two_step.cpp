#include "ppc/two_step.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppc {

MismatchReport find_erroneous(const BitMatrix& x_d)
{
    const std::size_t rows = x_d.rows, cols = x_d.cols;
    BitMatrix d = x_d;
    std::vector<std::size_t> row_cnt(rows, 0), col_cnt(cols, 0);
    std::size_t total = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (d.at(r, c)) {
                ++row_cnt[r];
                ++col_cnt[c];
                ++total;
            }

    MismatchReport report;
    while (total > 0) {
        std::size_t e_r = 0, e_c = 0;
        for (std::size_t r = 1; r < rows; ++r)
            if (row_cnt[r] > row_cnt[e_r])
                e_r = r;
        for (std::size_t c = 1; c < cols; ++c)
            if (col_cnt[c] > col_cnt[e_c])
                e_c = c;
        if (row_cnt[e_r] > col_cnt[e_c]) {
            report.err_rows.push_back(e_r);
            for (std::size_t c = 0; c < cols; ++c)
                if (d.at(e_r, c)) {
                    d.at(e_r, c) = 0;
                    --col_cnt[c];
                    --total;
                }
            row_cnt[e_r] = 0;
        } else {
            report.err_cols.push_back(e_c);
            for (std::size_t r = 0; r < rows; ++r)
                if (d.at(r, e_c)) {
                    d.at(r, e_c) = 0;
                    --row_cnt[r];
                    --total;
                }
            col_cnt[e_c] = 0;
        }
    }
    std::sort(report.err_rows.begin(), report.err_rows.end());
    std::sort(report.err_cols.begin(), report.err_cols.end());
    return report;
}

void update_llrs_hd(LlrMatrix& y_rows, LlrMatrix& y_cols, const MismatchReport& report,
                    const BitMatrix& row_estimate, const BitMatrix& col_estimate,
                    double saturation)
{
    const std::size_t rows = y_rows.rows, cols = y_rows.cols;
    std::vector<std::uint8_t> row_flag(rows, 0), col_flag(cols, 0);
    for (std::size_t r : report.err_rows)
        row_flag[r] = 1;
    for (std::size_t c : report.err_cols)
        col_flag[c] = 1;

    const auto sat = [saturation](std::uint8_t bit) {
        return bit ? -saturation : saturation;
    };
    for (std::size_t r : report.err_rows)
        for (std::size_t c = 0; c < cols; ++c)
            y_rows.at(r, c) = col_flag[c] ? 0.0 : sat(col_estimate.at(r, c));
    for (std::size_t c : report.err_cols)
        for (std::size_t r = 0; r < rows; ++r)
            y_cols.at(r, c) = row_flag[r] ? 0.0 : sat(row_estimate.at(r, c));
}

std::pair<LlrMatrix, LlrMatrix> step1_sd_exchange(const LlrMatrix& lambda_rows,
                                                  const LlrMatrix& lambda_cols,
                                                  const LlrMatrix* channel, double blend)
{
    LlrMatrix y_rows = lambda_cols;
    LlrMatrix y_cols = lambda_rows;
    if (channel && blend != 0.0) {
        for (std::size_t i = 0; i < y_rows.data.size(); ++i) {
            y_rows.data[i] += blend * channel->data[i];
            y_cols.data[i] += blend * channel->data[i];
        }
    }
    return {std::move(y_rows), std::move(y_cols)};
}

TwoStepDecoder::TwoStepDecoder(const CodeSpec& spec, TwoStepConfig cfg)
    : spec_(spec), cfg_(cfg)
{
    if (!spec_.product)
        throw std::invalid_argument("code spec carries no product decomposition");
    if (cfg_.max_iterations < 1)
        throw std::invalid_argument("iteration limit must be at least 1");
    if (cfg_.list_size < 1)
        throw std::invalid_argument("list size must be at least 1");
    if (!(cfg_.saturation > 0.0))
        throw std::invalid_argument("saturation must be positive");

    const ComponentStructure& cs = *spec_.product;
    n_rows_ = cs.n_rows;
    n_cols_ = cs.n_cols;
    if (n_rows_ * n_cols_ != spec_.length)
        throw std::invalid_argument("product decomposition does not match the code length");

    row_masks_.reserve(n_rows_);
    std::size_t max_row_dim = 0;
    for (const FrozenSet& f : cs.profile.row_frozen_sets) {
        row_masks_.push_back(f.mask());
        max_row_dim = std::max(max_row_dim, f.dimension());
    }
    col_masks_.reserve(n_cols_);
    std::size_t max_col_dim = 0;
    for (const FrozenSet& f : cs.profile.col_frozen_sets) {
        col_masks_.push_back(f.mask());
        max_col_dim = std::max(max_col_dim, f.dimension());
    }
    full_mask_ = spec_.frozen.mask();

    const bool scl = cfg_.variant != TwoStepVariant::ScHd;
    if (scl) {
        scl_row_.emplace(n_cols_, cfg_.list_size, cfg_.metric_mode);
        scl_col_.emplace(n_rows_, cfg_.list_size, cfg_.metric_mode);
        scl_full_.emplace(spec_.length, cfg_.list_size, cfg_.metric_mode);
    } else {
        sc_row_.emplace(n_cols_, cfg_.metric_mode);
        sc_col_.emplace(n_rows_, cfg_.metric_mode);
        sc_full_.emplace(spec_.length, cfg_.metric_mode);
    }

    const long long d_rows =
        scl ? delta_scl_k(n_cols_, max_row_dim) : delta_sc(n_cols_);
    const long long d_cols =
        scl ? delta_scl_k(n_rows_, max_col_dim) : delta_sc(n_rows_);
    delta_full_ = scl ? delta_scl_k(spec_.length, spec_.dimension) : delta_sc(spec_.length);
    delta_step1_ = (cfg_.variant == TwoStepVariant::SclSd) ? d_rows + d_cols
                                                           : std::max(d_rows, d_cols);

    y_rows_ = LlrMatrix(n_rows_, n_cols_);
    y_cols_ = LlrMatrix(n_rows_, n_cols_);
    x_rows_ = BitMatrix(n_rows_, n_cols_);
    x_cols_ = BitMatrix(n_rows_, n_cols_);
    x_diff_ = BitMatrix(n_rows_, n_cols_);
    lam_rows_ = LlrMatrix(n_rows_, n_cols_);
    lam_cols_ = LlrMatrix(n_rows_, n_cols_);
    col_buf_.resize(n_rows_);
    lam_buf_.resize(n_rows_);
    row_todo_.resize(n_rows_);
    col_todo_.resize(n_cols_);
}

bool TwoStepDecoder::passes_frozen_check(const BitVector& u) const
{
    for (std::size_t i : spec_.frozen.indices)
        if (u[i])
            return false;
    return true;
}

TwoStepOutcome TwoStepDecoder::finish_step2(const LlrMatrix& y, std::size_t iterations,
                                            bool agreed, long long steps)
{
    TwoStepOutcome out;
    if (cfg_.variant == TwoStepVariant::ScHd) {
        sc_full_->decode_into(y.data, full_mask_, cand_);
    } else {
        scl_full_->decode_best(y.data, full_mask_, cand_);
    }
    out.u_hat = cand_.u_hat;
    out.iterations_used = iterations;
    out.step2_used = true;
    out.time_steps = steps + delta_full_;
    out.agreement_achieved = agreed;
    return out;
}

TwoStepOutcome TwoStepDecoder::decode_hd(const LlrMatrix& y)
{
    y_rows_ = y;
    y_cols_ = y;
    std::fill(row_todo_.begin(), row_todo_.end(), 1);
    std::fill(col_todo_.begin(), col_todo_.end(), 1);

    long long steps = 0;
    const bool scl = cfg_.variant != TwoStepVariant::ScHd;
    for (std::size_t iter = 1; iter <= cfg_.max_iterations; ++iter) {
        for (std::size_t i = 0; i < n_rows_; ++i) {
            if (!row_todo_[i])
                continue;
            if (scl)
                scl_row_->decode_best(y_rows_.row(i), row_masks_[i], cand_);
            else
                sc_row_->decode_into(y_rows_.row(i), row_masks_[i], cand_);
            std::copy(cand_.x_hat.begin(), cand_.x_hat.end(), x_rows_.row(i).begin());
        }
        for (std::size_t j = 0; j < n_cols_; ++j) {
            if (!col_todo_[j])
                continue;
            for (std::size_t i = 0; i < n_rows_; ++i)
                col_buf_[i] = y_cols_.at(i, j);
            if (scl)
                scl_col_->decode_best(col_buf_, col_masks_[j], cand_);
            else
                sc_col_->decode_into(col_buf_, col_masks_[j], cand_);
            for (std::size_t i = 0; i < n_rows_; ++i)
                x_cols_.at(i, j) = cand_.x_hat[i];
        }
        steps += delta_step1_;

        if (x_rows_ == x_cols_) {
            BitVector u = x_rows_.data;
            polar_transform_inplace(u);
            if (passes_frozen_check(u)) {
                TwoStepOutcome out;
                out.u_hat = std::move(u);
                out.iterations_used = iter;
                out.step2_used = false;
                out.time_steps = steps;
                out.agreement_achieved = true;
                return out;
            }
            return finish_step2(y, iter, true, steps);
        }
        if (iter == cfg_.max_iterations)
            break;

        for (std::size_t k = 0; k < x_diff_.data.size(); ++k)
            x_diff_.data[k] = x_rows_.data[k] ^ x_cols_.data[k];
        const MismatchReport report = find_erroneous(x_diff_);
        update_llrs_hd(y_rows_, y_cols_, report, x_rows_, x_cols_, cfg_.saturation);
        std::fill(row_todo_.begin(), row_todo_.end(), 0);
        std::fill(col_todo_.begin(), col_todo_.end(), 0);
        for (std::size_t r : report.err_rows)
            row_todo_[r] = 1;
        for (std::size_t c : report.err_cols)
            col_todo_[c] = 1;
    }
    return finish_step2(y, cfg_.max_iterations, false, steps);
}

TwoStepOutcome TwoStepDecoder::decode_sd(const LlrMatrix& y)
{
    y_rows_ = y;
    y_cols_ = y;
    long long steps = 0;
    for (std::size_t iter = 1; iter <= cfg_.max_iterations; ++iter) {
        for (std::size_t i = 0; i < n_rows_; ++i) {
            scl_row_->decode_list(y_rows_.row(i), row_masks_[i], list_);
            list_soft_output_into(list_, cfg_.agreement, lam_rows_.row(i));
        }
        for (std::size_t j = 0; j < n_cols_; ++j) {
            for (std::size_t i = 0; i < n_rows_; ++i)
                col_buf_[i] = y_cols_.at(i, j);
            scl_col_->decode_list(col_buf_, col_masks_[j], list_);
            list_soft_output_into(list_, cfg_.agreement, lam_buf_);
            for (std::size_t i = 0; i < n_rows_; ++i)
                lam_cols_.at(i, j) = lam_buf_[i];
        }
        steps += delta_step1_;

        bool agree = true;
        for (std::size_t k = 0; k < lam_rows_.data.size() && agree; ++k)
            agree = (lam_rows_.data[k] < 0.0) == (lam_cols_.data[k] < 0.0);
        if (agree) {
            BitVector u(spec_.length);
            for (std::size_t k = 0; k < u.size(); ++k)
                u[k] = lam_cols_.data[k] < 0.0 ? 1 : 0;
            polar_transform_inplace(u);
            if (passes_frozen_check(u)) {
                TwoStepOutcome out;
                out.u_hat = std::move(u);
                out.iterations_used = iter;
                out.step2_used = false;
                out.time_steps = steps;
                out.agreement_achieved = true;
                return out;
            }
            return finish_step2(y, iter, true, steps);
        }
        if (iter == cfg_.max_iterations)
            break;

        auto [next_rows, next_cols] =
            step1_sd_exchange(lam_rows_, lam_cols_, &y, cfg_.sd_blend);
        y_rows_ = std::move(next_rows);
        y_cols_ = std::move(next_cols);
    }
    return finish_step2(y, cfg_.max_iterations, false, steps);
}

TwoStepOutcome TwoStepDecoder::decode(const LlrMatrix& y)
{
    if (y.rows != n_rows_ || y.cols != n_cols_)
        throw std::invalid_argument("LLR matrix does not match the product decomposition");
    if (cfg_.variant == TwoStepVariant::SclSd)
        return decode_sd(y);
    return decode_hd(y);
}

TwoStepOutcome TwoStepDecoder::decode(const LlrVector& y)
{
    if (y.size() != spec_.length)
        throw std::invalid_argument("LLR length does not match the code length");
    LlrMatrix m(n_rows_, n_cols_);
    m.data = y;
    return decode(m);
}

}  // namespace ppc
