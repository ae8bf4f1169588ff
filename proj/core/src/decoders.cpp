#include "ppc/decoders.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

namespace ppc {

ScDecoder::ScDecoder(std::size_t code_length, MetricMode mode)
    : n_(code_length), stages_(log2_exact(code_length)), mode_(mode)
{
    level_off_.resize(stages_ + 1);
    std::size_t off = 0;
    for (std::size_t l = 0; l <= stages_; ++l) {
        level_off_[l] = off;
        off += n_ >> l;
    }
    alpha_.resize(off);
    u_.resize(n_);
}

ListCandidate ScDecoder::decode(std::span<const double> llr,
                                std::span<const std::uint8_t> frozen_mask)
{
    ListCandidate out;
    decode_into(llr, frozen_mask, out);
    return out;
}

void ScDecoder::decode_into(std::span<const double> llr,
                            std::span<const std::uint8_t> frozen_mask, ListCandidate& out)
{
    if (llr.size() != n_ || frozen_mask.size() != n_)
        throw std::invalid_argument("LLR/frozen length does not match the code length");
    std::copy(llr.begin(), llr.end(), alpha_.begin());
    std::fill(u_.begin(), u_.end(), 0);
    metric_ = 0.0;
    frozen_ = frozen_mask;

    out.x_hat.assign(n_, 0);
    recurse(0, n_, 0, out.x_hat.data());
    out.u_hat = u_;
    out.metric = metric_;
}

void ScDecoder::recurse(std::size_t level, std::size_t len, std::size_t u_base,
                        std::uint8_t* beta)
{
    if (len == 1) {
        const double a = alpha_[level_off_[level]];
        const std::uint8_t bit = frozen_[u_base] ? 0 : (a < 0.0 ? 1 : 0);
        metric_ += path_penalty(a, bit, mode_);
        u_[u_base] = bit;
        beta[0] = bit;
        return;
    }
    const std::size_t half = len / 2;
    const double* in = alpha_.data() + level_off_[level];
    double* out = alpha_.data() + level_off_[level + 1];

    for (std::size_t b = 0; b < half; ++b)
        out[b] = llr_combine_f(in[b], in[b + half], mode_);
    recurse(level + 1, half, u_base, beta);

    for (std::size_t b = 0; b < half; ++b)
        out[b] = llr_combine_g(in[b], in[b + half], beta[b]);
    recurse(level + 1, half, u_base + half, beta + half);

    for (std::size_t b = 0; b < half; ++b)
        beta[b] ^= beta[b + half];
}

SclDecoder::SclDecoder(std::size_t code_length, std::size_t list_size, MetricMode mode)
    : n_(code_length), stages_(log2_exact(code_length)), list_size_(list_size), mode_(mode)
{
    if (list_size_ < 1)
        throw std::invalid_argument("list size must be at least 1");

    llr_.resize(stages_ + 1);
    csum_.resize(stages_ + 1);
    path_slot_.resize(stages_ + 1);
    ref_count_.resize(stages_ + 1);
    free_slots_.resize(stages_ + 1);
    for (std::size_t l = 0; l <= stages_; ++l) {
        const std::size_t s = n_ >> l;
        llr_[l].assign(list_size_, std::vector<double>(s));
        csum_[l].assign(list_size_, std::vector<std::uint8_t>(2 * s));
        path_slot_[l].assign(list_size_, 0);
        ref_count_[l].assign(list_size_, 0);
    }
    active_.assign(list_size_, 0);
    metric_.assign(list_size_, 0.0);
    u_hist_.assign(list_size_, BitVector(n_));
    forks_.reserve(2 * list_size_);
}

std::size_t SclDecoder::slot_for_write(std::size_t level, std::size_t path)
{
    const std::size_t s = path_slot_[level][path];
    if (ref_count_[level][s] == 1)
        return s;
    const std::size_t fresh = free_slots_[level].back();
    free_slots_[level].pop_back();
    llr_[level][fresh] = llr_[level][s];
    csum_[level][fresh] = csum_[level][s];
    --ref_count_[level][s];
    ref_count_[level][fresh] = 1;
    path_slot_[level][path] = fresh;
    return fresh;
}

const double* SclDecoder::peek_llr(std::size_t level, std::size_t path) const
{
    return llr_[level][path_slot_[level][path]].data();
}

std::size_t SclDecoder::assign_initial_path()
{
    const std::size_t l = free_paths_.back();
    free_paths_.pop_back();
    active_[l] = 1;
    ++active_count_;
    metric_[l] = 0.0;
    for (std::size_t lev = 0; lev <= stages_; ++lev) {
        const std::size_t s = free_slots_[lev].back();
        free_slots_[lev].pop_back();
        path_slot_[lev][l] = s;
        ref_count_[lev][s] = 1;
    }
    return l;
}

std::size_t SclDecoder::clone_path(std::size_t path)
{
    const std::size_t l = free_paths_.back();
    free_paths_.pop_back();
    active_[l] = 1;
    ++active_count_;
    metric_[l] = metric_[path];
    u_hist_[l] = u_hist_[path];
    for (std::size_t lev = 0; lev <= stages_; ++lev) {
        const std::size_t s = path_slot_[lev][path];
        path_slot_[lev][l] = s;
        ++ref_count_[lev][s];
    }
    return l;
}

void SclDecoder::kill_path(std::size_t path)
{
    active_[path] = 0;
    --active_count_;
    free_paths_.push_back(path);
    for (std::size_t lev = 0; lev <= stages_; ++lev) {
        const std::size_t s = path_slot_[lev][path];
        if (--ref_count_[lev][s] == 0)
            free_slots_[lev].push_back(s);
    }
}

void SclDecoder::calc_llr(std::size_t level, std::size_t phase)
{
    if (level == 0)
        return;
    if (phase % 2 == 0)
        calc_llr(level - 1, phase / 2);

    const std::size_t s = n_ >> level;
    for (std::size_t l = 0; l < list_size_; ++l) {
        if (!active_[l])
            continue;
        const std::size_t slot = slot_for_write(level, l);
        double* out = llr_[level][slot].data();
        const std::uint8_t* left = csum_[level][slot].data();
        const double* in = peek_llr(level - 1, l);
        if (phase % 2 == 0) {
            for (std::size_t b = 0; b < s; ++b)
                out[b] = llr_combine_f(in[b], in[b + s], mode_);
        } else {
            for (std::size_t b = 0; b < s; ++b)
                out[b] = llr_combine_g(in[b], in[b + s], left[b]);
        }
    }
}

void SclDecoder::update_csums(std::size_t level, std::size_t phase)
{
    const std::size_t psi = phase / 2;
    const std::size_t s = n_ >> level;
    for (std::size_t l = 0; l < list_size_; ++l) {
        if (!active_[l])
            continue;
        const std::size_t pslot = slot_for_write(level - 1, l);
        const std::uint8_t* c = csum_[level][path_slot_[level][l]].data();
        std::uint8_t* parent = csum_[level - 1][pslot].data() + (psi % 2) * (2 * s);
        for (std::size_t b = 0; b < s; ++b) {
            parent[b] = c[b] ^ c[b + s];
            parent[b + s] = c[b + s];
        }
    }
    if (psi % 2 == 1)
        update_csums(level - 1, psi);
}

void SclDecoder::continue_frozen(std::size_t phase)
{
    for (std::size_t l = 0; l < list_size_; ++l) {
        if (!active_[l])
            continue;
        const double a = peek_llr(stages_, l)[0];
        metric_[l] += path_penalty(a, 0, mode_);
        const std::size_t slot = slot_for_write(stages_, l);
        csum_[stages_][slot][phase % 2] = 0;
        u_hist_[l][phase] = 0;
    }
}

void SclDecoder::continue_unfrozen(std::size_t phase)
{
    forks_.clear();
    for (std::size_t l = 0; l < list_size_; ++l) {
        if (!active_[l])
            continue;
        const double a = peek_llr(stages_, l)[0];
        forks_.push_back({metric_[l] + path_penalty(a, 0, mode_),
                          static_cast<std::uint32_t>(l), 0, false});
        forks_.push_back({metric_[l] + path_penalty(a, 1, mode_),
                          static_cast<std::uint32_t>(l), 1, false});
    }
    const std::size_t keep = std::min(list_size_, forks_.size());
    std::sort(forks_.begin(), forks_.end(), [](const Fork& x, const Fork& y) {
        if (x.metric != y.metric)
            return x.metric < y.metric;
        if (x.path != y.path)
            return x.path < y.path;
        return x.bit < y.bit;
    });
    for (std::size_t i = 0; i < keep; ++i)
        forks_[i].keep = true;

    struct Decision {
        bool was_active = false;
        bool keep0 = false, keep1 = false;
        double m0 = 0.0, m1 = 0.0;
    };
    std::array<Decision, 64> small;
    std::vector<Decision> large;
    Decision* dec;
    if (list_size_ <= small.size()) {
        std::fill_n(small.data(), list_size_, Decision{});
        dec = small.data();
    } else {
        large.assign(list_size_, Decision{});
        dec = large.data();
    }
    for (std::size_t l = 0; l < list_size_; ++l)
        dec[l].was_active = active_[l] != 0;
    for (const Fork& f : forks_) {
        if (f.bit == 0) {
            dec[f.path].keep0 = f.keep;
            dec[f.path].m0 = f.metric;
        } else {
            dec[f.path].keep1 = f.keep;
            dec[f.path].m1 = f.metric;
        }
    }

    for (std::size_t l = 0; l < list_size_; ++l)
        if (dec[l].was_active && !dec[l].keep0 && !dec[l].keep1)
            kill_path(l);

    auto set_decision = [&](std::size_t path, std::uint8_t bit, double m) {
        const std::size_t slot = slot_for_write(stages_, path);
        csum_[stages_][slot][phase % 2] = bit;
        u_hist_[path][phase] = bit;
        metric_[path] = m;
    };
    for (std::size_t l = 0; l < list_size_; ++l) {
        if (!dec[l].was_active)
            continue;
        if (dec[l].keep0 && dec[l].keep1) {
            const std::size_t twin = clone_path(l);
            set_decision(l, 0, dec[l].m0);
            set_decision(twin, 1, dec[l].m1);
        } else if (dec[l].keep0) {
            set_decision(l, 0, dec[l].m0);
        } else if (dec[l].keep1) {
            set_decision(l, 1, dec[l].m1);
        }
    }
}

void SclDecoder::run_phases(std::span<const double> llr,
                            std::span<const std::uint8_t> frozen_mask)
{
    if (llr.size() != n_ || frozen_mask.size() != n_)
        throw std::invalid_argument("LLR/frozen length does not match the code length");

    active_.assign(list_size_, 0);
    active_count_ = 0;
    free_paths_.clear();
    for (std::size_t l = list_size_; l-- > 0;)
        free_paths_.push_back(l);
    for (std::size_t lev = 0; lev <= stages_; ++lev) {
        free_slots_[lev].clear();
        for (std::size_t s = list_size_; s-- > 0;)
            free_slots_[lev].push_back(s);
        std::fill(ref_count_[lev].begin(), ref_count_[lev].end(), 0);
    }

    const std::size_t first = assign_initial_path();
    std::copy(llr.begin(), llr.end(), llr_[0][path_slot_[0][first]].begin());

    for (std::size_t phase = 0; phase < n_; ++phase) {
        calc_llr(stages_, phase);
        if (frozen_mask[phase])
            continue_frozen(phase);
        else
            continue_unfrozen(phase);
        if (phase % 2 == 1)
            update_csums(stages_, phase);
    }
}

std::vector<ListCandidate> SclDecoder::decode(std::span<const double> llr,
                                              std::span<const std::uint8_t> frozen_mask)
{
    std::vector<ListCandidate> out;
    decode_list(llr, frozen_mask, out);
    return out;
}

void SclDecoder::decode_list(std::span<const double> llr,
                             std::span<const std::uint8_t> frozen_mask,
                             std::vector<ListCandidate>& out)
{
    run_phases(llr, frozen_mask);

    survivor_order_.clear();
    for (std::size_t l = 0; l < list_size_; ++l)
        if (active_[l])
            survivor_order_.push_back(l);
    std::sort(survivor_order_.begin(), survivor_order_.end(),
              [&](std::size_t a, std::size_t b) {
                  if (metric_[a] != metric_[b])
                      return metric_[a] < metric_[b];
                  return a < b;
              });

    out.resize(survivor_order_.size());
    for (std::size_t i = 0; i < survivor_order_.size(); ++i) {
        const std::size_t l = survivor_order_[i];
        out[i].u_hat = u_hist_[l];
        out[i].x_hat = u_hist_[l];
        polar_transform_inplace(out[i].x_hat);
        out[i].metric = metric_[l];
    }
}

void SclDecoder::decode_best(std::span<const double> llr,
                             std::span<const std::uint8_t> frozen_mask, ListCandidate& out)
{
    run_phases(llr, frozen_mask);

    std::size_t best = list_size_;
    for (std::size_t l = 0; l < list_size_; ++l) {
        if (!active_[l])
            continue;
        if (best == list_size_ || metric_[l] < metric_[best])
            best = l;
    }
    out.u_hat = u_hist_[best];
    out.x_hat = u_hist_[best];
    polar_transform_inplace(out.x_hat);
    out.metric = metric_[best];
}

ListCandidate sc_decode(const LlrVector& y, const FrozenSet& f, MetricMode mode)
{
    if (y.size() != f.code_length)
        throw std::invalid_argument("LLR length does not match the code length");
    ScDecoder dec(f.code_length, mode);
    const auto mask = f.mask();
    return dec.decode(y, mask);
}

std::vector<ListCandidate> scl_decode(const LlrVector& y, const FrozenSet& f,
                                      std::size_t list_size, MetricMode mode)
{
    if (y.size() != f.code_length)
        throw std::invalid_argument("LLR length does not match the code length");
    SclDecoder dec(f.code_length, list_size, mode);
    const auto mask = f.mask();
    return dec.decode(y, mask);
}

void list_soft_output_into(const std::vector<ListCandidate>& candidates, double agreement,
                           std::span<double> out)
{
    if (candidates.empty())
        throw std::invalid_argument("candidate list is empty");
    if (!(agreement > 0.0))
        throw std::invalid_argument("agreement constant must be positive");
    const std::size_t n = candidates.front().x_hat.size();
    if (out.size() != n)
        throw std::invalid_argument("output length does not match the codeword length");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double m0 = kInf, m1 = kInf;
        for (const ListCandidate& c : candidates) {
            double& m = c.x_hat[i] ? m1 : m0;
            m = std::min(m, c.metric);
        }
        double v;
        if (m1 == kInf)
            v = agreement;
        else if (m0 == kInf)
            v = -agreement;
        else
            v = std::clamp(m1 - m0, -agreement, agreement);
        out[i] = v;
    }
}

SoftOutput list_soft_output(const std::vector<ListCandidate>& candidates, double agreement)
{
    if (candidates.empty())
        throw std::invalid_argument("candidate list is empty");
    SoftOutput out;
    out.lambda.resize(candidates.front().x_hat.size());
    list_soft_output_into(candidates, agreement, out.lambda);
    return out;
}

}  // namespace ppc
