#include "ppc/construction.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ppc {

namespace {

/// Dense T_N = T_2^{otimes n} as a row-major bit matrix.
BitMatrix kernel_power(std::size_t n_len)
{
    BitMatrix t(1, 1);
    t.at(0, 0) = 1;
    while (t.rows < n_len) {
        const std::size_t m = t.rows;
        BitMatrix next(2 * m, 2 * m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) {
                const std::uint8_t v = t.at(r, c);
                next.at(r, c) = v;
                next.at(m + r, c) = v;
                next.at(m + r, m + c) = v;
            }
        t = std::move(next);
    }
    return t;
}

}  // namespace

std::vector<double> bhattacharyya_parameters(std::size_t n_len, double z0)
{
    if (!is_power_of_two(n_len))
        throw std::invalid_argument("code length must be a power of two");
    if (!(z0 > 0.0 && z0 < 1.0))
        throw std::invalid_argument("initial Bhattacharyya value must lie in (0,1)");

    std::vector<double> z(n_len, z0);
    for (std::size_t half = n_len / 2; half >= 1; half /= 2) {
        for (std::size_t base = 0; base < n_len; base += 2 * half) {
            for (std::size_t j = base; j < base + half; ++j) {
                const double v = z[j];
                z[j] = 2.0 * v - v * v;
                z[j + half] = v * v;
            }
        }
    }
    return z;
}

ReliabilityOrder bhattacharyya_order(std::size_t n_len, double design_parameter)
{
    const auto z = bhattacharyya_parameters(n_len, design_parameter);
    ReliabilityOrder order;
    order.code_length = n_len;
    order.design_parameter = design_parameter;
    order.order.resize(n_len);
    std::iota(order.order.begin(), order.order.end(), std::size_t{0});
    std::stable_sort(order.order.begin(), order.order.end(),
                     [&](std::size_t a, std::size_t b) { return z[a] > z[b]; });
    return order;
}

FrozenSet frozen_from_order(const ReliabilityOrder& order, std::size_t k)
{
    if (k > order.code_length)
        throw std::invalid_argument("dimension exceeds code length");
    std::vector<std::size_t> idx(order.order.begin(),
                                 order.order.begin() + (order.code_length - k));
    return FrozenSet(order.code_length, std::move(idx));
}

FrozenSet product_frozen_set(const FrozenSet& f_r, const FrozenSet& f_c)
{
    const auto z_r = f_r.indicator();
    const auto z_c = f_c.indicator();
    std::vector<std::uint8_t> z(z_r.size() * z_c.size());
    for (std::size_t i = 0; i < z_c.size(); ++i)
        for (std::size_t j = 0; j < z_r.size(); ++j)
            z[i * z_r.size() + j] = z_c[i] & z_r[j];
    return FrozenSet::from_indicator(z);
}

UnfrozenCounts unfrozen_counts(const FrozenSet& f, std::size_t n_r, std::size_t n_c)
{
    if (!is_power_of_two(n_r) || !is_power_of_two(n_c))
        throw std::invalid_argument("component lengths must be powers of two");
    if (n_r * n_c != f.code_length)
        throw std::invalid_argument("component lengths do not factor the code length");

    const auto z_flat = f.indicator();
    UnfrozenCounts out;
    out.z = NatMatrix(n_c, n_r);
    for (std::size_t i = 0; i < n_c; ++i)
        for (std::size_t j = 0; j < n_r; ++j)
            out.z.at(i, j) = z_flat[i * n_r + j];

    const BitMatrix t_r = kernel_power(n_r);
    const BitMatrix t_c = kernel_power(n_c);

    out.z_r = NatMatrix(n_c, n_r);
    for (std::size_t i = 0; i < n_c; ++i)
        for (std::size_t j = 0; j < n_r; ++j) {
            std::uint32_t acc = 0;
            for (std::size_t m = 0; m < n_r; ++m)
                acc += out.z.at(i, m) * t_r.at(m, j);
            out.z_r.at(i, j) = acc;
        }

    out.z_c = NatMatrix(n_c, n_r);
    for (std::size_t i = 0; i < n_c; ++i)
        for (std::size_t j = 0; j < n_r; ++j) {
            std::uint32_t acc = 0;
            for (std::size_t k = 0; k < n_c; ++k)
                acc += t_c.at(k, i) * out.z.at(k, j);
            out.z_c.at(i, j) = acc;
        }
    return out;
}

ComponentProfile component_frozen_sets(const FrozenSet& f, std::size_t n_r, std::size_t n_c)
{
    const UnfrozenCounts counts = unfrozen_counts(f, n_r, n_c);
    ComponentProfile profile;
    profile.row_frozen_sets.reserve(n_c);
    for (std::size_t i = 0; i < n_c; ++i) {
        std::vector<std::size_t> idx;
        for (std::size_t l = 0; l < n_r; ++l)
            if (counts.z_c.at(i, l) == 0)
                idx.push_back(l);
        profile.row_frozen_sets.emplace_back(n_r, std::move(idx));
    }
    profile.col_frozen_sets.reserve(n_r);
    for (std::size_t j = 0; j < n_r; ++j) {
        std::vector<std::size_t> idx;
        for (std::size_t l = 0; l < n_c; ++l)
            if (counts.z_r.at(l, j) == 0)
                idx.push_back(l);
        profile.col_frozen_sets.emplace_back(n_c, std::move(idx));
    }
    return profile;
}

bool frozen_bit_oracle_row(const FrozenSet& f, std::size_t n_r, std::size_t n_c,
                           std::size_t i, std::size_t l)
{
    const BitMatrix t_c = kernel_power(n_c);
    const auto mask = f.mask();
    for (std::size_t k = 0; k < n_c; ++k)
        if (t_c.at(k, i) && !mask[k * n_r + l])
            return false;
    return true;
}

bool frozen_bit_oracle_col(const FrozenSet& f, std::size_t n_r, std::size_t n_c,
                           std::size_t j, std::size_t l)
{
    const BitMatrix t_r = kernel_power(n_r);
    const auto mask = f.mask();
    for (std::size_t m = 0; m < n_r; ++m)
        if (t_r.at(m, j) && !mask[l * n_r + m])
            return false;
    return true;
}

CodeSpec make_product_spec(const FrozenSet& f_r, const FrozenSet& f_c)
{
    CodeSpec spec;
    spec.frozen = product_frozen_set(f_r, f_c);
    spec.length = spec.frozen.code_length;
    spec.dimension = spec.frozen.dimension();
    spec.provenance = Provenance::Product;
    ComponentStructure cs;
    cs.n_rows = f_c.code_length;
    cs.n_cols = f_r.code_length;
    cs.profile = component_frozen_sets(spec.frozen, f_r.code_length, f_c.code_length);
    spec.product = std::move(cs);
    return spec;
}

CodeSpec hybrid_frozen_set(const FrozenSet& f_r, const FrozenSet& f_c, std::size_t k,
                           const ReliabilityOrder& order_n)
{
    const std::size_t k_prod = f_r.dimension() * f_c.dimension();
    if (k > k_prod)
        throw std::invalid_argument("target dimension exceeds the product code dimension");
    const std::size_t n_len = f_r.code_length * f_c.code_length;
    if (order_n.code_length != n_len)
        throw std::invalid_argument("reliability order length does not match the product code");

    CodeSpec spec = make_product_spec(f_r, f_c);
    auto mask = spec.frozen.mask();
    std::size_t extra = k_prod - k;
    for (std::size_t pos : order_n.order) {
        if (extra == 0)
            break;
        if (!mask[pos]) {
            mask[pos] = 1;
            --extra;
        }
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n_len; ++i)
        if (mask[i])
            idx.push_back(i);
    spec.frozen = FrozenSet(n_len, std::move(idx));
    spec.dimension = k;
    spec.provenance = (k == k_prod) ? Provenance::Product : Provenance::Hybrid;
    return spec;
}

CodeSpec make_flat_spec(FrozenSet f)
{
    CodeSpec spec;
    spec.length = f.code_length;
    spec.dimension = f.dimension();
    spec.frozen = std::move(f);
    spec.provenance = Provenance::Flat;
    return spec;
}

void attach_product_structure(CodeSpec& spec, std::size_t n_r, std::size_t n_c)
{
    ComponentStructure cs;
    cs.n_rows = n_c;
    cs.n_cols = n_r;
    cs.profile = component_frozen_sets(spec.frozen, n_r, n_c);
    spec.product = std::move(cs);
}

BitVector place_information_bits(const BitVector& info, const FrozenSet& f)
{
    if (info.size() != f.dimension())
        throw std::invalid_argument("information length does not match code dimension");
    BitVector u(f.code_length, 0);
    const auto mask = f.mask();
    std::size_t next = 0;
    for (std::size_t i = 0; i < f.code_length; ++i)
        if (!mask[i])
            u[i] = info[next++];
    return u;
}

BitVector extract_information_bits(const BitVector& u, const FrozenSet& f)
{
    if (u.size() != f.code_length)
        throw std::invalid_argument("vector length does not match code length");
    BitVector info;
    info.reserve(f.dimension());
    const auto mask = f.mask();
    for (std::size_t i = 0; i < f.code_length; ++i)
        if (!mask[i])
            info.push_back(u[i]);
    return info;
}

}  // namespace ppc
