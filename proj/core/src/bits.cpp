#include "ppc/bits.hpp"

#include <stdexcept>
#include <string>

namespace ppc {

std::size_t log2_exact(std::size_t n)
{
    if (!is_power_of_two(n))
        throw std::invalid_argument("length " + std::to_string(n) + " is not a power of two");
    std::size_t b = 0;
    while ((std::size_t{1} << b) < n)
        ++b;
    return b;
}

void polar_transform_inplace(std::span<std::uint8_t> bits)
{
    const std::size_t n = bits.size();
    if (!is_power_of_two(n))
        throw std::invalid_argument("polar transform requires a power-of-two length");
    for (std::size_t half = 1; half < n; half *= 2)
        for (std::size_t base = 0; base < n; base += 2 * half)
            for (std::size_t j = base; j < base + half; ++j)
                bits[j] ^= bits[j + half];
}

BitVector polar_encode(const BitVector& u, std::size_t n)
{
    if (u.size() != (std::size_t{1} << n))
        throw std::invalid_argument("input length does not match 2^n");
    BitVector x = u;
    polar_transform_inplace(x);
    return x;
}

BitVector polar_encode(const BitVector& u)
{
    BitVector x = u;
    polar_transform_inplace(x);
    return x;
}

BitMatrix product_encode(const BitMatrix& u, std::size_t n_r, std::size_t n_c)
{
    const std::size_t nr = std::size_t{1} << n_r;
    const std::size_t nc = std::size_t{1} << n_c;
    if (u.rows != nc || u.cols != nr)
        throw std::invalid_argument("input matrix must be 2^n_c x 2^n_r");

    BitMatrix x = u;
    for (std::size_t r = 0; r < nc; ++r)
        polar_transform_inplace(x.row(r));

    std::vector<std::uint8_t> col(nc);
    for (std::size_t c = 0; c < nr; ++c) {
        for (std::size_t r = 0; r < nc; ++r)
            col[r] = x.at(r, c);
        polar_transform_inplace(col);
        for (std::size_t r = 0; r < nc; ++r)
            x.at(r, c) = col[r];
    }
    return x;
}

BitVector row_flatten(const BitMatrix& m)
{
    return m.data;
}

BitMatrix row_reshape(const BitVector& v, std::size_t rows, std::size_t cols)
{
    if (v.size() != rows * cols)
        throw std::invalid_argument("vector length does not match rows*cols");
    BitMatrix m(rows, cols);
    m.data = v;
    return m;
}

}  // namespace ppc
