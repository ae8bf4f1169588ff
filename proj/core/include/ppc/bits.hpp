#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ppc {

/// Binary symbols stored one per byte; values are always 0 or 1.
using BitVector = std::vector<std::uint8_t>;

/// Row-major matrix of binary symbols.
struct BitMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> data;

    BitMatrix() = default;
    BitMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

    std::uint8_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<std::uint8_t> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const std::uint8_t> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

    bool operator==(const BitMatrix&) const = default;
};

/// Row-major matrix of natural-number counts.
struct NatMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint32_t> data;

    NatMatrix() = default;
    NatMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

    std::uint32_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    bool operator==(const NatMatrix&) const = default;
};

/// True iff n is a power of two (and nonzero).
constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// log2 of a power of two.
std::size_t log2_exact(std::size_t n);

/// In-place polar transform x = u * T_N over GF(2), T_N the n-fold Kronecker
/// power of the [[1,0],[1,1]] kernel, natural (non-bit-reversed) ordering.
/// The transform is an involution: applying it twice restores the input.
void polar_transform_inplace(std::span<std::uint8_t> bits);

/// x = u * T_N; length of u must be a power of two.
BitVector polar_encode(const BitVector& u, std::size_t n);

/// Convenience overload deriving n from the vector length.
BitVector polar_encode(const BitVector& u);

/// X = T_{Nc}^T * U * T_{Nr} over GF(2): every row encoded with the length-Nr
/// transform, then every column with the length-Nc transform. The two passes
/// commute.
BitMatrix product_encode(const BitMatrix& u, std::size_t n_r, std::size_t n_c);

/// Juxtaposes the rows of M into one vector.
BitVector row_flatten(const BitMatrix& m);

/// Inverse of row_flatten for the given shape.
BitMatrix row_reshape(const BitVector& v, std::size_t rows, std::size_t cols);

}  // namespace ppc
