#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "ppc/bits.hpp"
#include "ppc/construction.hpp"

using namespace ppc;

namespace {

BitVector random_bits(std::mt19937& rng, std::size_t n)
{
    BitVector v(n);
    for (auto& b : v)
        b = rng() & 1;
    return v;
}

}  // namespace

TEST_CASE("length-2 kernel")
{
    CHECK(polar_encode({1, 0}, 1) == BitVector{1, 0});
    CHECK(polar_encode({0, 1}, 1) == BitVector{1, 1});
    CHECK_THROWS_AS(polar_encode({1, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(polar_encode({1, 0}, 2), std::invalid_argument);
}

TEST_CASE("encode matches the dense transform")
{
    std::mt19937 rng(7);
    for (std::size_t n_len : {2u, 4u, 8u, 16u, 32u, 64u}) {
        for (int trial = 0; trial < 50; ++trial) {
            const BitVector u = random_bits(rng, n_len);
            CHECK(polar_encode(u) == oracle::dense_encode(u));
        }
    }
}

TEST_CASE("product-code placement example encodes consistently")
{
    // (4,2) column code with frozen rows {0,1}, (4,3) row code with frozen
    // column {0}, six information bits placed row-by-row from the top left.
    const FrozenSet f_r(4, {0});
    const FrozenSet f_c(4, {0, 1});
    const FrozenSet f = product_frozen_set(f_r, f_c);
    const BitVector info{1, 0, 1, 1, 0, 1};
    const BitVector u = place_information_bits(info, f);
    const BitVector x = polar_encode(u, 4);
    CHECK(x == oracle::dense_encode(u));

    const BitMatrix u_mat = row_reshape(u, 4, 4);
    const BitMatrix x_mat = product_encode(u_mat, 2, 2);
    CHECK(row_flatten(x_mat) == x);
    CHECK(x_mat == oracle::dense_product_encode(u_mat));

    // every row/column of the codeword matrix is a component codeword:
    // re-encoding the row transform of each line must vanish on its frozen set
    for (std::size_t r = 0; r < 4; ++r) {
        BitVector row(x_mat.row(r).begin(), x_mat.row(r).end());
        polar_transform_inplace(row);
        CHECK(row[0] == 0);
    }
    for (std::size_t c = 0; c < 4; ++c) {
        BitVector col(4);
        for (std::size_t r = 0; r < 4; ++r)
            col[r] = x_mat.at(r, c);
        polar_transform_inplace(col);
        CHECK(col[0] == 0);
        CHECK(col[1] == 0);
    }
}

TEST_CASE("involution")
{
    std::mt19937 rng(11);
    for (std::size_t n_len : {2u, 8u, 64u, 256u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const BitVector u = random_bits(rng, n_len);
            CHECK(polar_encode(polar_encode(u)) == u);
        }
    }
}

TEST_CASE("linearity")
{
    std::mt19937 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const BitVector u = random_bits(rng, 32);
        const BitVector v = random_bits(rng, 32);
        BitVector sum(32);
        for (std::size_t i = 0; i < 32; ++i)
            sum[i] = u[i] ^ v[i];
        const BitVector xu = polar_encode(u);
        const BitVector xv = polar_encode(v);
        BitVector xsum(32);
        for (std::size_t i = 0; i < 32; ++i)
            xsum[i] = xu[i] ^ xv[i];
        CHECK(polar_encode(sum) == xsum);
    }
}

TEST_CASE("product encode equals all-zero on all-zero input")
{
    const BitMatrix u(4, 4);
    CHECK(product_encode(u, 2, 2) == BitMatrix(4, 4));
}

TEST_CASE("product encode rejects shape mismatches")
{
    CHECK_THROWS_AS(product_encode(BitMatrix(4, 4), 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(product_encode(BitMatrix(3, 4), 2, 2), std::invalid_argument);
}

TEST_CASE("flattening the product encoding equals flat encoding, exhaustive N=16")
{
    for (auto [n_r, n_c] : {std::pair<std::size_t, std::size_t>{1, 3}, {2, 2}, {3, 1}}) {
        const std::size_t rows = std::size_t{1} << n_c;
        const std::size_t cols = std::size_t{1} << n_r;
        for (std::uint32_t bits = 0; bits < (1u << 16); ++bits) {
            BitVector u(16);
            for (std::size_t i = 0; i < 16; ++i)
                u[i] = (bits >> i) & 1;
            const BitMatrix x = product_encode(row_reshape(u, rows, cols), n_r, n_c);
            if (row_flatten(x) != polar_encode(u)) {
                CAPTURE(n_r);
                CAPTURE(bits);
                REQUIRE(row_flatten(x) == polar_encode(u));
            }
        }
    }
}

TEST_CASE("flattening the product encoding equals flat encoding, random N<=64")
{
    std::mt19937 rng(17);
    for (std::size_t n_r = 1; n_r <= 3; ++n_r)
        for (std::size_t n_c = 1; n_c <= 3; ++n_c)
            for (int trial = 0; trial < 1200; ++trial) {
                const std::size_t rows = std::size_t{1} << n_c;
                const std::size_t cols = std::size_t{1} << n_r;
                const BitVector u = random_bits(rng, rows * cols);
                const BitMatrix x = product_encode(row_reshape(u, rows, cols), n_r, n_c);
                REQUIRE(row_flatten(x) == polar_encode(u));
            }
}

TEST_CASE("row and column encoding order commute")
{
    std::mt19937 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 8, cols = 4;
        BitMatrix u(rows, cols);
        u.data = random_bits(rng, rows * cols);

        // columns first, then rows
        BitMatrix alt = u;
        std::vector<std::uint8_t> col(rows);
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t r = 0; r < rows; ++r)
                col[r] = alt.at(r, c);
            polar_transform_inplace(col);
            for (std::size_t r = 0; r < rows; ++r)
                alt.at(r, c) = col[r];
        }
        for (std::size_t r = 0; r < rows; ++r)
            polar_transform_inplace(alt.row(r));

        CHECK(alt == product_encode(u, 2, 3));
    }
}

TEST_CASE("reshape round trip")
{
    CHECK(row_flatten(row_reshape({1, 0, 0, 1}, 2, 2)) == BitVector{1, 0, 0, 1});
    const BitMatrix m = row_reshape({1, 0, 0, 1}, 2, 2);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 0);
    CHECK(m.at(1, 0) == 0);
    CHECK(m.at(1, 1) == 1);
    CHECK_THROWS_AS(row_reshape({1, 0, 1}, 2, 2), std::invalid_argument);

    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const BitVector v = random_bits(rng, 32);
        CHECK(row_flatten(row_reshape(v, 4, 8)) == v);
    }
}
