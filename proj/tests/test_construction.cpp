#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "ppc/construction.hpp"
#include "ppc/frozen.hpp"

using namespace ppc;

namespace {

FrozenSet random_frozen_set(std::mt19937& rng, std::size_t n, std::size_t n_frozen)
{
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(n_frozen);
    return FrozenSet(n, std::move(all));
}

}  // namespace

TEST_CASE("Bhattacharyya recursion basics")
{
    const auto order2 = bhattacharyya_order(2, 0.3);
    CHECK(order2.order == std::vector<std::size_t>{0, 1});

    CHECK_THROWS_AS(bhattacharyya_order(12, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(bhattacharyya_order(8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bhattacharyya_order(8, 1.0), std::invalid_argument);
}

TEST_CASE("Bhattacharyya values for N=8, z0=0.5")
{
    // dyadic rationals, exact in double arithmetic
    const std::vector<double> expected{255.0 / 256, 225.0 / 256, 207.0 / 256, 81.0 / 256,
                                       175.0 / 256, 49.0 / 256,  31.0 / 256,  1.0 / 256};
    CHECK(bhattacharyya_parameters(8, 0.5) == expected);
    CHECK(bhattacharyya_order(8, 0.5).order ==
          std::vector<std::size_t>{0, 1, 2, 4, 3, 5, 6, 7});
}

TEST_CASE("optimal (16,6) frozen set")
{
    const auto order = bhattacharyya_order(16, 0.5);
    const FrozenSet f = frozen_from_order(order, 6);
    CHECK(f.indices == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 8, 9, 10});
}

TEST_CASE("frozen_from_order edge dimensions")
{
    const auto order = bhattacharyya_order(8, 0.5);
    CHECK(frozen_from_order(order, 8).indices.empty());
    CHECK(frozen_from_order(order, 0).indices ==
          std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});
    CHECK_THROWS_AS(frozen_from_order(order, 9), std::invalid_argument);
}

TEST_CASE("product frozen set of the (4,3)x(4,2) example")
{
    const FrozenSet f = product_frozen_set(FrozenSet(4, {0}), FrozenSet(4, {0, 1}));
    CHECK(f.code_length == 16);
    CHECK(f.indices == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 12});
}

TEST_CASE("product frozen set edge cases and size")
{
    CHECK(product_frozen_set(FrozenSet(4, {}), FrozenSet(4, {})).indices.empty());
    const FrozenSet all_rows = product_frozen_set(FrozenSet(4, {0, 1, 2, 3}), FrozenSet(4, {}));
    CHECK(all_rows.indices.size() == 16);

    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n_r = std::size_t{1} << (1 + rng() % 3);
        const std::size_t n_c = std::size_t{1} << (1 + rng() % 3);
        const FrozenSet f_r = random_frozen_set(rng, n_r, rng() % (n_r + 1));
        const FrozenSet f_c = random_frozen_set(rng, n_c, rng() % (n_c + 1));
        const FrozenSet f = product_frozen_set(f_r, f_c);
        CHECK(f.indices.size() == n_r * n_c - f_r.dimension() * f_c.dimension());
    }
}

TEST_CASE("product of polar codes is the flat polar code, exhaustive small sizes")
{
    for (std::size_t n_r : {2u, 4u})
        for (std::size_t n_c : {2u, 4u})
            for (std::uint32_t fr_bits = 0; fr_bits < (1u << n_r); ++fr_bits)
                for (std::uint32_t fc_bits = 0; fc_bits < (1u << n_c); ++fc_bits) {
                    std::vector<std::size_t> fr_idx, fc_idx;
                    for (std::size_t i = 0; i < n_r; ++i)
                        if ((fr_bits >> i) & 1)
                            fr_idx.push_back(i);
                    for (std::size_t i = 0; i < n_c; ++i)
                        if ((fc_bits >> i) & 1)
                            fc_idx.push_back(i);
                    const FrozenSet f_r(n_r, fr_idx);
                    const FrozenSet f_c(n_c, fc_idx);
                    const FrozenSet f = product_frozen_set(f_r, f_c);
                    const std::size_t k = f.dimension();
                    REQUIRE(k == f_r.dimension() * f_c.dimension());

                    // enumerate product encodings of every information word
                    std::set<BitVector> product_words, flat_words;
                    const auto r_mask = f_r.mask();
                    const auto c_mask = f_c.mask();
                    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
                        BitMatrix u(n_c, n_r);
                        std::size_t next = 0;
                        for (std::size_t r = 0; r < n_c; ++r)
                            for (std::size_t c = 0; c < n_r; ++c)
                                if (!c_mask[r] && !r_mask[c])
                                    u.at(r, c) = (bits >> next++) & 1;
                        product_words.insert(
                            row_flatten(product_encode(u, log2_exact(n_r), log2_exact(n_c))));

                        BitVector info(k);
                        for (std::size_t i = 0; i < k; ++i)
                            info[i] = (bits >> i) & 1;
                        flat_words.insert(polar_encode(place_information_bits(info, f)));
                    }
                    REQUIRE(product_words == flat_words);
                }
}

TEST_CASE("component frozen sets of the (16,8) worked example")
{
    const FrozenSet f(16, {0, 2, 3, 4, 7, 8, 12, 13});
    const UnfrozenCounts counts = unfrozen_counts(f, 4, 4);

    NatMatrix z(4, 4);
    z.data = {0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 1, 1};
    CHECK(counts.z == z);

    NatMatrix z_r(4, 4);
    z_r.data = {1, 1, 0, 0, 2, 1, 1, 0, 3, 2, 2, 1, 2, 1, 2, 1};
    CHECK(counts.z_r == z_r);

    NatMatrix z_c(4, 4);
    z_c.data = {0, 3, 3, 2, 0, 1, 2, 1, 0, 1, 2, 2, 0, 0, 1, 1};
    CHECK(counts.z_c == z_c);

    const ComponentProfile p = component_frozen_sets(f, 4, 4);
    CHECK(p.row_frozen_sets[0].indices == std::vector<std::size_t>{0});
    CHECK(p.row_frozen_sets[1].indices == std::vector<std::size_t>{0});
    CHECK(p.row_frozen_sets[2].indices == std::vector<std::size_t>{0});
    CHECK(p.row_frozen_sets[3].indices == std::vector<std::size_t>{0, 1});
    CHECK(p.col_frozen_sets[0].indices.empty());
    CHECK(p.col_frozen_sets[1].indices.empty());
    CHECK(p.col_frozen_sets[2].indices == std::vector<std::size_t>{0});
    CHECK(p.col_frozen_sets[3].indices == std::vector<std::size_t>{0, 1});

    // row code dimensions (3,3,3,2), column code dimensions (4,4,3,2)
    std::vector<std::size_t> row_dims, col_dims;
    for (const auto& s : p.row_frozen_sets)
        row_dims.push_back(s.dimension());
    for (const auto& s : p.col_frozen_sets)
        col_dims.push_back(s.dimension());
    CHECK(row_dims == std::vector<std::size_t>{3, 3, 3, 2});
    CHECK(col_dims == std::vector<std::size_t>{4, 4, 3, 2});

    // all 32 oracle queries agree
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t l = 0; l < 4; ++l) {
            CHECK(frozen_bit_oracle_row(f, 4, 4, i, l) == p.row_frozen_sets[i].contains(l));
            CHECK(frozen_bit_oracle_col(f, 4, 4, i, l) == p.col_frozen_sets[i].contains(l));
        }
}

TEST_CASE("component frozen sets edge cases")
{
    const FrozenSet empty(16, {});
    const ComponentProfile p = component_frozen_sets(empty, 4, 4);
    for (const auto& s : p.row_frozen_sets)
        CHECK(s.indices.empty());
    for (const auto& s : p.col_frozen_sets)
        CHECK(s.indices.empty());

    std::vector<std::size_t> all(16);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const ComponentProfile full = component_frozen_sets(FrozenSet(16, all), 4, 4);
    for (const auto& s : full.row_frozen_sets)
        CHECK(s.indices.size() == 4);

    CHECK_THROWS_AS(component_frozen_sets(empty, 8, 4), std::invalid_argument);
}

TEST_CASE("fully frozen oracle and product-derived component properties")
{
    std::vector<std::size_t> all(16);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const FrozenSet full(16, all);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t l = 0; l < 4; ++l) {
            CHECK(frozen_bit_oracle_row(full, 4, 4, i, l));
            CHECK(frozen_bit_oracle_col(full, 4, 4, i, l));
        }

    // components of a product frozen set contain the design sets
    std::mt19937 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        const FrozenSet f_r = random_frozen_set(rng, 8, rng() % 9);
        const FrozenSet f_c = random_frozen_set(rng, 8, rng() % 9);
        const FrozenSet f = product_frozen_set(f_r, f_c);
        const ComponentProfile p = component_frozen_sets(f, 8, 8);
        for (const auto& s : p.row_frozen_sets)
            for (std::size_t idx : f_r.indices)
                CHECK(s.contains(idx));
        for (const auto& s : p.col_frozen_sets)
            for (std::size_t idx : f_c.indices)
                CHECK(s.contains(idx));
    }
}

TEST_CASE("oracle agrees with the count matrices everywhere, random N=64")
{
    std::mt19937 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const FrozenSet f = random_frozen_set(rng, 64, rng() % 65);
        const ComponentProfile p = component_frozen_sets(f, 8, 8);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t l = 0; l < 8; ++l) {
                REQUIRE(frozen_bit_oracle_row(f, 8, 8, i, l) ==
                        p.row_frozen_sets[i].contains(l));
                REQUIRE(frozen_bit_oracle_col(f, 8, 8, i, l) ==
                        p.col_frozen_sets[i].contains(l));
            }
    }
}

TEST_CASE("unfrozen count equals the dimension for every decomposition")
{
    std::mt19937 rng(43);
    const FrozenSet f = random_frozen_set(rng, 64, 23);
    for (auto [n_r, n_c] :
         {std::pair<std::size_t, std::size_t>{2, 32}, {4, 16}, {8, 8}, {16, 4}, {32, 2}}) {
        const UnfrozenCounts counts = unfrozen_counts(f, n_r, n_c);
        std::size_t ones = 0;
        for (auto v : counts.z.data)
            ones += v;
        CHECK(ones == f.dimension());
    }
}

TEST_CASE("hybrid frozen set design")
{
    const FrozenSet f_r(4, {0});
    const FrozenSet f_c(4, {0, 1});
    const auto order = bhattacharyya_order(16, 0.5);

    SUBCASE("K = KrKc reduces to the product design")
    {
        const CodeSpec spec = hybrid_frozen_set(f_r, f_c, 6, order);
        CHECK(spec.frozen == product_frozen_set(f_r, f_c));
        CHECK(spec.provenance == Provenance::Product);
    }

    SUBCASE("K = 0 freezes everything")
    {
        const CodeSpec spec = hybrid_frozen_set(f_r, f_c, 0, order);
        CHECK(spec.frozen.indices.size() == 16);
        CHECK(spec.dimension == 0);
    }

    SUBCASE("K = 4 adds the two least reliable unfrozen positions")
    {
        const FrozenSet base = product_frozen_set(f_r, f_c);
        std::vector<std::size_t> extras;
        for (std::size_t pos : order.order) {
            if (extras.size() == 2)
                break;
            if (!base.contains(pos))
                extras.push_back(pos);
        }
        REQUIRE(extras.size() == 2);
        std::vector<std::size_t> expected = base.indices;
        expected.insert(expected.end(), extras.begin(), extras.end());
        std::sort(expected.begin(), expected.end());

        const CodeSpec spec = hybrid_frozen_set(f_r, f_c, 4, order);
        CHECK(spec.frozen.indices == expected);
        CHECK(spec.dimension == 4);
        CHECK(spec.provenance == Provenance::Hybrid);
        REQUIRE(spec.product.has_value());

        // the product frozen set stays a subset
        for (std::size_t idx : base.indices)
            CHECK(spec.frozen.contains(idx));
    }

    SUBCASE("K beyond the product dimension is rejected")
    {
        CHECK_THROWS_AS(hybrid_frozen_set(f_r, f_c, 7, order), std::invalid_argument);
    }
}

TEST_CASE("hybrid output always contains the product frozen set")
{
    std::mt19937 rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        const FrozenSet f_r = frozen_from_order(bhattacharyya_order(8, 0.5), 1 + rng() % 7);
        const FrozenSet f_c = frozen_from_order(bhattacharyya_order(8, 0.5), 1 + rng() % 7);
        const std::size_t k_prod = f_r.dimension() * f_c.dimension();
        const std::size_t k = rng() % (k_prod + 1);
        const CodeSpec spec = hybrid_frozen_set(f_r, f_c, k, bhattacharyya_order(64, 0.5));
        CHECK(spec.frozen.indices.size() == 64 - k);
        for (std::size_t idx : product_frozen_set(f_r, f_c).indices)
            CHECK(spec.frozen.contains(idx));
    }
}

TEST_CASE("frozen-set file format")
{
    const FrozenSet f(16, {0, 1, 2, 3, 4, 5, 6, 7, 8, 12});
    std::stringstream ss;
    write_frozen_set_file(ss, f);
    CHECK(ss.str().substr(0, 9) == "N=16 K=6\n");
    CHECK(read_frozen_set_file(ss) == f);

    std::stringstream bad_header("hello\n0\n");
    CHECK_THROWS_AS(read_frozen_set_file(bad_header), std::invalid_argument);
    std::stringstream bad_order("N=4 K=2\n1\n0\n");
    CHECK_THROWS_AS(read_frozen_set_file(bad_order), std::invalid_argument);
    std::stringstream bad_range("N=4 K=3\n7\n");
    CHECK_THROWS_AS(read_frozen_set_file(bad_range), std::invalid_argument);
    std::stringstream bad_count("N=4 K=2\n0\n");
    CHECK_THROWS_AS(read_frozen_set_file(bad_count), std::invalid_argument);
}

TEST_CASE("reliability-order file format")
{
    const ReliabilityOrder order = bhattacharyya_order(16, 0.5);
    std::stringstream ss;
    write_reliability_order_file(ss, order);
    const ReliabilityOrder back = read_reliability_order_file(ss);
    CHECK(back.order == order.order);

    std::stringstream not_perm("N=4 K=0\n0\n1\n2\n2\n");
    CHECK_THROWS_AS(read_reliability_order_file(not_perm), std::invalid_argument);
    std::stringstream short_file("N=4 K=0\n0\n1\n");
    CHECK_THROWS_AS(read_reliability_order_file(short_file), std::invalid_argument);
}

TEST_CASE("information bit placement round trip")
{
    const FrozenSet f(8, {0, 1, 2, 4});
    const BitVector info{1, 0, 1, 1};
    const BitVector u = place_information_bits(info, f);
    CHECK(u == BitVector{0, 0, 0, 1, 0, 0, 1, 1});
    CHECK(extract_information_bits(u, f) == info);
    CHECK_THROWS_AS(place_information_bits({1, 0}, f), std::invalid_argument);
}
