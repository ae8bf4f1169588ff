#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ppc {

/// Set of input positions pinned to zero, kept sorted ascending.
struct FrozenSet {
    std::size_t code_length = 0;
    std::vector<std::size_t> indices;

    FrozenSet() = default;
    FrozenSet(std::size_t n, std::vector<std::size_t> idx);

    std::size_t dimension() const { return code_length - indices.size(); }
    bool contains(std::size_t i) const;

    /// mask[i] == 1 iff position i is frozen.
    std::vector<std::uint8_t> mask() const;

    /// Indicator z with z_i = 0 on frozen positions and 1 elsewhere.
    std::vector<std::uint8_t> indicator() const;

    /// Recovers the set from an indicator vector (zeros are frozen).
    static FrozenSet from_indicator(const std::vector<std::uint8_t>& z);

    bool operator==(const FrozenSet&) const = default;
};

/// Permutation of [0, N), least reliable position first.
struct ReliabilityOrder {
    std::size_t code_length = 0;
    double design_parameter = 0.0;
    std::vector<std::size_t> order;
};

// Text file format shared by frozen sets and reliability orders:
// first line "N=<int> K=<int>", then one decimal index per line.
// Frozen-set files carry N-K ascending indices; order files carry all N
// positions in reliability order (least reliable first) with K written as 0.

FrozenSet read_frozen_set_file(std::istream& in);
FrozenSet load_frozen_set(const std::string& path);
void write_frozen_set_file(std::ostream& out, const FrozenSet& f);
void save_frozen_set(const std::string& path, const FrozenSet& f);

ReliabilityOrder read_reliability_order_file(std::istream& in);
ReliabilityOrder load_reliability_order(const std::string& path);
void write_reliability_order_file(std::ostream& out, const ReliabilityOrder& order);
void save_reliability_order(const std::string& path, const ReliabilityOrder& order);

}  // namespace ppc
