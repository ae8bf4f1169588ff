#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ppc/bits.hpp"
#include "ppc/frozen.hpp"

namespace ppc {

/// How a code's frozen set was designed.
enum class Provenance { Flat, Product, Hybrid };

/// Frozen sets of the row and column component codes of an N_c x N_r
/// product decomposition. row_frozen_sets[i] constrains the i-th row of the
/// codeword matrix (length N_r), col_frozen_sets[j] the j-th column
/// (length N_c).
struct ComponentProfile {
    std::vector<FrozenSet> row_frozen_sets;
    std::vector<FrozenSet> col_frozen_sets;

    bool operator==(const ComponentProfile&) const = default;
};

/// Product decomposition attached to a code: dimensions plus the component
/// frozen sets the row/column decoders use.
struct ComponentStructure {
    std::size_t n_rows = 0;  // N_c
    std::size_t n_cols = 0;  // N_r
    ComponentProfile profile;
};

/// One polar code: length, dimension, frozen set, and how it was designed.
/// Codes meant for product decoding also carry their component structure.
struct CodeSpec {
    std::size_t length = 0;
    std::size_t dimension = 0;
    FrozenSet frozen;
    Provenance provenance = Provenance::Flat;
    std::optional<ComponentStructure> product;
};

/// Bhattacharyya parameters of all N bit channels for initial value z0,
/// evolved by z -> 2z - z^2 (upper) and z -> z^2 (lower), natural order.
std::vector<double> bhattacharyya_parameters(std::size_t n_len, double z0);

/// Positions sorted least reliable first (descending Bhattacharyya value),
/// ties broken by ascending index.
ReliabilityOrder bhattacharyya_order(std::size_t n_len, double design_parameter = 0.5);

/// The N-K least reliable positions of the order, sorted ascending.
FrozenSet frozen_from_order(const ReliabilityOrder& order, std::size_t k);

/// Frozen set of the product of two polar codes: positions where the
/// Kronecker product of the component indicator vectors is zero.
FrozenSet product_frozen_set(const FrozenSet& f_r, const FrozenSet& f_c);

/// Unfrozen-count matrices of the product decomposition: Z reshaped from the
/// indicator vector, Z_r = Z * T_{Nr}, Z_c = T_{Nc}^T * Z, products over the
/// naturals.
struct UnfrozenCounts {
    NatMatrix z;
    NatMatrix z_r;
    NatMatrix z_c;
};
UnfrozenCounts unfrozen_counts(const FrozenSet& f, std::size_t n_r, std::size_t n_c);

/// Component frozen sets of a polar code viewed as an N_c x N_r irregular
/// product code: zero entries of Z_c rows (row codes) and Z_r columns
/// (column codes).
ComponentProfile component_frozen_sets(const FrozenSet& f, std::size_t n_r, std::size_t n_c);

/// Brute-force check that bit l of the i-th row component code is frozen:
/// true iff every input position feeding that virtual bit is in F. The set
/// of feeding positions is {k*N_r + l : T_{Nc}[k][i] = 1}.
bool frozen_bit_oracle_row(const FrozenSet& f, std::size_t n_r, std::size_t n_c,
                           std::size_t i, std::size_t l);

/// Column mirror of frozen_bit_oracle_row; feeding positions are
/// {l*N_r + m : T_{Nr}[m][j] = 1}.
bool frozen_bit_oracle_col(const FrozenSet& f, std::size_t n_r, std::size_t n_c,
                           std::size_t j, std::size_t l);

/// Builds a CodeSpec for the product of two polar codes (K = K_r * K_c),
/// component structure included.
CodeSpec make_product_spec(const FrozenSet& f_r, const FrozenSet& f_c);

/// Frozen set selection trading decoding latency against performance: starts
/// from the product frozen set of (f_r, f_c) and freezes the K_rK_c - K
/// least reliable positions (per order_n) not already frozen, down to target
/// dimension K. The returned spec keeps the component structure of the
/// product part so the code stays product-decodable.
CodeSpec hybrid_frozen_set(const FrozenSet& f_r, const FrozenSet& f_c, std::size_t k,
                           const ReliabilityOrder& order_n);

/// CodeSpec for a plain polar code with the given frozen set.
CodeSpec make_flat_spec(FrozenSet f);

/// Attaches an N_c x N_r product decomposition to a spec, deriving the
/// component frozen sets from the spec's own frozen set.
void attach_product_structure(CodeSpec& spec, std::size_t n_r, std::size_t n_c);

/// Scatters k information bits into the unfrozen positions of u in ascending
/// index order (row-by-row from the top left in the matrix view).
BitVector place_information_bits(const BitVector& info, const FrozenSet& f);

/// Gathers the information positions of u in ascending index order.
BitVector extract_information_bits(const BitVector& u, const FrozenSet& f);

}  // namespace ppc
