#include "ppc/frozen.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ppc {

FrozenSet::FrozenSet(std::size_t n, std::vector<std::size_t> idx)
    : code_length(n), indices(std::move(idx))
{
    std::sort(indices.begin(), indices.end());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= code_length)
            throw std::invalid_argument("frozen index out of range");
        if (i > 0 && indices[i] == indices[i - 1])
            throw std::invalid_argument("duplicate frozen index");
    }
}

bool FrozenSet::contains(std::size_t i) const
{
    return std::binary_search(indices.begin(), indices.end(), i);
}

std::vector<std::uint8_t> FrozenSet::mask() const
{
    std::vector<std::uint8_t> m(code_length, 0);
    for (std::size_t i : indices)
        m[i] = 1;
    return m;
}

std::vector<std::uint8_t> FrozenSet::indicator() const
{
    std::vector<std::uint8_t> z(code_length, 1);
    for (std::size_t i : indices)
        z[i] = 0;
    return z;
}

FrozenSet FrozenSet::from_indicator(const std::vector<std::uint8_t>& z)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] == 0)
            idx.push_back(i);
    return FrozenSet(z.size(), std::move(idx));
}

namespace {

struct Header {
    std::size_t n = 0;
    std::size_t k = 0;
};

Header parse_header(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("empty frozen-set file");
    Header h;
    long long n = -1, k = -1;
    if (std::sscanf(line.c_str(), "N=%lld K=%lld", &n, &k) != 2 || n < 0 || k < 0)
        throw std::invalid_argument("malformed header line: " + line);
    h.n = static_cast<std::size_t>(n);
    h.k = static_cast<std::size_t>(k);
    return h;
}

std::vector<std::size_t> parse_indices(std::istream& in, std::size_t n)
{
    std::vector<std::size_t> idx;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::size_t pos = 0;
        unsigned long long v = std::stoull(line, &pos);
        if (pos != line.size())
            throw std::invalid_argument("malformed index line: " + line);
        if (v >= n)
            throw std::invalid_argument("index out of range: " + line);
        idx.push_back(static_cast<std::size_t>(v));
    }
    return idx;
}

}  // namespace

FrozenSet read_frozen_set_file(std::istream& in)
{
    const Header h = parse_header(in);
    auto idx = parse_indices(in, h.n);
    if (idx.size() != h.n - h.k)
        throw std::invalid_argument("index count does not match N-K");
    auto out_of_order = std::adjacent_find(idx.begin(), idx.end(),
                                           [](std::size_t a, std::size_t b) { return a >= b; });
    if (out_of_order != idx.end())
        throw std::invalid_argument("frozen-set indices must be strictly ascending");
    return FrozenSet(h.n, std::move(idx));
}

FrozenSet load_frozen_set(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open frozen-set file: " + path);
    return read_frozen_set_file(in);
}

void write_frozen_set_file(std::ostream& out, const FrozenSet& f)
{
    out << "N=" << f.code_length << " K=" << f.dimension() << "\n";
    for (std::size_t i : f.indices)
        out << i << "\n";
}

void save_frozen_set(const std::string& path, const FrozenSet& f)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write frozen-set file: " + path);
    write_frozen_set_file(out, f);
}

ReliabilityOrder read_reliability_order_file(std::istream& in)
{
    const Header h = parse_header(in);
    auto idx = parse_indices(in, h.n);
    if (idx.size() != h.n)
        throw std::invalid_argument("order file must list all N positions");
    std::vector<std::uint8_t> seen(h.n, 0);
    for (std::size_t i : idx) {
        if (seen[i])
            throw std::invalid_argument("order file is not a permutation");
        seen[i] = 1;
    }
    ReliabilityOrder order;
    order.code_length = h.n;
    order.order = std::move(idx);
    return order;
}

ReliabilityOrder load_reliability_order(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open order file: " + path);
    return read_reliability_order_file(in);
}

void write_reliability_order_file(std::ostream& out, const ReliabilityOrder& order)
{
    out << "N=" << order.code_length << " K=0\n";
    for (std::size_t i : order.order)
        out << i << "\n";
}

void save_reliability_order(const std::string& path, const ReliabilityOrder& order)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write order file: " + path);
    write_reliability_order_file(out, order);
}

}  // namespace ppc
