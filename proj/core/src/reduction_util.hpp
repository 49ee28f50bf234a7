#ifndef MODQ_REDUCTION_UTIL_HPP
#define MODQ_REDUCTION_UTIL_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "modq/instance.hpp"

namespace modq::detail {

// Successor of v inside a hyperedge given as a sorted member list.
inline std::uint64_t cyclic_succ(const std::vector<std::uint64_t>& sorted_members,
                                 std::uint64_t v) {
    auto it = std::lower_bound(sorted_members.begin(), sorted_members.end(), v);
    if (it == sorted_members.end() || *it != v)
        throw precondition_error("cyclic_succ: vertex not a member of its own hyperedge");
    ++it;
    return it == sorted_members.end() ? sorted_members.front() : *it;
}

// A solution that verifies against no graph instance (vertex out of domain).
inline Solution impossible_solution() {
    return VertexSol{~std::uint64_t{0}};
}

// The block of `block_size` consecutive items containing position `idx`.
template <typename T>
std::vector<T> block_of(const std::vector<T>& items, std::size_t idx, int block_size) {
    std::size_t start = idx / static_cast<std::size_t>(block_size) *
                        static_cast<std::size_t>(block_size);
    std::vector<T> out;
    for (std::size_t i = start; i < start + static_cast<std::size_t>(block_size); ++i)
        out.push_back(items[i]);
    return out;
}

// Confirmed hyperedges through v under the Leaf rule, lexicographically
// sorted so positional labels are canonical.
inline std::vector<std::vector<std::uint64_t>> sorted_leaf_edges(int cap,
                                                                 const SubsetListMap& C,
                                                                 std::uint64_t domain_size,
                                                                 int q, std::uint64_t v) {
    auto edges = leaf_edges(cap, C, domain_size, q, v);
    std::sort(edges.begin(), edges.end());
    return edges;
}

// Position of `e` in v's sorted confirmed-edge list, or -1.
inline long long leaf_edge_pos(int cap, const SubsetListMap& C, std::uint64_t domain_size,
                               int q, std::uint64_t v, const std::vector<std::uint64_t>& e) {
    auto edges = sorted_leaf_edges(cap, C, domain_size, q, v);
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i] == e) return static_cast<long long>(i);
    return -1;
}

}  // namespace modq::detail

#endif
