#ifndef MODQ_DOMAIN_HPP
#define MODQ_DOMAIN_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "modq/error.hpp"

namespace modq {

// Overflow-checked helpers (everything indexable must fit in 64 bits).
std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b, const char* where);
std::uint64_t checked_pow_u64(std::uint64_t base, unsigned exp, const char* where);
std::uint64_t binom_u64(std::uint64_t n, std::uint64_t k); // throws on overflow

// Combinatorial number system: rank of a k-subset {e_0 < ... < e_{k-1}} of
// {0..N-1} is sum C(e_i, i+1); subsets of equal size are ordered by rank.
std::uint64_t subset_rank(const std::vector<std::uint64_t>& sorted_elems);
std::vector<std::uint64_t> subset_unrank(std::uint64_t rank, std::uint64_t n, int k);

// Base-q digit codecs for [q]^n; digit 0 is the most significant, so rank
// order equals lexicographic order on digit strings.
std::uint64_t qary_rank(const std::vector<int>& digits, int q);
std::vector<int> qary_unrank(std::uint64_t rank, int q, int n);

// A finite enumerable vertex set with a rank/unrank bijection onto
// {0..size-1}.  Built from q-ary strings, k-subsets, tagged disjoint unions,
// products with [t], or a plain size.
class VertexDomain {
public:
    enum class Kind { Plain, Qary, Subsets, Union, Product };

    static VertexDomain plain(std::uint64_t size);
    static VertexDomain qary(int q, int n);
    static VertexDomain bits(int n) { return qary(2, n); }
    static VertexDomain subsets(std::uint64_t base_size, int k);
    static VertexDomain disjoint_union(std::vector<VertexDomain> parts);
    static VertexDomain product(VertexDomain base, std::uint64_t copies);

    Kind kind() const { return kind_; }
    std::uint64_t size() const { return size_; }

    // Qary accessors.
    int q() const { return q_; }
    int n() const { return n_; }
    std::vector<int> digits(std::uint64_t rank) const;
    std::uint64_t rank_digits(const std::vector<int>& digits) const;

    // Subsets accessors.
    std::uint64_t base_size() const { return base_size_; }
    int k() const { return k_; }
    std::vector<std::uint64_t> elements(std::uint64_t rank) const;
    std::uint64_t rank_elements(const std::vector<std::uint64_t>& sorted_elems) const;

    // Union accessors: parts are laid out consecutively in declaration order.
    const std::vector<VertexDomain>& parts() const;
    std::pair<std::size_t, std::uint64_t> locate(std::uint64_t rank) const; // (part, local)
    std::uint64_t offset_of_part(std::size_t part) const;

    // Product accessors: rank = base_rank * copies + copy.
    const VertexDomain& base() const;
    std::uint64_t copies() const { return copies_; }
    std::pair<std::uint64_t, std::uint64_t> split(std::uint64_t rank) const; // (base, copy)
    std::uint64_t join(std::uint64_t base_rank, std::uint64_t copy) const;

private:
    VertexDomain() = default;
    Kind kind_ = Kind::Plain;
    std::uint64_t size_ = 0;
    int q_ = 0, n_ = 0;                  // Qary
    std::uint64_t base_size_ = 0;        // Subsets
    int k_ = 0;                          // Subsets
    std::uint64_t copies_ = 0;           // Product
    std::shared_ptr<std::vector<VertexDomain>> children_; // Union parts / Product base
};

} // namespace modq

#endif
