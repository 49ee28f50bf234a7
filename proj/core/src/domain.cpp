#include "modq/domain.hpp"

#include <algorithm>
#include <limits>

namespace modq {

std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b, const char* where) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw budget_exceeded(std::string(where) + ": 64-bit size overflow");
    return a * b;
}

std::uint64_t checked_pow_u64(std::uint64_t base, unsigned exp, const char* where) {
    std::uint64_t acc = 1;
    for (unsigned i = 0; i < exp; ++i) acc = checked_mul_u64(acc, base, where);
    return acc;
}

std::uint64_t binom_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // acc * (n-k+i) / i is always integral when divided in this order,
        // but guard the intermediate product.
        std::uint64_t num = checked_mul_u64(acc, n - k + i, "binom_u64");
        acc = num / i;
    }
    return acc;
}

std::uint64_t subset_rank(const std::vector<std::uint64_t>& sorted_elems) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < sorted_elems.size(); ++i) {
        if (i > 0 && sorted_elems[i] <= sorted_elems[i - 1])
            throw precondition_error("subset_rank: elements must be strictly increasing");
        r += binom_u64(sorted_elems[i], static_cast<std::uint64_t>(i) + 1);
    }
    return r;
}

std::vector<std::uint64_t> subset_unrank(std::uint64_t rank, std::uint64_t n, int k) {
    if (k > 0 && n == 0) throw precondition_error("subset_unrank: empty base set");
    std::vector<std::uint64_t> out(static_cast<std::size_t>(k));
    std::uint64_t e = n;
    for (int i = k; i >= 1; --i) {
        // Largest element (strictly below the previous one) whose binomial
        // fits under the remaining rank.
        do {
            --e;
        } while (binom_u64(e, static_cast<std::uint64_t>(i)) > rank);
        rank -= binom_u64(e, static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i - 1)] = e;
    }
    if (rank != 0) throw precondition_error("subset_unrank: rank out of range");
    return out;
}

std::uint64_t qary_rank(const std::vector<int>& digits, int q) {
    std::uint64_t r = 0;
    for (int d : digits) {
        if (d < 0 || d >= q) throw precondition_error("qary_rank: digit out of range");
        r = checked_mul_u64(r, static_cast<std::uint64_t>(q), "qary_rank") +
            static_cast<std::uint64_t>(d);
    }
    return r;
}

std::vector<int> qary_unrank(std::uint64_t rank, int q, int n) {
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<int>(rank % static_cast<std::uint64_t>(q));
        rank /= static_cast<std::uint64_t>(q);
    }
    if (rank != 0) throw precondition_error("qary_unrank: rank out of range");
    return out;
}

VertexDomain VertexDomain::plain(std::uint64_t size) {
    VertexDomain d;
    d.kind_ = Kind::Plain;
    d.size_ = size;
    return d;
}

VertexDomain VertexDomain::qary(int q, int n) {
    if (q < 1 || n < 0) throw precondition_error("VertexDomain::qary: bad parameters");
    VertexDomain d;
    d.kind_ = Kind::Qary;
    d.q_ = q;
    d.n_ = n;
    d.size_ = checked_pow_u64(static_cast<std::uint64_t>(q), static_cast<unsigned>(n),
                              "VertexDomain::qary");
    return d;
}

VertexDomain VertexDomain::subsets(std::uint64_t base_size, int k) {
    if (k < 0) throw precondition_error("VertexDomain::subsets: negative k");
    VertexDomain d;
    d.kind_ = Kind::Subsets;
    d.base_size_ = base_size;
    d.k_ = k;
    d.size_ = binom_u64(base_size, static_cast<std::uint64_t>(k));
    return d;
}

VertexDomain VertexDomain::disjoint_union(std::vector<VertexDomain> parts) {
    VertexDomain d;
    d.kind_ = Kind::Union;
    d.size_ = 0;
    for (auto& part : parts) d.size_ += part.size();
    d.children_ = std::make_shared<std::vector<VertexDomain>>(std::move(parts));
    return d;
}

VertexDomain VertexDomain::product(VertexDomain base, std::uint64_t copies) {
    VertexDomain d;
    d.kind_ = Kind::Product;
    d.copies_ = copies;
    d.size_ = checked_mul_u64(base.size(), copies, "VertexDomain::product");
    d.children_ = std::make_shared<std::vector<VertexDomain>>(
        std::vector<VertexDomain>{std::move(base)});
    return d;
}

std::vector<int> VertexDomain::digits(std::uint64_t rank) const {
    if (kind_ != Kind::Qary) throw precondition_error("VertexDomain::digits: not a q-ary domain");
    return qary_unrank(rank, q_, n_);
}

std::uint64_t VertexDomain::rank_digits(const std::vector<int>& digits) const {
    if (kind_ != Kind::Qary) throw precondition_error("VertexDomain::rank_digits: not a q-ary domain");
    if (static_cast<int>(digits.size()) != n_)
        throw precondition_error("VertexDomain::rank_digits: wrong arity");
    return qary_rank(digits, q_);
}

std::vector<std::uint64_t> VertexDomain::elements(std::uint64_t rank) const {
    if (kind_ != Kind::Subsets) throw precondition_error("VertexDomain::elements: not a subset domain");
    return subset_unrank(rank, base_size_, k_);
}

std::uint64_t VertexDomain::rank_elements(const std::vector<std::uint64_t>& sorted_elems) const {
    if (kind_ != Kind::Subsets)
        throw precondition_error("VertexDomain::rank_elements: not a subset domain");
    if (static_cast<int>(sorted_elems.size()) != k_)
        throw precondition_error("VertexDomain::rank_elements: wrong subset size");
    return subset_rank(sorted_elems);
}

const std::vector<VertexDomain>& VertexDomain::parts() const {
    if (kind_ != Kind::Union) throw precondition_error("VertexDomain::parts: not a union domain");
    return *children_;
}

std::pair<std::size_t, std::uint64_t> VertexDomain::locate(std::uint64_t rank) const {
    const auto& ps = parts();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (rank < ps[i].size()) return {i, rank};
        rank -= ps[i].size();
    }
    throw precondition_error("VertexDomain::locate: rank out of range");
}

std::uint64_t VertexDomain::offset_of_part(std::size_t part) const {
    const auto& ps = parts();
    if (part >= ps.size()) throw precondition_error("VertexDomain::offset_of_part: no such part");
    std::uint64_t off = 0;
    for (std::size_t i = 0; i < part; ++i) off += ps[i].size();
    return off;
}

const VertexDomain& VertexDomain::base() const {
    if (kind_ != Kind::Product) throw precondition_error("VertexDomain::base: not a product domain");
    return children_->front();
}

std::pair<std::uint64_t, std::uint64_t> VertexDomain::split(std::uint64_t rank) const {
    if (kind_ != Kind::Product) throw precondition_error("VertexDomain::split: not a product domain");
    return {rank / copies_, rank % copies_};
}

std::uint64_t VertexDomain::join(std::uint64_t base_rank, std::uint64_t copy) const {
    if (kind_ != Kind::Product) throw precondition_error("VertexDomain::join: not a product domain");
    if (copy >= copies_) throw precondition_error("VertexDomain::join: copy index out of range");
    return checked_mul_u64(base_rank, copies_, "VertexDomain::join") + copy;
}

} // namespace modq
