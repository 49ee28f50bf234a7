#ifndef MODQ_FIELD_HPP
#define MODQ_FIELD_HPP

#include <cstdint>
#include <vector>

#include "modq/error.hpp"

namespace modq {

bool is_prime(std::uint64_t n);

// Arithmetic in F_p for a small prime p.  Elements are canonical
// representatives 0..p-1 stored as int; all entry points reduce their
// arguments, so callers may pass any int (including negatives).
class PrimeField {
public:
    explicit PrimeField(int p);

    int p() const { return p_; }

    int reduce(long long a) const {
        long long r = a % p_;
        return static_cast<int>(r < 0 ? r + p_ : r);
    }
    int add(int a, int b) const { return reduce(static_cast<long long>(reduce(a)) + reduce(b)); }
    int sub(int a, int b) const { return reduce(static_cast<long long>(reduce(a)) - reduce(b)); }
    int neg(int a) const { return reduce(-static_cast<long long>(reduce(a))); }
    int mul(int a, int b) const { return reduce(static_cast<long long>(reduce(a)) * reduce(b)); }
    int pow(int a, std::uint64_t e) const;
    int inv(int a) const; // precondition_error on 0

    // ((e-1) mod (p-1)) + 1 for e > 0; 0 stays 0.  This is exponent reduction
    // modulo the relation x^p = x, so folded powers agree pointwise on F_p.
    int fold_exponent(long long e) const {
        if (e < 0) throw precondition_error("fold_exponent: negative exponent");
        if (e == 0) return 0;
        return static_cast<int>((e - 1) % (p_ - 1)) + 1;
    }

private:
    int p_;
};

// Binomial coefficient C(n, k) mod p via the base-p digit product rule.
int binomial_mod_p(std::uint64_t n, std::uint64_t k, int p);

// Prime factorization (trial division; inputs are small moduli).
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
// N(q): sum of exponents in the prime factorization; N(1) = 0.
int exponent_sum(std::uint64_t q);

} // namespace modq

#endif
