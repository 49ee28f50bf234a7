#include "modq/field.hpp"

namespace modq {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(int p) : p_(p) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw precondition_error("PrimeField: " + std::to_string(p) + " is not prime");
}

int PrimeField::pow(int a, std::uint64_t e) const {
    long long base = reduce(a), acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<int>(acc);
}

int PrimeField::inv(int a) const {
    a = reduce(a);
    if (a == 0) throw precondition_error("PrimeField::inv: zero has no inverse");
    return pow(a, static_cast<std::uint64_t>(p_) - 2);
}

int binomial_mod_p(std::uint64_t n, std::uint64_t k, int p) {
    if (!is_prime(static_cast<std::uint64_t>(p)))
        throw precondition_error("binomial_mod_p: modulus must be prime");
    if (k > n) return 0;
    PrimeField f(p);
    // One small-case table C(a, b) for digits a, b < p.
    std::vector<std::vector<int>> small(p, std::vector<int>(p, 0));
    small[0][0] = 1;
    for (int a = 1; a < p; ++a) {
        small[a][0] = 1;
        for (int b = 1; b <= a; ++b)
            small[a][b] = f.add(small[a - 1][b - 1], small[a - 1][b]);
    }
    int acc = 1;
    while (n || k) {
        int nd = static_cast<int>(n % p), kd = static_cast<int>(k % p);
        if (kd > nd) return 0;
        acc = f.mul(acc, small[nd][kd]);
        n /= p;
        k /= p;
    }
    return acc;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    if (n == 0) throw precondition_error("factorize: zero has no factorization");
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int exponent_sum(std::uint64_t q) {
    int s = 0;
    for (auto& [p, e] : factorize(q)) {
        (void)p;
        s += e;
    }
    return s;
}

} // namespace modq
