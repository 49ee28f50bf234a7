#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "modq/poly.hpp"

using namespace modq;

namespace {

// ---------------------------------------------------------------------------
// Oracles (independent re-implementations used as references below).
// ---------------------------------------------------------------------------

// Oracle: evaluate a monomial / explicit polynomial by direct arithmetic.
int oracle_eval_monomial(int p, const MonicMonomial& m, const Point& x) {
    long long r = 1;
    for (auto& [v, e] : m.exps)
        for (int i = 0; i < e; ++i) r = r * x[static_cast<std::size_t>(v)] % p;
    return static_cast<int>(((r % p) + p) % p);
}

int oracle_eval(const ExplicitPolynomial& f, const Point& x) {
    long long s = 0;
    for (auto& t : f.terms) s += oracle_eval_monomial(f.p, t, x);
    return static_cast<int>(s % f.p);
}

// Oracle: all points of F_p^n in lexicographic order.
std::vector<Point> all_points(int p, int n) {
    std::vector<Point> out;
    Point x(static_cast<std::size_t>(n), 0);
    while (true) {
        out.push_back(x);
        int i = n - 1;
        while (i >= 0 && x[static_cast<std::size_t>(i)] == p - 1)
            x[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++x[static_cast<std::size_t>(i)];
    }
    return out;
}

// Oracle: is the tuple max-degree?  Sum the exponents per variable over the
// selected terms and fold the total; every variable must land on p-1.
bool oracle_is_max_degree(const std::vector<CWFactor>& factors, int p, int n_vars,
                          const std::vector<int>& pick) {
    std::vector<long long> deg(static_cast<std::size_t>(n_vars), 0);
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (auto& [v, e] : factors[i].poly.terms[static_cast<std::size_t>(pick[i])].exps)
            deg[static_cast<std::size_t>(v)] += e;
    for (long long d : deg) {
        if (d == 0) return false;
        if ((d - 1) % (p - 1) + 1 != p - 1) return false;
    }
    return true;
}

// Oracle: full cartesian scan over all tuples.
std::vector<std::vector<int>> oracle_max_tuples(const std::vector<CWFactor>& factors, int p,
                                                int n_vars) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick(factors.size(), 0);
    while (true) {
        if (oracle_is_max_degree(factors, p, n_vars, pick)) out.push_back(pick);
        std::size_t i = factors.size();
        while (i > 0 &&
               pick[i - 1] + 1 == static_cast<int>(factors[i - 1].poly.terms.size()))
            pick[--i] = 0;
        if (i == 0) break;
        ++pick[i - 1];
    }
    return out;
}

// Random explicit polynomial (possibly with a constant term).
ExplicitPolynomial random_poly(int p, int n, int max_terms, int max_deg,
                               std::mt19937_64& rng, bool zecote) {
    ExplicitPolynomial f{p, n, {}};
    int nt = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
    for (int t = 0; t < nt; ++t) {
        MonicMonomial m;
        int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg + 1));
        if (zecote && deg == 0) deg = 1;
        for (int d = 0; d < deg; ++d)
            ++m.exps[static_cast<int>(rng() % static_cast<std::uint64_t>(n))];
        int copies = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(p - 1));
        for (int c = 0; c < copies; ++c) f.terms.push_back(m);
    }
    f.normalize();
    return f;
}

} // namespace

TEST_CASE("canonical monomial order: constant first, then degree, then dense-lex") {
    MonicMonomial one;
    MonicMonomial x0 = make_monomial({{0, 1}});
    MonicMonomial x1 = make_monomial({{1, 1}});
    MonicMonomial x0sq = make_monomial({{0, 2}});
    MonicMonomial x0x1 = make_monomial({{0, 1}, {1, 1}});
    CHECK(one < x0);
    CHECK(x1 < x0);       // degree tie: dense vectors (0,1) < (1,0) ascending lex
    CHECK(x1 < x0sq);     // degree 1 before degree 2
    CHECK(x0x1 < x0sq);   // (1,1) < (2,0) in ascending dense-lex
    CHECK(!(x0 < x0));
    CHECK(x0 == make_monomial({{0, 1}}));
}

TEST_CASE("monomial product, degree, folding") {
    PrimeField f3(3);
    auto m = make_monomial({{0, 4}, {2, 1}});
    CHECK(m.total_degree() == 5);
    CHECK(m.degree_in(0) == 4);
    CHECK(m.degree_in(1) == 0);
    auto folded = m.folded(f3);
    CHECK(folded.degree_in(0) == 2); // 4 -> ((4-1) mod 2) + 1 = 2
    CHECK(folded.degree_in(2) == 1);
    auto prod = make_monomial({{0, 1}}) * make_monomial({{0, 2}, {1, 1}});
    CHECK(prod == make_monomial({{0, 3}, {1, 1}}));
}

TEST_CASE("explicit and collected evaluation match the oracle") {
    std::mt19937_64 rng(12345);
    for (int p : {2, 3, 5})
        for (int n : {1, 2, 3})
            for (int rep = 0; rep < 20; ++rep) {
                auto f = random_poly(p, n, 4, 3, rng, false);
                auto cf = collect(f);
                auto back = expand(cf);
                for (auto& x : all_points(p, n)) {
                    int want = oracle_eval(f, x);
                    CHECK(f.eval(x) == want);
                    CHECK(cf.eval(x) == want);
                    CHECK(back.eval(x) == want);
                }
                CHECK(back.is_normalized());
            }
}

TEST_CASE("coefficient arithmetic agrees pointwise") {
    std::mt19937_64 rng(777);
    for (int p : {2, 3, 5}) {
        PrimeField fld(p);
        for (int rep = 0; rep < 15; ++rep) {
            auto a = collect(random_poly(p, 2, 3, 2, rng, false));
            auto b = collect(random_poly(p, 2, 3, 2, rng, false));
            auto sum = cp_add(a, b);
            auto prod = cp_mul(a, b);
            auto folded = cp_fold(prod);
            auto scaled = cp_scale(a, p - 1);
            for (auto& x : all_points(p, 2)) {
                CHECK(sum.eval(x) == fld.add(a.eval(x), b.eval(x)));
                CHECK(prod.eval(x) == fld.mul(a.eval(x), b.eval(x)));
                CHECK(folded.eval(x) == prod.eval(x));
                CHECK(scaled.eval(x) == fld.mul(p - 1, a.eval(x)));
            }
            for (auto& [m, c] : folded.coeffs) {
                (void)c;
                for (auto& [v, e] : m.exps) {
                    (void)v;
                    CHECK(e <= p - 1);
                }
            }
        }
    }
}

TEST_CASE("cw_factor is pointwise 1 - f(x)^{p-1}") {
    std::mt19937_64 rng(424242);
    for (int p : {2, 3, 5})
        for (int rep = 0; rep < 15; ++rep) {
            auto f = random_poly(p, 2, 3, 3, rng, true);
            PrimeField fld(p);
            auto cw = cw_factor(f);
            for (auto& x : all_points(p, 2)) {
                int want = fld.sub(1, fld.pow(f.eval(x), static_cast<std::uint64_t>(p - 1)));
                CHECK(cw.poly.eval(x) == want);
                CHECK(cw.poly.eval(x) == (f.eval(x) == 0 ? 1 : 0));
            }
            // Zecote input: exactly one constant term, first in canonical order.
            REQUIRE(!cw.poly.terms.empty());
            CHECK(cw.poly.terms.front().is_constant());
            CHECK(std::count_if(cw.poly.terms.begin(), cw.poly.terms.end(),
                                [](const MonicMonomial& m) { return m.is_constant(); }) == 1);
        }
}

TEST_CASE("is_max_degree and enumerate_max_degree match the exhaustive oracle") {
    std::mt19937_64 rng(9001);
    for (int p : {2, 3})
        for (int n : {1, 2, 3})
            for (int rep = 0; rep < 12; ++rep) {
                PolynomialSystem sys{p, n, {}};
                int m = 1 + static_cast<int>(rng() % 2);
                for (int i = 0; i < m; ++i)
                    sys.polys.push_back(random_poly(p, n, 3, 2, rng, true));
                auto factors = cw_factors(sys);
                auto want = oracle_max_tuples(factors, p, n);
                Budget budget;
                auto got = enumerate_max_degree(factors, p, n, budget);
                REQUIRE(got.size() == want.size());
                for (std::size_t i = 0; i < got.size(); ++i) {
                    CHECK(got[i].idx == want[i]);
                    CHECK(is_max_degree(factors, n, got[i]));
                }
            }
}

TEST_CASE("variety matches brute enumeration and check_cw_lemma is congruent") {
    std::mt19937_64 rng(5150);
    for (int p : {2, 3, 5})
        for (int rep = 0; rep < 12; ++rep) {
            int n = 1 + static_cast<int>(rng() % 3);
            PolynomialSystem sys{p, n, {}};
            int m = 1 + static_cast<int>(rng() % 2);
            for (int i = 0; i < m; ++i)
                sys.polys.push_back(random_poly(p, n, 3, 3, rng, true));
            REQUIRE(sys.is_zecote());
            Budget budget;
            auto pts = variety(sys, budget);
            std::vector<Point> want;
            for (auto& x : all_points(p, n)) {
                bool zero = true;
                for (auto& f : sys.polys) zero = zero && oracle_eval(f, x) == 0;
                if (zero) want.push_back(x);
            }
            CHECK(pts == want);

            Budget b2;
            auto rep2 = check_cw_lemma(sys, b2);
            CHECK(rep2.variety_size == want.size());
            CHECK(rep2.congruent);
            // Independent congruence check: |V| = (-1)^n |M| mod p.
            long long lhs = static_cast<long long>(rep2.variety_size) % p;
            long long rhs = static_cast<long long>(rep2.max_tuple_count) % p;
            if (n % 2 == 1) rhs = (p - rhs) % p;
            CHECK(lhs == rhs);
        }
}

TEST_CASE("parse and print round-trip") {
    auto f = parse_polynomial("2*x1^2 + x2 - x1*x3", 5, 3);
    CHECK(f.n_vars == 3);
    for (auto& x : all_points(5, 3)) {
        int want = ((2 * x[0] * x[0] + x[1] - x[0] * x[2]) % 5 + 5) % 5;
        CHECK(f.eval(x) == want);
    }
    auto g = parse_polynomial(f.str(), 5, 3);
    CHECK(collect(g).coeffs == collect(f).coeffs);

    auto sys = parse_system({"x1 + x2", "x1^2"}, 3, 2);
    CHECK(sys.polys.size() == 2);
    CHECK(sys.is_zecote());
    CHECK_THROWS_AS(parse_polynomial("x0", 3, 2), format_error);   // 1-based indices
    CHECK_THROWS_AS(parse_polynomial("x3", 3, 2), format_error);   // out of range
    CHECK_THROWS_AS(parse_polynomial("x1 +* x2", 3, 2), format_error);
}

TEST_CASE("degree_sum and zecote flags") {
    auto sys = parse_system({"x1*x2 + x3", "x1^2"}, 3, 3);
    CHECK(sys.degree_sum() == 4);
    CHECK(sys.is_zecote());
    auto sys2 = parse_system({"x1 + 1"}, 3, 1);
    CHECK(!sys2.is_zecote());
}
