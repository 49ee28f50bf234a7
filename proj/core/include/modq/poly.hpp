#ifndef MODQ_POLY_HPP
#define MODQ_POLY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modq/error.hpp"
#include "modq/field.hpp"

namespace modq {

// An assignment of field elements to variables x_0..x_{n-1}.
using Point = std::vector<int>;

// A monomial with coefficient 1, e.g. x_0^2 * x_3.  Exponents are kept
// sparse (variable index -> exponent > 0).  The empty map is the constant 1.
struct MonicMonomial {
    std::map<int, int> exps;

    long long total_degree() const;
    int degree_in(int var) const;
    bool is_constant() const { return exps.empty(); }

    int eval(const PrimeField& f, const Point& x) const;

    // Reduce exponents modulo the relation x^p = x.
    MonicMonomial folded(const PrimeField& f) const;

    MonicMonomial operator*(const MonicMonomial& o) const;

    // Canonical order: by total degree, then lexicographically on the dense
    // exponent vector (ascending).  The constant monomial comes first.
    bool operator<(const MonicMonomial& o) const;
    bool operator==(const MonicMonomial& o) const { return exps == o.exps; }
    bool operator!=(const MonicMonomial& o) const { return !(*this == o); }

    std::string str() const;
};

MonicMonomial make_monomial(std::initializer_list<std::pair<int, int>> exps);

// A polynomial as an ordered list of monic monomials; writing a coefficient
// c means repeating the monomial c times.  Terms are kept in canonical order
// (normalize() restores it after hand edits).
struct ExplicitPolynomial {
    int p = 2;
    int n_vars = 0;
    std::vector<MonicMonomial> terms;

    void normalize();
    bool is_normalized() const;

    int eval(const Point& x) const;
    long long max_term_degree() const;
    // True iff no term is the constant monomial ("zecote": zero constant
    // term, which for explicit polynomials over F_p we read syntactically
    // after collection).
    bool is_zecote() const;

    // Distinct monomials with nonzero collected coefficient, canonical order.
    std::vector<MonicMonomial> distinct_monomials() const;

    std::string str() const;
};

// Collected form: monomial -> coefficient in 1..p-1 (zero coefficients are
// dropped).  The map ordering is the canonical monomial order.
struct CoefficientPolynomial {
    int p = 2;
    int n_vars = 0;
    std::map<MonicMonomial, int> coeffs;

    int eval(const Point& x) const;
    std::string str() const;
};

CoefficientPolynomial collect(const ExplicitPolynomial& f);
ExplicitPolynomial expand(const CoefficientPolynomial& f);

CoefficientPolynomial cp_add(const CoefficientPolynomial& a, const CoefficientPolynomial& b);
CoefficientPolynomial cp_scale(const CoefficientPolynomial& a, int c);
CoefficientPolynomial cp_mul(const CoefficientPolynomial& a, const CoefficientPolynomial& b);
// Fold every monomial's exponents modulo x^p = x and re-collect.
CoefficientPolynomial cp_fold(const CoefficientPolynomial& a);

// A system f = (f_1, ..., f_m) over a common variable set.
struct PolynomialSystem {
    int p = 2;
    int n_vars = 0;
    std::vector<ExplicitPolynomial> polys;

    bool is_zecote() const;
    long long degree_sum() const; // sum of max term degrees
    std::vector<int> eval(const Point& x) const;
    bool vanishes_at(const Point& x) const;
};

// The expanded explicit form of 1 - f_i^{p-1}, exponents folded.  For a
// zecote f_i the constant monomial appears exactly once and, by the
// canonical order, at index 0.
struct CWFactor {
    ExplicitPolynomial poly;
};

CWFactor cw_factor(const ExplicitPolynomial& f);
std::vector<CWFactor> cw_factors(const PolynomialSystem& sys);

// One term index per factor.
struct MonomialTuple {
    std::vector<int> idx;
    bool operator==(const MonomialTuple& o) const { return idx == o.idx; }
    bool operator<(const MonomialTuple& o) const { return idx < o.idx; }
};

// Does the product of the selected terms fold to x_0^{p-1} * ... *
// x_{n-1}^{p-1}?
bool is_max_degree(const std::vector<CWFactor>& factors, int n_vars,
                   const MonomialTuple& t);

// All max-degree tuples, in lexicographic tuple order.  Internally a pruned
// backtracking search (a branch dies as soon as some variable can no longer
// reach folded degree p-1); the budget is charged per visited search node.
std::vector<MonomialTuple> enumerate_max_degree(const std::vector<CWFactor>& factors,
                                                int p, int n_vars, Budget& budget);

// Common roots of the system, in lexicographic point order.
std::vector<Point> variety(const PolynomialSystem& sys, Budget& budget);

struct CwLemmaReport {
    std::uint64_t variety_size = 0;
    std::uint64_t max_tuple_count = 0;
    bool congruent = false; // |V_f| == (-1)^n |M_f| (mod p)
};

CwLemmaReport check_cw_lemma(const PolynomialSystem& sys, Budget& budget);

// Textual format: terms joined with '+'/'-', each term an optional integer
// coefficient and '*'-separated powers "x<i>^<e>" with 1-based variable
// indices, e.g. "2*x1^2 + x2 - x1*x3".
ExplicitPolynomial parse_polynomial(const std::string& text, int p, int n_vars);
PolynomialSystem parse_system(const std::vector<std::string>& lines, int p, int n_vars);

} // namespace modq

#endif
