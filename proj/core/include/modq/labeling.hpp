#ifndef MODQ_LABELING_HPP
#define MODQ_LABELING_HPP

#include <vector>

#include "modq/poly.hpp"

namespace modq {

// A {-1, 0, +1} label for every distinct monomial of every polynomial of a
// system.  rows[i][j] labels the j-th distinct monomial of polys[i] in
// canonical order (coefficient copies of a monomial share one label).
struct Labeling {
    std::vector<std::vector<int>> rows;

    static Labeling trivial(const PolynomialSystem& sys);
};

// Max degree among monomials of `poly` labeled 0 or -1 (0 if all are +1).
long long labeled_degree(const ExplicitPolynomial& poly, const std::vector<int>& row);
long long labeled_degree_sum(const PolynomialSystem& sys, const Labeling& lab);

// 0 if proper; otherwise the id (1..6) of the first violated condition:
//   1: each polynomial is labeled all-{+1,-1} or all-0
//   2: monomials of one polynomial sharing a variable share a label
//   3: -1 monomials are multilinear
//   4: a variable in a -1 monomial appears in other polynomials only in
//      +1 monomials
//   5: a polynomial with a nonzero label has a -1 monomial
//   6: the labeling graph is acyclic
int proper_labeling_check(const PolynomialSystem& sys, const Labeling& lab);

struct LabeledCwtReport {
    long long labeled_degree_sum = 0;
    std::uint64_t max_tuple_count = 0; // provably 0 when preconditions hold
};

// Preconditions: lab proper and sum of labeled degrees < n_vars; errors name
// the failed premise.  Reports the (necessarily zero) max-degree tuple count.
LabeledCwtReport check_labeled_cwt(const PolynomialSystem& sys, const Labeling& lab,
                                   Budget& budget);

} // namespace modq

#endif
