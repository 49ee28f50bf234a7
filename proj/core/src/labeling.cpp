#include "modq/labeling.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace modq {

Labeling Labeling::trivial(const PolynomialSystem& sys) {
    Labeling lab;
    for (auto& f : sys.polys)
        lab.rows.emplace_back(f.distinct_monomials().size(), 0);
    return lab;
}

long long labeled_degree(const ExplicitPolynomial& poly, const std::vector<int>& row) {
    auto monos = poly.distinct_monomials();
    if (row.size() != monos.size())
        throw precondition_error("labeled_degree: labeling row does not cover the polynomial");
    long long d = 0;
    for (std::size_t j = 0; j < monos.size(); ++j)
        if (row[j] != +1) d = std::max(d, monos[j].total_degree());
    return d;
}

long long labeled_degree_sum(const PolynomialSystem& sys, const Labeling& lab) {
    if (lab.rows.size() != sys.polys.size())
        throw precondition_error("labeled_degree_sum: labeling does not cover the system");
    long long s = 0;
    for (std::size_t i = 0; i < sys.polys.size(); ++i)
        s += labeled_degree(sys.polys[i], lab.rows[i]);
    return s;
}

int proper_labeling_check(const PolynomialSystem& sys, const Labeling& lab) {
    std::size_t m = sys.polys.size();
    if (lab.rows.size() != m)
        throw precondition_error("proper_labeling_check: labeling does not cover the system");
    std::vector<std::vector<MonicMonomial>> monos(m);
    for (std::size_t i = 0; i < m; ++i) {
        monos[i] = sys.polys[i].distinct_monomials();
        if (lab.rows[i].size() != monos[i].size())
            throw precondition_error("proper_labeling_check: labeling row " + std::to_string(i) +
                                     " does not cover the polynomial");
        for (int l : lab.rows[i])
            if (l < -1 || l > 1)
                throw precondition_error("proper_labeling_check: label outside {-1,0,+1}");
    }

    // (1) each polynomial all-{+1,-1} or all-0
    for (std::size_t i = 0; i < m; ++i) {
        bool any_zero = false, any_nonzero = false;
        for (int l : lab.rows[i]) (l == 0 ? any_zero : any_nonzero) = true;
        if (any_zero && any_nonzero) return 1;
    }
    // (2) shared variable within a polynomial => shared label
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < monos[i].size(); ++j)
            for (std::size_t j2 = j + 1; j2 < monos[i].size(); ++j2) {
                if (lab.rows[i][j] == lab.rows[i][j2]) continue;
                for (auto& [v, e] : monos[i][j].exps) {
                    (void)e;
                    if (monos[i][j2].degree_in(v) > 0) return 2;
                }
            }
    // (3) -1 monomials are multilinear
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < monos[i].size(); ++j)
            if (lab.rows[i][j] == -1)
                for (auto& [v, e] : monos[i][j].exps) {
                    (void)v;
                    if (e > 1) return 3;
                }
    // (4) a variable of a -1 monomial meets only +1 monomials elsewhere
    {
        std::map<int, std::set<std::size_t>> minus_polys; // var -> polys with a -1 monomial on it
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < monos[i].size(); ++j)
                if (lab.rows[i][j] == -1)
                    for (auto& [v, e] : monos[i][j].exps) {
                        (void)e;
                        minus_polys[v].insert(i);
                    }
        for (std::size_t i2 = 0; i2 < m; ++i2)
            for (std::size_t j2 = 0; j2 < monos[i2].size(); ++j2)
                for (auto& [v, e] : monos[i2][j2].exps) {
                    (void)e;
                    auto it = minus_polys.find(v);
                    if (it == minus_polys.end()) continue;
                    bool other = std::any_of(it->second.begin(), it->second.end(),
                                             [&](std::size_t i) { return i != i2; });
                    if (other && lab.rows[i2][j2] != +1) return 4;
                }
    }
    // (5) nonzero-labeled polynomial owns a -1 monomial
    for (std::size_t i = 0; i < m; ++i) {
        bool any_nonzero = false, any_minus = false;
        for (int l : lab.rows[i]) {
            any_nonzero |= l != 0;
            any_minus |= l == -1;
        }
        if (any_nonzero && !any_minus) return 5;
    }
    // (6) labeling graph acyclic.  Nodes: 0..n-1 variables, n..n+m-1 polys.
    {
        int n = sys.n_vars;
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < monos[i].size(); ++j)
                for (auto& [v, e] : monos[i][j].exps) {
                    (void)e;
                    if (lab.rows[i][j] == +1)
                        adj[static_cast<std::size_t>(v)].push_back(n + static_cast<int>(i));
                    else if (lab.rows[i][j] == -1)
                        adj[n + i].push_back(v);
                }
        std::vector<int> state(adj.size(), 0); // 0 new, 1 on stack, 2 done
        // Iterative DFS with an explicit stack of (node, next edge index).
        for (std::size_t root = 0; root < adj.size(); ++root) {
            if (state[root]) continue;
            std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(root), 0}};
            state[root] = 1;
            while (!stack.empty()) {
                auto& [u, k] = stack.back();
                if (k == adj[static_cast<std::size_t>(u)].size()) {
                    state[static_cast<std::size_t>(u)] = 2;
                    stack.pop_back();
                    continue;
                }
                int w = adj[static_cast<std::size_t>(u)][k++];
                if (state[static_cast<std::size_t>(w)] == 1) return 6;
                if (state[static_cast<std::size_t>(w)] == 0) {
                    state[static_cast<std::size_t>(w)] = 1;
                    stack.emplace_back(w, 0);
                }
            }
        }
    }
    return 0;
}

LabeledCwtReport check_labeled_cwt(const PolynomialSystem& sys, const Labeling& lab,
                                   Budget& budget) {
    int violated = proper_labeling_check(sys, lab);
    if (violated != 0)
        throw precondition_error("check_labeled_cwt: labeling is not proper (condition " +
                                 std::to_string(violated) + " violated)");
    LabeledCwtReport rep;
    rep.labeled_degree_sum = labeled_degree_sum(sys, lab);
    if (rep.labeled_degree_sum >= sys.n_vars)
        throw precondition_error("check_labeled_cwt: sum of labeled degrees (" +
                                 std::to_string(rep.labeled_degree_sum) +
                                 ") is not below the variable count (" +
                                 std::to_string(sys.n_vars) + ")");
    rep.max_tuple_count =
        enumerate_max_degree(cw_factors(sys), sys.p, sys.n_vars, budget).size();
    return rep;
}

} // namespace modq
