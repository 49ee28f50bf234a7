// Reductions between the polynomial formulations: plain Chevalley, the
// general (tuple-or-root) variant, the symmetric variant, its normalized
// shape, the membership reduction into SuccinctBipartite, and the hardness
// reduction from Lonely.

#include <algorithm>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "modq/circuit.hpp"
#include "modq/field.hpp"
#include "modq/reductions.hpp"
#include "reduction_util.hpp"

namespace modq {

using detail::block_of;
using detail::impossible_solution;

namespace {

// A point solution that never verifies (the zero point).
Solution impossible_point(int n) { return PointSol{Point(static_cast<std::size_t>(n), 0)}; }

std::optional<std::uint64_t> designated_with_edge(const LonelyInstance& inst) {
    for (std::uint64_t u : inst.designated)
        if (lonely_edge(inst, u)) return u;
    return std::nullopt;
}

MonicMonomial var_monomial(int v) {
    MonicMonomial m;
    m.exps[v] = 1;
    return m;
}

void push_terms(ExplicitPolynomial& f, const MonicMonomial& m, int copies) {
    for (int c = 0; c < copies; ++c) f.terms.push_back(m);
}

} // namespace

// ---------------------------------------------------------------------------
// Chevalley -> GeneralChevalley: the degree bound of the source forces the
// max-degree tuple count to zero, so only point solutions can come back.
// ---------------------------------------------------------------------------

Reduction chevalley_to_general(const ChevalleyInstance& src) {
    GeneralChevalleyInstance tgt = GeneralChevalleyInstance::make(src.sys);
    const int n = src.sys.n_vars;
    return Reduction{tgt,
                     [n](const Solution& s) -> Solution {
                         if (std::holds_alternative<PointSol>(s)) return s;
                         return impossible_point(n);
                     },
                     "chevalley->general"};
}

// ---------------------------------------------------------------------------
// GeneralChevalley -> ChevSym: append p dummy variables y_1..y_p constrained
// by y_i - y_{i+1} and y_p (so every root has all dummies zero), take h
// empty, and let sigma cycle the dummies.  Both solution kinds project onto
// the original variables.
// ---------------------------------------------------------------------------

Reduction general_to_chevsym(const GeneralChevalleyInstance& src) {
    const int p = src.sys.p;
    const int n = src.sys.n_vars;
    const int nv = n + p;
    const std::size_t m = src.sys.polys.size();

    PolynomialSystem g{p, nv, {}};
    for (const auto& f : src.sys.polys) {
        ExplicitPolynomial lifted = f;
        lifted.n_vars = nv;
        g.polys.push_back(std::move(lifted));
    }
    for (int i = 0; i < p - 1; ++i) {
        ExplicitPolynomial f{p, nv, {}};
        push_terms(f, var_monomial(n + i), 1);
        push_terms(f, var_monomial(n + i + 1), p - 1);
        f.normalize();
        g.polys.push_back(std::move(f));
    }
    {
        ExplicitPolynomial f{p, nv, {}};
        push_terms(f, var_monomial(n + p - 1), 1);
        g.polys.push_back(std::move(f));
    }
    PolynomialSystem h{p, nv, {}};

    Permutation sigma;
    sigma.perm.resize(static_cast<std::size_t>(nv));
    for (int i = 0; i < n; ++i) sigma.perm[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < p; ++i)
        sigma.perm[static_cast<std::size_t>(n + i)] = n + (i + 1) % p;

    ChevSymInstance tgt = ChevSymInstance::make(g, h, sigma);
    return Reduction{tgt,
                     [n, m](const Solution& s) -> Solution {
                         if (auto* ps = std::get_if<PointSol>(&s)) {
                             if (ps->x.size() < static_cast<std::size_t>(n))
                                 return impossible_point(n);
                             return PointSol{Point(ps->x.begin(), ps->x.begin() + n)};
                         }
                         if (auto* ts = std::get_if<TupleSol>(&s)) {
                             if (ts->t.idx.size() < m) return impossible_point(n);
                             MonomialTuple t;
                             t.idx.assign(ts->t.idx.begin(),
                                          ts->t.idx.begin() + static_cast<long>(m));
                             return TupleSol{t};
                         }
                         return impossible_point(n);
                     },
                     "general->chevsym"};
}

// ---------------------------------------------------------------------------
// Normalization: rewrite g (h must be empty) so every polynomial has at most
// 3 distinct monomials of degree at most 2, introducing gate-style auxiliary
// variables for subproducts and prefix sums.  Every auxiliary value vanishes
// at x = 0, so nonzero roots stay nonzero and point solutions project.  A
// max-degree tuple of the rewritten system does not project (the original
// variables reappear in the auxiliary equations), so that branch re-solves
// the desk-scale source directly.
// ---------------------------------------------------------------------------

namespace {

bool poly_normalized(const ExplicitPolynomial& f) {
    return f.distinct_monomials().size() <= 3 && f.max_term_degree() <= 2;
}

} // namespace

Reduction normalize_chevsym(const ChevSymInstance& src) {
    if (!src.h.polys.empty())
        throw precondition_error("normalize_chevsym: h must be the empty system");
    const int p = src.g.p;
    const int n = src.g.n_vars;

    bool already = std::all_of(src.g.polys.begin(), src.g.polys.end(), poly_normalized);
    if (already) return Reduction{src, [](const Solution& s) { return s; }, "normalize_chevsym"};

    int nv = n;
    std::vector<ExplicitPolynomial> out;
    auto fresh = [&nv]() { return nv++; };

    // Degree <= 2 stand-in for a monomial, with defining equations appended.
    auto rep_of = [&](const MonicMonomial& m) -> MonicMonomial {
        if (m.total_degree() <= 2) return m;
        std::vector<int> flat;
        for (auto& [v, e] : m.exps)
            for (int c = 0; c < e; ++c) flat.push_back(v);
        MonicMonomial cur = var_monomial(flat[0]) * var_monomial(flat[1]);
        int aux = -1;
        for (std::size_t i = 2; i <= flat.size(); ++i) {
            aux = fresh();
            ExplicitPolynomial def{p, 0, {}};
            push_terms(def, cur, 1);
            push_terms(def, var_monomial(aux), p - 1);
            out.push_back(std::move(def));
            if (i < flat.size()) cur = var_monomial(aux) * var_monomial(flat[i]);
        }
        return var_monomial(aux);
    };

    for (const auto& f : src.g.polys) {
        CoefficientPolynomial cf = cp_fold(collect(f));
        std::vector<std::pair<MonicMonomial, int>> terms;
        for (auto& [m, c] : cf.coeffs) terms.emplace_back(rep_of(m), c);

        ExplicitPolynomial fin{p, 0, {}};
        if (terms.size() <= 2) {
            for (auto& [m, c] : terms) push_terms(fin, m, c);
        } else {
            int s = fresh();
            ExplicitPolynomial def{p, 0, {}};
            push_terms(def, terms[0].first, terms[0].second);
            push_terms(def, terms[1].first, terms[1].second);
            push_terms(def, var_monomial(s), p - 1);
            out.push_back(std::move(def));
            for (std::size_t j = 2; j + 1 < terms.size(); ++j) {
                int s2 = fresh();
                ExplicitPolynomial step{p, 0, {}};
                push_terms(step, var_monomial(s), 1);
                push_terms(step, terms[j].first, terms[j].second);
                push_terms(step, var_monomial(s2), p - 1);
                out.push_back(std::move(step));
                s = s2;
            }
            push_terms(fin, var_monomial(s), 1);
            push_terms(fin, terms.back().first, terms.back().second);
        }
        out.push_back(std::move(fin));
    }

    PolynomialSystem g{p, nv, {}};
    for (auto& f : out) {
        f.p = p;
        f.n_vars = nv;
        f.normalize();
        g.polys.push_back(std::move(f));
    }
    PolynomialSystem h{p, nv, {}};
    Permutation sigma;
    sigma.perm.resize(static_cast<std::size_t>(nv));
    for (int i = 0; i < nv; ++i)
        sigma.perm[static_cast<std::size_t>(i)] =
            i < n ? src.sigma.perm[static_cast<std::size_t>(i)] : i;

    ChevSymInstance tgt = ChevSymInstance::make(g, h, sigma);
    auto S = std::make_shared<const ChevSymInstance>(src);
    return Reduction{tgt,
                     [S, n, nv](const Solution& s) -> Solution {
                         if (auto* ps = std::get_if<PointSol>(&s)) {
                             if (ps->x.size() == static_cast<std::size_t>(nv))
                                 return PointSol{Point(ps->x.begin(), ps->x.begin() + n)};
                             return impossible_point(n);
                         }
                         // Tuple solutions do not project; re-solve the source.
                         try {
                             Budget budget;
                             return brute_solve(SearchInstance{*S}, budget);
                         } catch (const error&) {
                             return impossible_point(n);
                         }
                     },
                     "normalize_chevsym"};
}

// ---------------------------------------------------------------------------
// ChevSym (normalized) -> SuccinctBipartite_p.  One side enumerates the
// points of F_p^n, the other the monomial tuples of the product of the
// Chevalley-Warning factors plus the p-subsets of points; the edge count of
// (x, t) is t(x), and designated is the edge between the origin and the
// all-constant tuple.  The designated endpoint lives on the point side.
// ---------------------------------------------------------------------------

namespace {

struct ChevCtx {
    ChevSymInstance inst;
    PrimeField f;
    std::vector<CWFactor> factors;
    std::vector<std::uint64_t> len; // term count per factor
    std::uint64_t v1_size = 1;
    std::uint64_t points = 1;

    explicit ChevCtx(const ChevSymInstance& i) : inst(i), f(i.g.p) {
        factors = cw_factors(inst.g);
        for (auto& fac : factors) {
            len.push_back(fac.poly.terms.size());
            v1_size = checked_mul_u64(v1_size, len.back(), "chevsym->succbipartite");
        }
        points = checked_pow_u64(static_cast<std::uint64_t>(inst.g.p),
                                 static_cast<unsigned>(inst.g.n_vars),
                                 "chevsym->succbipartite");
    }

    int p() const { return inst.g.p; }
    int n() const { return inst.g.n_vars; }

    Point point_of(std::uint64_t r) const { return qary_unrank(r, p(), n()); }
    std::uint64_t rank_of(const Point& x) const { return qary_rank(x, p()); }

    std::vector<int> tuple_of(std::uint64_t r) const {
        std::vector<int> a(factors.size());
        for (std::size_t i = factors.size(); i-- > 0;) {
            a[i] = static_cast<int>(r % len[i]);
            r /= len[i];
        }
        return a;
    }
    std::uint64_t rank_tuple(const std::vector<int>& a) const {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            r = r * len[i] + static_cast<std::uint64_t>(a[i]);
        return r;
    }

    int tuple_value(const std::vector<int>& a, const Point& x) const {
        int v = 1;
        for (std::size_t i = 0; i < a.size(); ++i)
            v = f.mul(v, factors[i].poly.terms[static_cast<std::size_t>(a[i])].eval(f, x));
        return v;
    }

    bool in_vg(const Point& x) const { return inst.g.vanishes_at(x); }
    bool in_vhbar(const Point& x) const { return !inst.h.vanishes_at(x); }
    bool sigma_fixed(const Point& x) const { return inst.sigma.apply(x) == x; }

    // Rank of the sigma-orbit of x among p-subsets of points (orbit size p).
    std::uint64_t orbit_rank(const Point& x) const {
        std::vector<std::uint64_t> orbit;
        Point y = x;
        for (int i = 0; i < p(); ++i) {
            orbit.push_back(rank_of(y));
            y = inst.sigma.apply(y);
        }
        std::sort(orbit.begin(), orbit.end());
        return subset_rank(orbit);
    }

    int count(std::uint64_t xr, std::uint64_t u) const {
        Point x = point_of(xr);
        if (u < v1_size) return tuple_value(tuple_of(u), x);
        if (!in_vg(x) || !in_vhbar(x) || sigma_fixed(x)) return 0;
        return u - v1_size == orbit_rank(x) ? p() - 1 : 0;
    }
};

EdgeGroup find_block(const EdgeGroup& items, std::uint64_t u, int k, int p) {
    if (items.empty() || items.size() % static_cast<std::size_t>(p) != 0) return {};
    auto it = std::find(items.begin(), items.end(), std::make_pair(u, k));
    if (it == items.end()) return {};
    return block_of(items, static_cast<std::size_t>(it - items.begin()), p);
}

} // namespace

Reduction chevsym_to_succbipartite(const ChevSymInstance& src) {
    for (const auto& f : src.g.polys)
        if (!poly_normalized(f))
            throw precondition_error(
                "chevsym_to_succbipartite: g must be normalized "
                "(at most 3 monomials of degree at most 2 per polynomial)");
    if (src.g.n_vars < 1)
        throw precondition_error("chevsym_to_succbipartite: need at least one variable");

    auto ctx = std::make_shared<const ChevCtx>(src);
    const int p = ctx->p();
    const std::uint64_t v1 = ctx->v1_size;
    const std::uint64_t u_size =
        v1 + binom_u64(ctx->points, static_cast<std::uint64_t>(p));

    auto count = CountMap::from_fn(
        [ctx](std::uint64_t xr, std::uint64_t u) { return ctx->count(xr, u); });

    // Grouping pivoted at a point x.
    auto phi_v = GroupMap::from_fn([ctx, p, v1](std::uint64_t xr, std::uint64_t u,
                                                int k) -> EdgeGroup {
        Point x = ctx->point_of(xr);
        if (!ctx->in_vg(x)) {
            if (u >= v1) return {};
            std::size_t i0 = 0;
            while (i0 < ctx->factors.size() &&
                   ctx->factors[i0].poly.eval(x) != 0)
                ++i0;
            if (i0 == ctx->factors.size()) return {};
            auto a = ctx->tuple_of(u);
            EdgeGroup items;
            for (int j = 0; j < static_cast<int>(ctx->len[i0]); ++j) {
                auto t = a;
                t[i0] = j;
                int c = ctx->tuple_value(t, x);
                for (int cc = 1; cc <= c; ++cc)
                    items.emplace_back(ctx->rank_tuple(t), cc);
            }
            return find_block(items, u, k, p);
        }
        if (!ctx->in_vhbar(x) || ctx->sigma_fixed(x)) return {};
        std::uint64_t orb = v1 + ctx->orbit_rank(x);
        if ((u == 0 && k == 1) || u == orb) {
            EdgeGroup group{{std::uint64_t{0}, 1}};
            for (int k2 = 1; k2 <= p - 1; ++k2) group.emplace_back(orb, k2);
            return group;
        }
        if (u >= v1) return {};
        auto a = ctx->tuple_of(u);
        std::size_t i0 = 0;
        while (i0 < a.size() && a[i0] == 0) ++i0;
        if (i0 == a.size()) return {}; // the all-constant tuple with k != 1
        EdgeGroup items;
        for (int j = 1; j < static_cast<int>(ctx->len[i0]); ++j) {
            auto t = a;
            t[i0] = j;
            int c = ctx->tuple_value(t, x);
            for (int cc = 1; cc <= c; ++cc) items.emplace_back(ctx->rank_tuple(t), cc);
        }
        return find_block(items, u, k, p);
    });

    // Grouping pivoted at a monomial tuple or a point subset.
    auto phi_u = GroupMap::from_fn([ctx, p, v1](std::uint64_t u, std::uint64_t xr,
                                                int k) -> EdgeGroup {
        if (u < v1) {
            auto a = ctx->tuple_of(u);
            MonomialTuple t{a};
            if (is_max_degree(ctx->factors, ctx->n(), t)) return {};
            int i0 = -1;
            for (int v = 0; v < ctx->n() && i0 < 0; ++v) {
                long long d = 0;
                for (std::size_t i = 0; i < a.size(); ++i)
                    d += ctx->factors[i]
                             .poly.terms[static_cast<std::size_t>(a[i])]
                             .degree_in(v);
                if (ctx->f.fold_exponent(d) != p - 1) i0 = v;
            }
            if (i0 < 0) return {};
            Point x = ctx->point_of(xr);
            EdgeGroup items;
            for (int j = 0; j < p; ++j) {
                Point y = x;
                y[static_cast<std::size_t>(i0)] = j;
                int c = ctx->tuple_value(a, y);
                for (int cc = 1; cc <= c; ++cc) items.emplace_back(ctx->rank_of(y), cc);
            }
            return find_block(items, xr, k, p);
        }
        auto members = subset_unrank(u - v1, ctx->points, p);
        for (std::uint64_t y : members)
            if (ctx->count(y, u) != p - 1) return {};
        EdgeGroup group;
        for (std::uint64_t y : members) group.emplace_back(y, k);
        return group;
    });

    SuccBipartiteInstance tgt{p,     ctx->points, u_size,
                              count, phi_v,       phi_u,
                              SuccBipartiteEdge{0, 0, 1}};
    const int n = src.g.n_vars;
    auto S = std::make_shared<const ChevSymInstance>(src);
    return Reduction{
        tgt,
        [ctx, S, v1, n](const Solution& s) -> Solution {
            auto* es = std::get_if<EdgeSol>(&s);
            if (!es) return impossible_point(n);
            if (es->e.u < v1) {
                auto a = ctx->tuple_of(es->e.u);
                MonomialTuple t{a};
                if (is_max_degree(ctx->factors, n, t)) return TupleSol{t};
                return PointSol{ctx->point_of(es->e.v)};
            }
            auto members = subset_unrank(es->e.u - v1, ctx->points, ctx->p());
            members.push_back(es->e.v);
            for (std::uint64_t y : members) {
                Solution cand = PointSol{ctx->point_of(y)};
                if (verify(SearchInstance{*S}, cand)) return cand;
            }
            return impossible_point(n);
        },
        "chevsym->succbipartite"};
}

// ---------------------------------------------------------------------------
// Lonely_p -> ChevSym (the hardness direction).  The designated set is first
// restricted to the origin of a [p]^{n0} cube, the successor map becomes an
// arithmetic circuit C with only (+, x) gates that fixes 0 and satisfies
// C^p = id off its fixed points, and the system g encodes p chained copies
// of the circuit equations; sigma rotates the chain.  Nonzero common roots
// of (g, h = "first two blocks equal") are exactly the nonzero fixed points
// of C, i.e. isolated non-designated vertices.
// ---------------------------------------------------------------------------

LonelyToChevsym lonely_to_chevsym_full(const LonelyInstance& src, Budget& budget) {
    const int p = src.q;
    if (!is_prime(static_cast<std::uint64_t>(p)))
        throw precondition_error("lonely_to_chevsym: modulus must be prime");
    const std::uint64_t size = src.domain.size();
    int n = 0;
    {
        std::uint64_t t = 1;
        while (t < size) {
            t = checked_mul_u64(t, static_cast<std::uint64_t>(p), "lonely_to_chevsym");
            ++n;
        }
        if (t != size || n == 0)
            throw precondition_error("lonely_to_chevsym: |V| must be a positive power of p");
    }
    if (auto u = designated_with_edge(src)) {
        return LonelyToChevsym{
            sentinel_reduction(VertexSol{*u}, "lonely->chevsym (sentinel)"), Labeling{}, 0};
    }

    // Stage 1: relabel (and if needed restrict + pad) so the instance lives
    // on [p]^{n0} with designated set exactly {0}.
    auto S = std::make_shared<const LonelyInstance>(src);
    int n0 = n;
    std::function<std::uint64_t(std::uint64_t)> C0;
    std::function<Solution(const Solution&)> back0;

    auto swapped = [](std::uint64_t v, std::uint64_t d) {
        return v == 0 ? d : (v == d ? std::uint64_t{0} : v);
    };

    if (src.designated.size() == 1) {
        const std::uint64_t d = src.designated.front();
        C0 = [S, d, swapped](std::uint64_t v) {
            return swapped(S->C(swapped(v, d)), d);
        };
        back0 = [S, d, swapped, size](const Solution& s) -> Solution {
            auto* x = std::get_if<VertexSol>(&s);
            if (!x || x->v >= size) return impossible_solution();
            return VertexSol{swapped(x->v, d)};
        };
    } else {
        n0 = n + 1;
        Reduction r1 = lonely_restrict(src, 1);
        auto L1 = std::make_shared<const LonelyInstance>(std::get<LonelyInstance>(r1.target));
        const std::uint64_t m1 = L1->domain.size();
        const std::uint64_t d = L1->designated.front();
        C0 = [L1, p, m1, d, swapped](std::uint64_t v) {
            std::uint64_t w = swapped(v, d);
            std::uint64_t r;
            if (w < m1) {
                r = L1->C(w);
            } else {
                std::uint64_t i = w - m1;
                r = m1 + i / p * p + (i % p + 1) % static_cast<std::uint64_t>(p);
            }
            return swapped(r, d);
        };
        auto bm1 = r1.back_map;
        std::uint64_t P = checked_pow_u64(static_cast<std::uint64_t>(p),
                                          static_cast<unsigned>(n0), "lonely_to_chevsym");
        back0 = [bm1, d, m1, P, swapped](const Solution& s) -> Solution {
            auto* x = std::get_if<VertexSol>(&s);
            if (!x || x->v >= P) return impossible_solution();
            std::uint64_t w = swapped(x->v, d);
            if (w >= m1) return impossible_solution();
            return bm1(VertexSol{w});
        };
    }

    // Stage 2: tabulate, interpolate, preprocess, eliminate constants.
    const std::uint64_t P = checked_pow_u64(static_cast<std::uint64_t>(p),
                                            static_cast<unsigned>(n0), "lonely_to_chevsym");
    budget.require(P, "lonely_to_chevsym: tabulation");
    std::vector<std::uint64_t> table(P);
    for (std::uint64_t v = 0; v < P; ++v) {
        budget.charge(1, "lonely_to_chevsym");
        table[v] = C0(v);
    }
    ArithmeticCircuit chat = table_to_circuit(table, p, n0, budget);
    ArithmeticCircuit cpre = preprocess_lonely(chat);
    if (eval_circuit_rank(cpre, 0) != 0)
        throw error("lonely_to_chevsym: internal: preprocessed map does not fix the origin");
    ArithmeticCircuit cc = eliminate_const_gates(cpre);

    // Stage 3: p chained copies of the circuit equations plus linkers.
    const int s = cc.s();
    const int N = (2 * n0 + s) * p;
    const int zoff = 2 * p * n0;

    std::vector<ExplicitPolynomial> polys;
    std::vector<int> defined; // the variable each polynomial defines
    for (int i = 0; i < p; ++i) {
        std::vector<int> xv(static_cast<std::size_t>(n0)), yv(static_cast<std::size_t>(n0)),
            zv(static_cast<std::size_t>(s));
        for (int c = 0; c < n0; ++c) {
            xv[static_cast<std::size_t>(c)] = 2 * i * n0 + c;
            yv[static_cast<std::size_t>(c)] = (2 * i + 1) * n0 + c;
        }
        for (int k = 0; k < s; ++k) zv[static_cast<std::size_t>(k)] = zoff + i * s + k;
        auto ps = system_for_circuit(cc, xv, yv, zv, N);
        if (ps.size() != static_cast<std::size_t>(s + n0))
            throw error("lonely_to_chevsym: internal: unexpected circuit system size");
        for (int k = 0; k < s; ++k) {
            polys.push_back(ps[static_cast<std::size_t>(k)]);
            defined.push_back(zv[static_cast<std::size_t>(k)]);
        }
        for (int c = 0; c < n0; ++c) {
            polys.push_back(ps[static_cast<std::size_t>(s + c)]);
            defined.push_back(yv[static_cast<std::size_t>(c)]);
        }
        if (i < p - 1) {
            for (int c = 0; c < n0; ++c) {
                ExplicitPolynomial f{p, N, {}};
                push_terms(f, var_monomial((2 * i + 1) * n0 + c), 1);
                push_terms(f, var_monomial((2 * i + 2) * n0 + c), p - 1);
                f.normalize();
                polys.push_back(std::move(f));
                defined.push_back((2 * i + 2) * n0 + c);
            }
        }
    }
    PolynomialSystem g{p, N, polys};

    PolynomialSystem h{p, N, {}};
    for (int c = 0; c < n0; ++c) {
        ExplicitPolynomial f{p, N, {}};
        push_terms(f, var_monomial(c), 1);
        push_terms(f, var_monomial(n0 + c), p - 1);
        f.normalize();
        h.polys.push_back(std::move(f));
    }

    Permutation sigma;
    sigma.perm.resize(static_cast<std::size_t>(N));
    for (int j = 0; j < 2 * p; ++j)
        for (int c = 0; c < n0; ++c)
            sigma.perm[static_cast<std::size_t>(j * n0 + c)] = ((j + 2) % (2 * p)) * n0 + c;
    for (int i = 0; i < p; ++i)
        for (int k = 0; k < s; ++k)
            sigma.perm[static_cast<std::size_t>(zoff + i * s + k)] =
                zoff + ((i + 1) % p) * s + k;

    // Stage 4: labeling (-1 on each polynomial's defined variable).
    Labeling lam;
    for (std::size_t i = 0; i < g.polys.size(); ++i) {
        auto dm = g.polys[i].distinct_monomials();
        MonicMonomial dv = var_monomial(defined[i]);
        std::vector<int> row;
        for (auto& m : dm) row.push_back(m == dv ? -1 : 1);
        lam.rows.push_back(std::move(row));
    }
    if (int cond = proper_labeling_check(g, lam); cond != 0)
        throw error("lonely_to_chevsym: internal: labeling violates condition " +
                    std::to_string(cond));
    long long sum = labeled_degree_sum(g, lam);
    if (sum >= N)
        throw error("lonely_to_chevsym: internal: labeled degree sum not below N");

    ChevSymInstance tgt = ChevSymInstance::make(g, h, sigma);

    // Free-action sweep when the point space fits in the budget.
    bool gate_ok = true;
    std::uint64_t total = 0;
    try {
        total = checked_pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(N),
                                "free-action gate");
    } catch (const error&) {
        gate_ok = false;
    }
    if (gate_ok && total <= budget.remaining()) {
        auto pred = [&g, &h](const Point& x) {
            return g.vanishes_at(x) && !h.vanishes_at(x);
        };
        if (auto bad = check_free_action(sigma, pred, N, p, budget))
            throw error("lonely_to_chevsym: internal: sigma does not act freely");
    }

    auto bm = [n0, p, back0](const Solution& sol) -> Solution {
        auto* ps = std::get_if<PointSol>(&sol);
        if (!ps || ps->x.size() < static_cast<std::size_t>(n0)) return impossible_solution();
        std::vector<int> digits(ps->x.begin(), ps->x.begin() + n0);
        return back0(VertexSol{qary_rank(digits, p)});
    };
    return LonelyToChevsym{Reduction{tgt, bm, "lonely->chevsym"}, lam, sum};
}

Reduction lonely_to_chevsym(const LonelyInstance& src, Budget& budget) {
    return lonely_to_chevsym_full(src, budget).red;
}

} // namespace modq
