#include "modq/gen.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "modq/circuit.hpp"
#include "modq/error.hpp"
#include "modq/field.hpp"
#include "modq/reductions.hpp"

namespace modq::gen {

namespace {

std::vector<std::uint64_t> shuffled_ranks(std::uint64_t n, std::mt19937_64& rng) {
    std::vector<std::uint64_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::uint64_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

LonelyInstance lonely_on_domain(int q, VertexDomain dom, int n_designated,
                                std::mt19937_64& rng) {
    std::uint64_t nv = dom.size();
    if (n_designated < 1 || static_cast<std::uint64_t>(n_designated) > nv)
        throw precondition_error("gen::lonely: bad designated count");
    auto perm = shuffled_ranks(nv, rng);
    std::uint64_t max_edges = (nv - static_cast<std::uint64_t>(n_designated)) / q;
    std::uint64_t n_edges = max_edges == 0 ? 0 : rng() % (max_edges + 1);
    std::vector<std::uint64_t> table(nv);
    std::iota(table.begin(), table.end(), std::uint64_t{0});
    for (std::uint64_t e = 0; e < n_edges; ++e)
        for (int j = 0; j < q; ++j)
            table[perm[e * q + j]] = perm[e * q + (j + 1) % q];
    std::vector<std::uint64_t> des(perm.begin() + n_edges * q,
                                   perm.begin() + n_edges * q + n_designated);
    std::sort(des.begin(), des.end());
    return LonelyInstance::make(q, std::move(dom), VertexMap::from_table(std::move(table)),
                                std::move(des));
}

// t distinct-variable monomials (each of the given degree, variables drawn
// with replacement inside a monomial) with random nonzero coefficients.
ExplicitPolynomial random_poly(int p, int n, int max_terms, int max_deg,
                               std::mt19937_64& rng) {
    ExplicitPolynomial f{p, n, {}};
    int t = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
    for (int i = 0; i < t; ++i) {
        MonicMonomial m;
        int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg));
        for (int j = 0; j < d; ++j)
            m.exps[static_cast<int>(rng() % static_cast<std::uint64_t>(n))]++;
        int c = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(p - 1));
        for (int k = 0; k < c; ++k) f.terms.push_back(m);
    }
    f.normalize();
    return f;
}

} // namespace

LonelyInstance lonely(int q, std::uint64_t groups, int n_designated, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return lonely_on_domain(q, VertexDomain::plain(q * groups), n_designated, rng);
}

LonelyInstance lonely_qary(int p, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int n_designated = p == 2 ? 1 : 1 + static_cast<int>(rng() % (p - 1));
    return lonely_on_domain(p, VertexDomain::qary(p, n), n_designated, rng);
}

LonelyInstance lonely_circuit(int p, int n, int max_gates, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    VertexDomain dom = VertexDomain::qary(p, n);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        CircuitBuilder b(p, n);
        std::vector<int> wires;
        for (int i = 0; i < n; ++i) wires.push_back(b.input(i));
        int g = static_cast<int>(rng() % static_cast<std::uint64_t>(max_gates + 1));
        for (int j = 0; j < g; ++j) {
            int a = wires[rng() % wires.size()];
            int c = wires[rng() % wires.size()];
            wires.push_back(rng() % 2 ? b.mul(a, c) : b.add(a, c));
        }
        std::vector<int> outs(n);
        for (int i = 0; i < n; ++i) outs[i] = wires[rng() % wires.size()];
        b.set_outputs(std::move(outs));
        VertexMap C = VertexMap::from_circuit(b.take());
        LonelyInstance probe = LonelyInstance::make_relaxed(p, dom, C, {0});
        std::vector<std::uint64_t> isolated;
        for (std::uint64_t v = 0; v < dom.size(); ++v)
            if (!lonely_edge(probe, v)) isolated.push_back(v);
        if (isolated.empty()) continue;
        std::uint64_t d = isolated[rng() % isolated.size()];
        return LonelyInstance::make(p, dom, std::move(C), {d});
    }
    throw precondition_error("gen::lonely_circuit: no isolated vertex found");
}

LeafInstance leaf(int q, std::uint64_t n_vertices, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<std::vector<std::uint64_t>> edges;
    if (n_vertices >= static_cast<std::uint64_t>(q)) {
        std::uint64_t want = rng() % (n_vertices / q + 1);
        for (int tries = 0; edges.size() < want && tries < 200; ++tries) {
            auto perm = shuffled_ranks(n_vertices, rng);
            std::vector<std::uint64_t> e(perm.begin(), perm.begin() + q);
            std::sort(e.begin(), e.end());
            edges.insert(std::move(e));
        }
    }
    std::vector<std::vector<std::vector<std::uint64_t>>> tbl(n_vertices);
    for (const auto& e : edges)
        for (std::uint64_t v : e)
            if (tbl[v].size() < static_cast<std::size_t>(q)) tbl[v].push_back(e);
    return LeafInstance{q, VertexDomain::plain(n_vertices),
                        SubsetListMap::from_table(std::move(tbl)), rng() % n_vertices};
}

LeafPrimeInstance leafprime(int q, int k, std::uint64_t n_vertices, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<std::vector<std::uint64_t>> edges;
    if (n_vertices >= static_cast<std::uint64_t>(q)) {
        std::uint64_t want = rng() % (n_vertices / q + 2);
        for (int tries = 0; edges.size() < want && tries < 200; ++tries) {
            auto perm = shuffled_ranks(n_vertices, rng);
            std::vector<std::uint64_t> e(perm.begin(), perm.begin() + q);
            std::sort(e.begin(), e.end());
            edges.insert(std::move(e));
        }
    }
    std::vector<std::vector<std::vector<std::uint64_t>>> tbl(n_vertices);
    for (const auto& e : edges)
        for (std::uint64_t v : e)
            if (tbl[v].size() < static_cast<std::size_t>(k)) tbl[v].push_back(e);
    return LeafPrimeInstance{q, k, VertexDomain::plain(n_vertices),
                             SubsetListMap::from_table(std::move(tbl)), rng() % n_vertices};
}

BipartiteInstance bipartite(int q, std::uint64_t v_size, std::uint64_t u_size,
                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint64_t>> tbl(v_size + u_size);
    for (std::uint64_t v = 0; v < v_size; ++v)
        for (std::uint64_t u = 0; u < u_size; ++u)
            if (rng() % 3 == 0) {
                tbl[v].push_back(v_size + u);
                tbl[v_size + u].push_back(v);
            }
    return BipartiteInstance{q, v_size, u_size,
                             NeighborListMap::from_table(std::move(tbl)), rng() % v_size};
}

SuccBipartiteInstance succbipartite(int p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::uint64_t vs = 2 + rng() % 4, us = 2 + rng() % 4;
        BipartiteInstance b = bipartite(p, vs, us, rng());
        Reduction r = bipartite_to_succbipartite(b);
        if (const auto* s = std::get_if<SuccBipartiteInstance>(&r.target)) return *s;
    }
    throw precondition_error("gen::succbipartite: generation kept short-circuiting");
}

TwoMatchingsInstance twomatchings(int p, std::uint64_t n_vertices, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto matching = [&](std::vector<std::vector<std::uint64_t>>& tbl) {
        auto perm = shuffled_ranks(n_vertices, rng);
        std::uint64_t n_edges =
            n_vertices / p == 0 ? 0 : rng() % (n_vertices / p + 1);
        for (std::uint64_t e = 0; e < n_edges; ++e) {
            std::vector<std::uint64_t> block(perm.begin() + e * p,
                                             perm.begin() + (e + 1) * p);
            std::sort(block.begin(), block.end());
            for (std::uint64_t v : block) tbl[v] = block;
        }
    };
    std::vector<std::vector<std::uint64_t>> t0(n_vertices), t1(n_vertices);
    matching(t0);
    matching(t1);
    return TwoMatchingsInstance{p, VertexDomain::plain(n_vertices),
                                NeighborListMap::from_table(std::move(t0)),
                                NeighborListMap::from_table(std::move(t1)),
                                rng() % n_vertices};
}

EndOfLineInstance endofline(std::uint64_t n_vertices, std::uint64_t seed) {
    if (n_vertices < 2) throw precondition_error("gen::endofline: need >= 2 vertices");
    std::mt19937_64 rng(seed);
    auto perm = shuffled_ranks(n_vertices, rng);
    std::uint64_t len = 2 + rng() % (n_vertices - 1);
    std::vector<std::uint64_t> succ(n_vertices), pred(n_vertices);
    std::iota(succ.begin(), succ.end(), std::uint64_t{0});
    std::iota(pred.begin(), pred.end(), std::uint64_t{0});
    for (std::uint64_t i = 0; i + 1 < len; ++i) {
        succ[perm[i]] = perm[i + 1];
        pred[perm[i + 1]] = perm[i];
    }
    return EndOfLineInstance{VertexDomain::plain(n_vertices),
                             VertexMap::from_table(std::move(succ)),
                             VertexMap::from_table(std::move(pred)), perm[0]};
}

PolynomialSystem system(int p, int n, int m, int max_deg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PolynomialSystem sys{p, n, {}};
    for (int i = 0; i < m; ++i) sys.polys.push_back(random_poly(p, n, 3, max_deg, rng));
    return sys;
}

ChevalleyInstance chevalley(int p, int n, std::uint64_t seed) {
    if (n < 2) throw precondition_error("gen::chevalley: need n >= 2");
    std::mt19937_64 rng(seed);
    int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    PolynomialSystem sys{p, n, {}};
    for (int i = 0; i < m; ++i) {
        // Distinct single-variable linear terms so the max term degree stays
        // exactly 1 even after collection.
        ExplicitPolynomial f{p, n, {}};
        auto vars = shuffled_ranks(n, rng);
        int t = 1 + static_cast<int>(rng() % std::min<std::uint64_t>(3, n));
        for (int j = 0; j < t; ++j) {
            MonicMonomial mono;
            mono.exps[static_cast<int>(vars[j])] = 1;
            int c = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(p - 1));
            for (int k = 0; k < c; ++k) f.terms.push_back(mono);
        }
        f.normalize();
        sys.polys.push_back(std::move(f));
    }
    return ChevalleyInstance::make(std::move(sys));
}

GeneralChevalleyInstance general_chevalley(int p, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int m = 1 + static_cast<int>(rng() % 2);
    return GeneralChevalleyInstance::make(system(p, n, m, 2, rng()));
}

ChevSymInstance chevsym_unnormalized(int p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int n = 2 * p;
    Permutation sigma;
    sigma.perm.resize(n);
    for (int b = 0; b < 2; ++b)
        for (int j = 0; j < p; ++j) sigma.perm[b * p + j] = b * p + (j + 1) % p;
    int m = 1 + static_cast<int>(rng() % 2);
    PolynomialSystem g{p, n, {}};
    for (int i = 0; i < m; ++i) {
        ExplicitPolynomial f = random_poly(p, n, 2, 1, rng);
        MonicMonomial cubic; // force a degree-3 term so normalization has work
        for (int j = 0; j < 3; ++j)
            cubic.exps[static_cast<int>(rng() % static_cast<std::uint64_t>(n))]++;
        f.terms.push_back(cubic);
        f.normalize();
        g.polys.push_back(std::move(f));
    }
    return ChevSymInstance::make(std::move(g), PolynomialSystem{p, n, {}},
                                 std::move(sigma));
}

ChevSymInstance chevsym_normalized(int p, int n, std::uint64_t seed) {
    GeneralChevalleyInstance gc = general_chevalley(p, n, seed);
    Reduction r1 = general_to_chevsym(gc);
    Reduction r2 = normalize_chevsym(std::get<ChevSymInstance>(r1.target));
    return std::get<ChevSymInstance>(r2.target);
}

std::shared_ptr<AmpInstance> amp(int q, int r, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int selector = static_cast<int>(rng() % 2);
    int modulus = selector == 0 ? q : r;
    LonelyInstance payload =
        lonely(modulus, static_cast<std::uint64_t>(modulus) + rng() % 3, 1, rng());
    return std::make_shared<AmpInstance>(AmpInstance{selector, std::move(payload)});
}

BisInstance bis(std::uint64_t q, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int N = exponent_sum(q);
    std::uint64_t need = checked_mul_u64(
        checked_pow_u64(static_cast<std::uint64_t>(m) + 1, static_cast<unsigned>(N),
                        "gen::bis"),
        q - 1, "gen::bis");
    std::size_t n = static_cast<std::size_t>(need + rng() % 3);
    ModMatrix A;
    A.q = q;
    A.entries.assign(m, std::vector<long long>(n));
    for (auto& row : A.entries)
        for (auto& x : row) x = static_cast<long long>(rng() % q);
    return BisInstance::make(std::move(A));
}

SisInstance sis(std::uint64_t q, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int N = exponent_sum(q);
    std::uint64_t pow2 = checked_pow_u64(2, static_cast<unsigned>(N), "gen::sis");
    std::uint64_t rhs = checked_mul_u64(
        checked_pow_u64(static_cast<std::uint64_t>(m) + 1, static_cast<unsigned>(N),
                        "gen::sis"),
        q - 1, "gen::sis");
    // Meet both the parameter condition and the (m+1)^N columns the
    // recursive solver's kernel steps need.
    std::uint64_t solver_need =
        checked_pow_u64(static_cast<std::uint64_t>(m) + 1, static_cast<unsigned>(N),
                        "gen::sis");
    std::size_t n =
        static_cast<std::size_t>(std::max((rhs + pow2 - 1) / pow2, solver_need) + rng() % 3);
    if (n == 0) n = 1;
    ModMatrix A;
    A.q = q;
    A.entries.assign(m, std::vector<long long>(n));
    for (auto& row : A.entries)
        for (auto& x : row) x = static_cast<long long>(rng() % q);
    return SisInstance::make(std::move(A));
}

} // namespace modq::gen
