// Interreducibility of the graph formulations: Leaf, Leaf', Bipartite,
// Lonely, SuccinctBipartite and TwoMatchings all encode the same total
// search problem; each function below emits the target instance lazily
// (closures over the source oracles) plus a solution back-map.

#include <algorithm>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "modq/field.hpp"
#include "modq/reductions.hpp"
#include "reduction_util.hpp"

namespace modq {

using detail::block_of;
using detail::cyclic_succ;
using detail::impossible_solution;
using detail::leaf_edge_pos;
using detail::sorted_leaf_edges;

namespace {

std::vector<std::uint64_t> bipartite_neighbors_sorted(const BipartiteInstance& inst,
                                                      std::uint64_t x) {
    auto nb = bipartite_neighbors(inst, x);
    std::sort(nb.begin(), nb.end());
    return nb;
}

} // namespace

// ---------------------------------------------------------------------------
// Leaf_q -> Leaf'_q: a Leaf instance already satisfies the Leaf' interface
// with candidate bound k = q.
// ---------------------------------------------------------------------------

Reduction leaf_to_leafprime(const LeafInstance& src) {
    LeafPrimeInstance tgt{src.q, src.q, src.domain, src.C, src.designated};
    return Reduction{tgt, [](const Solution& s) { return s; }, "leaf->leafprime"};
}

// ---------------------------------------------------------------------------
// Leaf'_q -> Leaf_q: split every vertex into t = ceil(k/q) copies; copy i of
// v carries the i-th q-bucket of v's lexicographically sorted confirmed
// edges, so every copy has at most q candidates.  The designated copy is the
// one holding the partial bucket of v*.
// ---------------------------------------------------------------------------

Reduction leafprime_to_leaf(const LeafPrimeInstance& src) {
    auto S = std::make_shared<const LeafPrimeInstance>(src);
    const int q = src.q;
    const int t = (src.k + q - 1) / q;
    const std::uint64_t n0 = src.domain.size();

    std::uint64_t dstar =
        leaf_edges(src.k, src.C, n0, q, src.designated).size();
    if (dstar % static_cast<std::uint64_t>(q) == 0)
        return sentinel_reduction(VertexSol{src.designated}, "leafprime->leaf (sentinel)");

    VertexDomain dom = VertexDomain::product(src.domain, static_cast<std::uint64_t>(t));
    auto C = SubsetListMap::from_fn([S, dom, q, t, n0](std::uint64_t x) {
        auto [v, i] = dom.split(x);
        auto edges = sorted_leaf_edges(S->k, S->C, n0, q, v);
        std::vector<std::vector<std::uint64_t>> out;
        std::size_t lo = static_cast<std::size_t>(i) * q;
        std::size_t hi = std::min(edges.size(), lo + static_cast<std::size_t>(q));
        for (std::size_t pos = lo; pos < hi; ++pos) {
            const auto& e = edges[pos];
            std::vector<std::uint64_t> members;
            for (std::uint64_t w : e) {
                long long wp = leaf_edge_pos(S->k, S->C, n0, q, w, e);
                members.push_back(dom.join(w, static_cast<std::uint64_t>(wp) / q));
            }
            std::sort(members.begin(), members.end());
            out.push_back(std::move(members));
        }
        return out;
    });

    std::uint64_t des = dom.join(src.designated, dstar / static_cast<std::uint64_t>(q));
    LeafInstance tgt{q, dom, C, des};
    return Reduction{tgt,
                     [dom](const Solution& s) -> Solution {
                         auto* vs = std::get_if<VertexSol>(&s);
                         if (!vs || vs->v >= dom.size()) return impossible_solution();
                         return VertexSol{dom.split(vs->v).first};
                     },
                     "leafprime->leaf"};
}

// ---------------------------------------------------------------------------
// Leaf'_q -> Bipartite_q: U enumerates all q-subsets; a subset is connected
// to its q members exactly when it is a confirmed hyperedge, so U-side
// degrees are 0 or q and V-side degrees match the source.
// ---------------------------------------------------------------------------

Reduction leafprime_to_bipartite(const LeafPrimeInstance& src) {
    auto S = std::make_shared<const LeafPrimeInstance>(src);
    const int q = src.q;
    const std::uint64_t vs = src.domain.size();
    const std::uint64_t us = binom_u64(vs, static_cast<std::uint64_t>(q));

    auto C = NeighborListMap::from_fn([S, q, vs](std::uint64_t x) {
        std::vector<std::uint64_t> out;
        if (x < vs) {
            for (const auto& e : leaf_edges(S->k, S->C, vs, q, x))
                out.push_back(vs + subset_rank(e));
        } else {
            auto e = subset_unrank(x - vs, vs, q);
            auto confirmed = leaf_edges(S->k, S->C, vs, q, e.front());
            if (std::find(confirmed.begin(), confirmed.end(), e) != confirmed.end())
                out = e;
        }
        return out;
    });

    BipartiteInstance tgt{q, vs, us, C, src.designated};
    return Reduction{tgt,
                     [vs](const Solution& s) -> Solution {
                         auto* x = std::get_if<VertexSol>(&s);
                         if (!x || x->v >= vs) return impossible_solution();
                         return VertexSol{x->v};
                     },
                     "leafprime->bipartite"};
}

// ---------------------------------------------------------------------------
// Bipartite_q -> Leaf'_q: each U-neighbor u of v with deg(u) = 0 mod q
// contributes v's block of the canonical q-partition of u's sorted neighbor
// list as a candidate hyperedge.  Distinct u's can contribute equal blocks,
// which collapses the hyperedge multiset; the back-map therefore ends with a
// full scan, which a counting argument shows always finds a source solution.
// ---------------------------------------------------------------------------

Reduction bipartite_to_leafprime(const BipartiteInstance& src) {
    auto S = std::make_shared<const BipartiteInstance>(src);
    const int q = src.q;
    const std::uint64_t vs = src.v_size;
    if (src.u_size > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw precondition_error("bipartite_to_leafprime: U side too large");
    const int k = static_cast<int>(src.u_size);

    auto C = SubsetListMap::from_fn([S, q, vs](std::uint64_t v) {
        std::vector<std::vector<std::uint64_t>> out;
        if (v >= vs) return out;
        for (std::uint64_t u : bipartite_neighbors_sorted(*S, v)) {
            auto nb = bipartite_neighbors_sorted(*S, u);
            if (nb.empty() || nb.size() % static_cast<std::size_t>(q) != 0) continue;
            auto it = std::lower_bound(nb.begin(), nb.end(), v);
            std::size_t idx = static_cast<std::size_t>(it - nb.begin());
            out.push_back(block_of(nb, idx, q));
        }
        // Collapse duplicate candidate sets (they denote the same hyperedge).
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    });

    LeafPrimeInstance tgt{q, std::max(k, 1), VertexDomain::plain(vs), C, src.designated};
    return Reduction{tgt,
                     [S, q, vs](const Solution& s) -> Solution {
                         auto* x = std::get_if<VertexSol>(&s);
                         if (!x || x->v >= vs) return impossible_solution();
                         std::uint64_t v = x->v;
                         auto deg_mod = [&](std::uint64_t g) {
                             return bipartite_neighbors(*S, g).size() %
                                    static_cast<std::size_t>(q);
                         };
                         if (v != S->designated && deg_mod(v) != 0) return VertexSol{v};
                         for (std::uint64_t u : bipartite_neighbors_sorted(*S, v))
                             if (deg_mod(u) != 0) return VertexSol{u};
                         // Fallback scan; totality guarantees a hit.
                         for (std::uint64_t u = vs; u < S->total_size(); ++u)
                             if (deg_mod(u) != 0) return VertexSol{u};
                         for (std::uint64_t w = 0; w < vs; ++w)
                             if (w != S->designated && deg_mod(w) != 0) return VertexSol{w};
                         if (deg_mod(S->designated) == 0) return VertexSol{S->designated};
                         return impossible_solution();
                     },
                     "bipartite->leafprime"};
}

// ---------------------------------------------------------------------------
// Leaf_q -> Lonely_q: q copies per vertex; copy i of v carries v's i-th
// confirmed edge (lexicographic order), isolated vertices get a private
// cycle, and surplus copies self-map.  The designated copies of v* are
// exactly the ones past deg(v*).
// ---------------------------------------------------------------------------

Reduction leaf_to_lonely(const LeafInstance& src) {
    auto S = std::make_shared<const LeafInstance>(src);
    const int q = src.q;
    const std::uint64_t n0 = src.domain.size();

    std::uint64_t dstar = leaf_edges(q, src.C, n0, q, src.designated).size();
    if (dstar % static_cast<std::uint64_t>(q) == 0)
        return sentinel_reduction(VertexSol{src.designated}, "leaf->lonely (sentinel)");

    VertexDomain dom = VertexDomain::product(src.domain, static_cast<std::uint64_t>(q));
    auto C = VertexMap::from_fn([S, dom, q, n0](std::uint64_t x) {
        auto [v, c] = dom.split(x);
        auto edges = sorted_leaf_edges(q, S->C, n0, q, v);
        if (edges.empty()) return dom.join(v, (c + 1) % static_cast<std::uint64_t>(q));
        if (c >= edges.size()) return x;
        const auto& e = edges[c];
        std::vector<std::uint64_t> members;
        for (std::uint64_t w : e) {
            long long wp = leaf_edge_pos(q, S->C, n0, q, w, e);
            members.push_back(dom.join(w, static_cast<std::uint64_t>(wp)));
        }
        std::sort(members.begin(), members.end());
        return cyclic_succ(members, x);
    });

    std::vector<std::uint64_t> designated;
    for (std::uint64_t c = dstar; c < static_cast<std::uint64_t>(q); ++c)
        designated.push_back(dom.join(src.designated, c));
    std::sort(designated.begin(), designated.end());

    LonelyInstance tgt = LonelyInstance::make(q, dom, C, designated);
    return Reduction{tgt,
                     [dom](const Solution& s) -> Solution {
                         auto* x = std::get_if<VertexSol>(&s);
                         if (!x || x->v >= dom.size()) return impossible_solution();
                         return VertexSol{dom.split(x->v).first};
                     },
                     "leaf->lonely"};
}

// ---------------------------------------------------------------------------
// Lonely_q -> Leaf_q: superimpose q-1 canonical q-dimensional matchings on V
// (this needs q | |V| and |V|/q >= q-1), attach every source hyperedge via
// q-1 fresh "subset copy" vertices, and balance the designated set with a
// w-grid plus one fresh designated vertex.  A designated source vertex that
// lies on a hyperedge overflows its candidate bound; the w-edge is listed
// last so it is the one dropped, and the back-map compensates by scanning
// the (at most q-1) source designated vertices.
// ---------------------------------------------------------------------------

Reduction lonely_to_leaf(const LonelyInstance& src) {
    auto S = std::make_shared<const LonelyInstance>(src);
    const int q = src.q;
    const std::uint64_t n0 = src.domain.size();
    const std::uint64_t m = n0 / static_cast<std::uint64_t>(q);
    if (n0 % static_cast<std::uint64_t>(q) != 0)
        throw precondition_error("lonely_to_leaf: |V| must be divisible by q");
    if (m < static_cast<std::uint64_t>(q - 1))
        throw precondition_error("lonely_to_leaf: |V|/q must be at least q-1");
    const int kd = static_cast<int>(src.designated.size()); // 1..q-1

    VertexDomain p1 = VertexDomain::product(
        VertexDomain::subsets(n0, q), static_cast<std::uint64_t>(q - 1));
    VertexDomain dom = VertexDomain::disjoint_union(
        {src.domain, p1,
         VertexDomain::plain(static_cast<std::uint64_t>(q - kd) *
                             static_cast<std::uint64_t>(q - 1)),
         VertexDomain::plain(1)});
    const std::uint64_t off0 = dom.offset_of_part(0);
    const std::uint64_t off1 = dom.offset_of_part(1);
    const std::uint64_t off2 = dom.offset_of_part(2);
    const std::uint64_t star = dom.offset_of_part(3);

    auto vrank = [off0](std::uint64_t v) { return off0 + v; };
    auto erank = [off1, p1](std::uint64_t subset, int j) { // j in 1..q-1
        return off1 + p1.join(subset, static_cast<std::uint64_t>(j - 1));
    };
    auto wrank = [off2, q](int i, int j) { // i in 1..q-kd, j in 1..q-1
        return off2 + static_cast<std::uint64_t>(i - 1) * (q - 1) +
               static_cast<std::uint64_t>(j - 1);
    };
    auto wrow = [wrank, q](int i) {
        std::vector<std::uint64_t> row;
        for (int j = 1; j <= q - 1; ++j) row.push_back(wrank(i, j));
        return row;
    };
    auto matching_edge = [q, m](std::uint64_t r, int i) {
        // The i-th canonical matching over V read as [m] x [q].
        long long a = static_cast<long long>(r / static_cast<std::uint64_t>(q));
        long long b = static_cast<long long>(r % static_cast<std::uint64_t>(q));
        std::vector<std::uint64_t> e;
        for (long long j = 0; j < q; ++j) {
            long long aj = (a + (j - b) * i) % static_cast<long long>(m);
            if (aj < 0) aj += static_cast<long long>(m);
            e.push_back(static_cast<std::uint64_t>(aj) * q + static_cast<std::uint64_t>(j));
        }
        std::sort(e.begin(), e.end());
        return e;
    };
    auto gadget_edge = [vrank, erank, q](std::uint64_t v,
                                         const std::vector<std::uint64_t>& e) {
        std::uint64_t sr = subset_rank(e);
        std::vector<std::uint64_t> members{vrank(v)};
        for (int j = 1; j <= q - 1; ++j) members.push_back(erank(sr, j));
        std::sort(members.begin(), members.end());
        return members;
    };
    auto with = [](std::uint64_t extra, std::vector<std::uint64_t> row) {
        row.push_back(extra);
        std::sort(row.begin(), row.end());
        return row;
    };

    auto C = SubsetListMap::from_fn([S, dom, q, kd, n0, star, vrank, erank, wrank, wrow,
                                     matching_edge, gadget_edge,
                                     with](std::uint64_t x) {
        std::vector<std::vector<std::uint64_t>> out;
        auto [part, local] = dom.locate(x);
        if (part == 0) {
            std::uint64_t v = local;
            for (int i = 1; i <= q - 1; ++i) {
                auto e = matching_edge(v, i);
                for (std::uint64_t& w : e) w = vrank(w);
                out.push_back(std::move(e));
            }
            if (auto e = lonely_edge(*S, v)) out.push_back(gadget_edge(v, *e));
            if (S->is_designated(v)) out.push_back(with(vrank(v), wrow(1)));
            if (out.size() > static_cast<std::size_t>(q)) out.resize(q);
        } else if (part == 1) {
            auto [sr, copy] = dom.parts()[1].split(local);
            (void)copy;
            auto e = subset_unrank(sr, n0, q);
            auto confirmed = lonely_edge(*S, e.front());
            if (confirmed && *confirmed == e)
                for (std::uint64_t v : e) out.push_back(gadget_edge(v, e));
        } else if (part == 2) {
            int i = static_cast<int>(local / static_cast<std::uint64_t>(q - 1)) + 1;
            int j = static_cast<int>(local % static_cast<std::uint64_t>(q - 1)) + 1;
            if (i == 1) {
                for (std::uint64_t u : S->designated) out.push_back(with(vrank(u), wrow(1)));
                for (int i2 = 2; i2 <= q - kd; ++i2)
                    out.push_back(with(wrank(1, j), wrow(i2)));
                out.push_back(with(star, wrow(1)));
            } else {
                for (int j2 = 1; j2 <= q - 1; ++j2)
                    out.push_back(with(wrank(1, j2), wrow(i)));
                out.push_back(with(star, wrow(i)));
            }
        } else {
            for (int i = 1; i <= q - kd; ++i) out.push_back(with(star, wrow(i)));
        }
        return out;
    });

    LeafInstance tgt{q, dom, C, star};
    return Reduction{tgt,
                     [S, dom](const Solution& s) -> Solution {
                         auto* x = std::get_if<VertexSol>(&s);
                         if (!x || x->v >= dom.size()) return impossible_solution();
                         auto [part, local] = dom.locate(x->v);
                         if (part == 0) return VertexSol{local};
                         for (std::uint64_t u : S->designated)
                             if (lonely_edge(*S, u)) return VertexSol{u};
                         return impossible_solution();
                     },
                     "lonely->leaf"};
}

// ---------------------------------------------------------------------------
// Bipartite_p -> SuccinctBipartite_p (p prime): give every edge multiplicity
// t = (deg(v*) mod p)^{-1}, so the designated degree becomes 1 mod p.  The
// grouping at any pivot chunks the lexicographic copy list into p-blocks,
// with the designated edge e* excluded at v*; a pivot groups exactly when
// its copy count (minus the exclusion) is 0 mod p.
// ---------------------------------------------------------------------------

Reduction bipartite_to_succbipartite(const BipartiteInstance& src) {
    auto S = std::make_shared<const BipartiteInstance>(src);
    const int p = src.q;
    if (!is_prime(static_cast<std::uint64_t>(p)))
        throw precondition_error("bipartite_to_succbipartite: modulus must be prime");

    auto nbstar = bipartite_neighbors_sorted(src, src.designated);
    int dstar = static_cast<int>(nbstar.size() % static_cast<std::size_t>(p));
    if (dstar == 0)
        return sentinel_reduction(VertexSol{src.designated},
                                  "bipartite->succbipartite (sentinel)");
    PrimeField f(p);
    const int t = f.inv(dstar);
    const std::uint64_t vs = src.v_size;
    const std::uint64_t ustar = nbstar.front() - vs;

    auto count = CountMap::from_fn([S, t, vs](std::uint64_t v, std::uint64_t u) {
        auto nb = bipartite_neighbors(*S, v);
        return std::find(nb.begin(), nb.end(), vs + u) != nb.end() ? t : 0;
    });

    auto make_phi = [S, p, t, vs, ustar](int side) {
        return GroupMap::from_fn(
            [S, p, t, vs, ustar, side](std::uint64_t pivot, std::uint64_t other, int k) {
                EdgeGroup items;
                std::uint64_t pg = side == 0 ? pivot : vs + pivot;
                for (std::uint64_t nb : bipartite_neighbors_sorted(*S, pg)) {
                    std::uint64_t ol = side == 0 ? nb - vs : nb;
                    for (int c = 1; c <= t; ++c) {
                        if (side == 0 && pivot == S->designated && ol == ustar && c == 1)
                            continue; // e* stays ungrouped at v*
                        items.emplace_back(ol, c);
                    }
                }
                if (items.empty() || items.size() % static_cast<std::size_t>(p) != 0)
                    return EdgeGroup{};
                auto it = std::find(items.begin(), items.end(), std::make_pair(other, k));
                if (it == items.end()) return EdgeGroup{};
                return block_of(items, static_cast<std::size_t>(it - items.begin()), p);
            });
    };

    SuccBipartiteInstance tgt{p,           vs,
                              src.u_size,  count,
                              make_phi(0), make_phi(1),
                              SuccBipartiteEdge{src.designated, ustar, 1}};
    return Reduction{tgt,
                     [S, p, vs](const Solution& s) -> Solution {
                         auto* es = std::get_if<EdgeSol>(&s);
                         if (!es) return impossible_solution();
                         auto deg_mod = [&](std::uint64_t g) {
                             return bipartite_neighbors(*S, g).size() %
                                    static_cast<std::size_t>(p);
                         };
                         if (es->e.v < vs && es->e.v != S->designated &&
                             deg_mod(es->e.v) != 0)
                             return VertexSol{es->e.v};
                         if (vs + es->e.u < S->total_size() && deg_mod(vs + es->e.u) != 0)
                             return VertexSol{vs + es->e.u};
                         return impossible_solution();
                     },
                     "bipartite->succbipartite"};
}

// ---------------------------------------------------------------------------
// SuccinctBipartite_p -> TwoMatchings_p: one vertex per potential edge
// (v,u,k); matching 0 realizes the groups pivoting at U, matching 1 the
// groups pivoting at V.  The designated-edge clause transfers verbatim.
// ---------------------------------------------------------------------------

Reduction succbipartite_to_twomatchings(const SuccBipartiteInstance& src) {
    auto S = std::make_shared<const SuccBipartiteInstance>(src);
    const int p = src.q;
    const std::uint64_t us = src.u_size;
    const std::uint64_t kmax = static_cast<std::uint64_t>(p - 1);
    std::uint64_t size = checked_mul_u64(checked_mul_u64(src.v_size, us,
                                                         "succbipartite->twomatchings"),
                                         kmax, "succbipartite->twomatchings");

    auto rank = [us, kmax](const SuccBipartiteEdge& e) {
        return (e.v * us + e.u) * kmax + static_cast<std::uint64_t>(e.k - 1);
    };
    auto unrank = [us, kmax](std::uint64_t r) {
        SuccBipartiteEdge e;
        e.k = static_cast<int>(r % kmax) + 1;
        r /= kmax;
        e.u = r % us;
        e.v = r / us;
        return e;
    };

    auto make_c = [S, rank, unrank](int side) {
        return NeighborListMap::from_fn([S, rank, unrank, side](std::uint64_t x) {
            std::vector<std::uint64_t> out;
            SuccBipartiteEdge e = unrank(x);
            if (!succbip_grouped(*S, side, e)) return out;
            const GroupMap& phi = side == 0 ? S->phi_v : S->phi_u;
            std::uint64_t pivot = side == 0 ? e.v : e.u;
            std::uint64_t other = side == 0 ? e.u : e.v;
            for (auto& [o, k2] : phi(pivot, other, e.k))
                out.push_back(rank(side == 0 ? SuccBipartiteEdge{e.v, o, k2}
                                             : SuccBipartiteEdge{o, e.u, k2}));
            std::sort(out.begin(), out.end());
            return out;
        });
    };

    TwoMatchingsInstance tgt{p, VertexDomain::plain(size), make_c(1), make_c(0),
                             rank(src.e_star)};
    return Reduction{tgt,
                     [unrank, size](const Solution& s) -> Solution {
                         auto* x = std::get_if<VertexSol>(&s);
                         if (!x || x->v >= size) return impossible_solution();
                         return EdgeSol{unrank(x->v)};
                     },
                     "succbipartite->twomatchings"};
}

// ---------------------------------------------------------------------------
// TwoMatchings_p -> Lonely_p: p copies per vertex; matching-0 edges occupy
// copies 0..p-2, matching-1 edges copy p-1, doubly isolated vertices get a
// private cycle, the rest self-map.  Designated: copy p-1 of v*.
// ---------------------------------------------------------------------------

Reduction twomatchings_to_lonely(const TwoMatchingsInstance& src) {
    auto S = std::make_shared<const TwoMatchingsInstance>(src);
    const int p = src.p;
    VertexDomain dom = VertexDomain::product(src.domain, static_cast<std::uint64_t>(p));

    auto C = VertexMap::from_fn([S, dom, p](std::uint64_t x) {
        auto [v, c] = dom.split(x);
        int b = c == static_cast<std::uint64_t>(p - 1) ? 1 : 0;
        if (auto e = tm_edge(*S, b, v)) {
            std::vector<std::uint64_t> members;
            for (std::uint64_t w : *e) members.push_back(dom.join(w, c));
            std::sort(members.begin(), members.end());
            return cyclic_succ(members, x);
        }
        if (!tm_edge(*S, 0, v) && !tm_edge(*S, 1, v))
            return dom.join(v, (c + 1) % static_cast<std::uint64_t>(p));
        return x;
    });

    LonelyInstance tgt = LonelyInstance::make(
        p, dom, C, {dom.join(src.designated, static_cast<std::uint64_t>(p - 1))});
    return Reduction{tgt,
                     [dom](const Solution& s) -> Solution {
                         auto* x = std::get_if<VertexSol>(&s);
                         if (!x || x->v >= dom.size()) return impossible_solution();
                         return VertexSol{dom.split(x->v).first};
                     },
                     "twomatchings->lonely"};
}

} // namespace modq
