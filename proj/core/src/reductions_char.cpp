// Characteristic manipulation: moving between moduli (q*r and its factors,
// prime powers and their base prime), resizing the designated set, and the
// power-of-two MOD encoding.

#include <algorithm>
#include <memory>
#include <utility>
#include <vector>

#include "modq/field.hpp"
#include "modq/reductions.hpp"
#include "reduction_util.hpp"

namespace modq {

using detail::cyclic_succ;
using detail::impossible_solution;

namespace {

// First designated vertex lying on a hyperedge, if any (immediate solution).
std::optional<std::uint64_t> designated_with_edge(const LonelyInstance& inst) {
    for (std::uint64_t u : inst.designated)
        if (lonely_edge(inst, u)) return u;
    return std::nullopt;
}

} // namespace

// ---------------------------------------------------------------------------
// Amp(Lonely_q, Lonely_r) -> Lonely_{qr}: blow every payload hyperedge up to
// a (qr)-dimensional one by crossing it with [r] (resp. [q]) copies.
// ---------------------------------------------------------------------------

Reduction amp_to_lonely_qr(const AmpInstance& src, int q, int r) {
    const auto* payload = std::get_if<LonelyInstance>(&src.payload);
    if (!payload) throw precondition_error("amp_to_lonely_qr: payload must be a Lonely instance");
    const int sel_mod = src.selector == 0 ? q : r;
    const int factor = src.selector == 0 ? r : q;
    if (payload->q != sel_mod)
        throw precondition_error("amp_to_lonely_qr: payload modulus disagrees with selector");

    auto P = std::make_shared<const LonelyInstance>(*payload);
    VertexDomain dom = VertexDomain::product(payload->domain,
                                             static_cast<std::uint64_t>(factor));
    auto C = VertexMap::from_fn([P, dom, factor](std::uint64_t x) {
        auto [v, i] = dom.split(x);
        (void)i;
        auto e = lonely_edge(*P, v);
        if (!e) return x;
        std::vector<std::uint64_t> members;
        for (std::uint64_t w : *e)
            for (int c = 0; c < factor; ++c)
                members.push_back(dom.join(w, static_cast<std::uint64_t>(c)));
        std::sort(members.begin(), members.end());
        return cyclic_succ(members, x);
    });

    std::vector<std::uint64_t> designated;
    for (std::uint64_t u : payload->designated)
        for (int c = 0; c < factor; ++c)
            designated.push_back(dom.join(u, static_cast<std::uint64_t>(c)));
    std::sort(designated.begin(), designated.end());

    LonelyInstance tgt = LonelyInstance::make(q * r, dom, C, designated);
    return Reduction{tgt,
                     [dom](const Solution& s) -> Solution {
                         auto* x = std::get_if<VertexSol>(&s);
                         if (!x || x->v >= dom.size()) return impossible_solution();
                         return VertexSol{dom.split(x->v).first};
                     },
                     "amp->lonely_qr"};
}

// ---------------------------------------------------------------------------
// Bipartite_{qr} -> Amp(Bipartite_q, Bipartite_r): deg(v*) is nonzero mod qr
// (else v* is already a solution), so it is nonzero mod q or mod r; select
// that congruence and reuse the same graph.
// ---------------------------------------------------------------------------

Reduction bipartite_qr_to_amp(const BipartiteInstance& src, int q, int r) {
    if (src.q != q * r)
        throw precondition_error("bipartite_qr_to_amp: modulus must equal q*r");
    std::size_t d = bipartite_neighbors(src, src.designated).size();
    if (d % static_cast<std::size_t>(q * r) == 0)
        return sentinel_reduction(VertexSol{src.designated}, "bipartite_qr->amp (sentinel)");

    int selector = d % static_cast<std::size_t>(q) != 0 ? 0 : 1;
    BipartiteInstance payload{selector == 0 ? q : r, src.v_size, src.u_size, src.C,
                              src.designated};
    auto amp = std::make_shared<AmpInstance>(AmpInstance{selector, payload});
    return Reduction{amp, [](const Solution& s) { return s; }, "bipartite_qr->amp"};
}

// ---------------------------------------------------------------------------
// Lonely_p with |V*| = l -> Lonely_p with |V*| = k: take t = l^{-1} k mod p
// copies of every vertex, keep the k lexicographically first designated
// copies designated, and perfectly match the remaining l*t - k = 0 mod p
// designated copies.
// ---------------------------------------------------------------------------

Reduction lonely_restrict(const LonelyInstance& src, int k) {
    const int p = src.q;
    if (!is_prime(static_cast<std::uint64_t>(p)))
        throw precondition_error("lonely_restrict: modulus must be prime");
    if (k < 1 || k > p - 1)
        throw precondition_error("lonely_restrict: k must lie in [1, p-1]");
    if (auto u = designated_with_edge(src))
        return sentinel_reduction(VertexSol{*u}, "lonely_restrict (sentinel)");
    const int l = static_cast<int>(src.designated.size());
    if (l == k) return Reduction{src, [](const Solution& s) { return s; }, "lonely_restrict"};

    PrimeField f(p);
    const int t = f.mul(f.inv(l), k); // in 1..p-1
    VertexDomain dom = VertexDomain::product(src.domain, static_cast<std::uint64_t>(t));

    std::vector<std::uint64_t> all_des;
    for (std::uint64_t u : src.designated)
        for (int c = 0; c < t; ++c) all_des.push_back(dom.join(u, static_cast<std::uint64_t>(c)));
    std::sort(all_des.begin(), all_des.end());
    std::vector<std::uint64_t> kept(all_des.begin(), all_des.begin() + k);
    auto rest = std::make_shared<const std::vector<std::uint64_t>>(all_des.begin() + k,
                                                                   all_des.end());

    auto S = std::make_shared<const LonelyInstance>(src);
    auto C = VertexMap::from_fn([S, dom, p, rest](std::uint64_t x) {
        auto it = std::lower_bound(rest->begin(), rest->end(), x);
        if (it != rest->end() && *it == x) {
            std::size_t idx = static_cast<std::size_t>(it - rest->begin());
            std::size_t start = idx / static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
            std::size_t next = start + (idx - start + 1) % static_cast<std::size_t>(p);
            return (*rest)[next];
        }
        auto [v, c] = dom.split(x);
        if (S->is_designated(v)) return x; // a kept designated copy: isolated
        auto e = lonely_edge(*S, v);
        if (!e) return x;
        std::vector<std::uint64_t> members;
        for (std::uint64_t w : *e) members.push_back(dom.join(w, c));
        std::sort(members.begin(), members.end());
        return cyclic_succ(members, x);
    });

    LonelyInstance tgt = LonelyInstance::make(p, dom, C, kept);
    return Reduction{tgt,
                     [dom](const Solution& s) -> Solution {
                         auto* x = std::get_if<VertexSol>(&s);
                         if (!x || x->v >= dom.size()) return impossible_solution();
                         return VertexSol{dom.split(x->v).first};
                     },
                     "lonely_restrict"};
}

// ---------------------------------------------------------------------------
// Lonely_{p^k} -> Lonely_p over the s-subset domain, s = p^t with t the
// p-adic valuation of |V*|.  A subset inherits the source hyperedges of its
// members; the intersection pattern with each hyperedge is rotated inside
// its p-block of the combinatorial number system, which is well defined
// because p divides C(p^k, c) for 0 < c < p^k.  The designated set (all
// s-subsets of V*) generally has C(|V*|, s) > p-1 elements, so a designated
// restriction is composed on top.
// ---------------------------------------------------------------------------

Reduction lonely_pk_to_lonely_p(const LonelyInstance& src) {
    const std::uint64_t q = static_cast<std::uint64_t>(src.q);
    auto fac = factorize(q);
    if (fac.size() != 1 || fac.front().second < 2)
        throw precondition_error("lonely_pk_to_lonely_p: modulus must be a proper prime power");
    const int p = static_cast<int>(fac.front().first);
    if (auto u = designated_with_edge(src))
        return sentinel_reduction(VertexSol{*u}, "lonely_pk->lonely_p (sentinel)");

    const std::uint64_t l = src.designated.size();
    int t = 0;
    std::uint64_t s = 1;
    while (l % (s * static_cast<std::uint64_t>(p)) == 0) {
        s *= static_cast<std::uint64_t>(p);
        ++t;
    }
    const std::uint64_t n0 = src.domain.size();
    const int si = static_cast<int>(s);
    VertexDomain dom = VertexDomain::subsets(n0, si);

    auto S = std::make_shared<const LonelyInstance>(src);
    auto C = VertexMap::from_fn([S, dom, p, q, si, n0](std::uint64_t x) {
        auto members = dom.elements(x);
        // Distinct source hyperedges met by the subset, canonical order.
        std::vector<std::vector<std::uint64_t>> edges;
        std::vector<std::uint64_t> s0;
        for (std::uint64_t v : members) {
            if (auto e = lonely_edge(*S, v))
                edges.push_back(*e);
            else
                s0.push_back(v);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        if (edges.empty()) return x;
        std::vector<std::uint64_t> next = s0;
        for (const auto& e : edges) {
            std::vector<std::uint64_t> pos;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (std::binary_search(members.begin(), members.end(), e[i]))
                    pos.push_back(static_cast<std::uint64_t>(i));
            std::uint64_t r = subset_rank(pos);
            std::uint64_t shifted = r / p * p + (r % p + 1) % p;
            auto pos2 = subset_unrank(shifted, q, static_cast<int>(pos.size()));
            for (std::uint64_t i : pos2) next.push_back(e[static_cast<std::size_t>(i)]);
        }
        std::sort(next.begin(), next.end());
        return dom.rank_elements(next);
    });

    // All s-subsets of the designated set are designated.
    std::vector<std::uint64_t> designated;
    {
        std::vector<int> pick(static_cast<std::size_t>(si));
        for (int i = 0; i < si; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<std::uint64_t> sub;
            for (int i : pick) sub.push_back(src.designated[static_cast<std::size_t>(i)]);
            designated.push_back(dom.rank_elements(sub));
            int i = si - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] ==
                                 static_cast<int>(l) - si + i)
                --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < si; ++j)
                pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
        std::sort(designated.begin(), designated.end());
    }

    auto back1 = [S, dom](const Solution& sol) -> Solution {
        auto* x = std::get_if<VertexSol>(&sol);
        if (!x || x->v >= dom.size()) return impossible_solution();
        for (std::uint64_t v : dom.elements(x->v)) {
            Solution cand = VertexSol{v};
            if (verify(SearchInstance{*S}, cand)) return cand;
        }
        return impossible_solution();
    };

    if (designated.size() <= static_cast<std::size_t>(p - 1)) {
        LonelyInstance tgt = LonelyInstance::make(p, dom, C, designated);
        return Reduction{tgt, back1, "lonely_pk->lonely_p"};
    }
    LonelyInstance mid = LonelyInstance::make_relaxed(p, dom, C, designated);
    const int k2 = static_cast<int>(designated.size() % static_cast<std::size_t>(p));
    Reduction r2 = lonely_restrict(mid, k2); // k2 != 0 by the valuation of l
    auto bm2 = r2.back_map;
    return Reduction{r2.target,
                     [back1, bm2](const Solution& sol) { return back1(bm2(sol)); },
                     "lonely_pk->lonely_p"};
}

// ---------------------------------------------------------------------------
// Lonely_q -> the MOD_q power-of-two shape.  For q = 2 the domain is padded
// to the next power of two (padding perfectly matched in pairs, needs |V|
// even).  For odd prime q the designated count is first restricted to
// k = -2^N mod q, the non-designated vertices are packed into the low ranks
// of bits(N), the rest of the cube is matched in q-blocks (needs q | |V|),
// and k fresh isolated designated vertices are appended after the cube.
// ---------------------------------------------------------------------------

Reduction lonely_to_mod(const LonelyInstance& src) {
    const int q = src.q;
    if (!is_prime(static_cast<std::uint64_t>(q)))
        throw precondition_error("lonely_to_mod: modulus must be prime");
    if (auto u = designated_with_edge(src))
        return sentinel_reduction(VertexSol{*u}, "lonely_to_mod (sentinel)");
    const std::uint64_t n0 = src.domain.size();
    auto S = std::make_shared<const LonelyInstance>(src);

    if (q == 2) {
        if (n0 % 2 != 0)
            throw precondition_error("lonely_to_mod: |V| must be even for q = 2");
        int N = 1;
        while ((std::uint64_t{1} << N) < n0) ++N;
        const std::uint64_t cube = std::uint64_t{1} << N;
        auto C = VertexMap::from_fn([S, n0](std::uint64_t x) {
            if (x < n0) return S->C(x);
            return n0 + ((x - n0) ^ 1);
        });
        LonelyInstance tgt =
            LonelyInstance::make(2, VertexDomain::bits(N), C, src.designated);
        (void)cube;
        return Reduction{tgt,
                         [n0](const Solution& s) -> Solution {
                             auto* x = std::get_if<VertexSol>(&s);
                             if (!x || x->v >= n0) return impossible_solution();
                             return VertexSol{x->v};
                         },
                         "lonely->mod"};
    }

    if (n0 % static_cast<std::uint64_t>(q) != 0)
        throw precondition_error("lonely_to_mod: |V| must be divisible by q");
    int N = 1;
    while ((std::uint64_t{1} << N) <= static_cast<std::uint64_t>(q - 1) * n0) ++N;
    const std::uint64_t cube = std::uint64_t{1} << N;
    const int k1 = static_cast<int>((static_cast<std::uint64_t>(q) -
                                     cube % static_cast<std::uint64_t>(q)) %
                                    static_cast<std::uint64_t>(q)); // -2^N mod q, in 1..q-1

    Reduction r1 = lonely_restrict(src, k1);
    auto L1 = std::make_shared<const LonelyInstance>(std::get<LonelyInstance>(r1.target));
    auto D1 = std::make_shared<const std::vector<std::uint64_t>>(L1->designated);
    const std::uint64_t m1 = L1->domain.size() - D1->size(); // non-designated count

    auto emb = [D1](std::uint64_t r) { // L1 non-designated rank -> packed rank
        std::uint64_t skip = 0;
        for (std::uint64_t d : *D1)
            if (d < r) ++skip;
        return r - skip;
    };
    auto unemb = [D1](std::uint64_t y) {
        std::uint64_t r = y;
        for (std::uint64_t d : *D1)
            if (d <= r) ++r;
        return r;
    };

    VertexDomain dom = VertexDomain::disjoint_union(
        {VertexDomain::bits(N), VertexDomain::plain(static_cast<std::uint64_t>(k1))});
    auto C = VertexMap::from_fn([L1, q, m1, cube, emb, unemb](std::uint64_t x) {
        if (x >= cube) return x; // appended designated vertices: isolated
        if (x >= m1) {           // cube padding, matched in q-blocks
            std::uint64_t i = x - m1;
            return m1 + i / q * q + (i % q + 1) % static_cast<std::uint64_t>(q);
        }
        auto e = lonely_edge(*L1, unemb(x));
        if (!e) return x;
        std::vector<std::uint64_t> members;
        for (std::uint64_t w : *e) members.push_back(emb(w));
        std::sort(members.begin(), members.end());
        return cyclic_succ(members, x);
    });

    std::vector<std::uint64_t> designated;
    for (int j = 0; j < k1; ++j) designated.push_back(cube + static_cast<std::uint64_t>(j));
    LonelyInstance tgt = LonelyInstance::make(q, dom, C, designated);
    auto bm1 = r1.back_map;
    return Reduction{tgt,
                     [bm1, unemb, m1](const Solution& s) -> Solution {
                         auto* x = std::get_if<VertexSol>(&s);
                         if (!x || x->v >= m1) return impossible_solution();
                         return bm1(VertexSol{unemb(x->v)});
                     },
                     "lonely->mod"};
}

// ---------------------------------------------------------------------------
// The MOD_q shape is a Lonely_q instance already; validate the shape and
// return the identity reduction.
// ---------------------------------------------------------------------------

Reduction mod_to_lonely(const LonelyInstance& src) {
    const int q = src.q;
    bool ok = false;
    if (q == 2) {
        ok = src.domain.kind() == VertexDomain::Kind::Qary && src.domain.q() == 2 &&
             src.designated.size() == 1;
    } else if (src.domain.kind() == VertexDomain::Kind::Union &&
               src.domain.parts().size() == 2) {
        const auto& cube = src.domain.parts()[0];
        const auto& extra = src.domain.parts()[1];
        if (cube.kind() == VertexDomain::Kind::Qary && cube.q() == 2 &&
            extra.kind() == VertexDomain::Kind::Plain) {
            std::uint64_t k = (static_cast<std::uint64_t>(q) -
                               cube.size() % static_cast<std::uint64_t>(q)) %
                              static_cast<std::uint64_t>(q);
            ok = extra.size() == k && src.designated.size() == k;
            for (std::uint64_t j = 0; ok && j < k; ++j)
                ok = src.designated[static_cast<std::size_t>(j)] == cube.size() + j;
        }
    }
    if (!ok) throw precondition_error("mod_to_lonely: instance is not in MOD shape");
    return Reduction{src, [](const Solution& s) { return s; }, "mod->lonely"};
}

} // namespace modq
