// EndOfLine -> Lonely and the compilation of adaptive oracle algorithms into
// a single Lonely instance.

#include <algorithm>
#include <memory>
#include <vector>

#include "modq/reductions.hpp"
#include "reduction_util.hpp"

namespace modq {

using detail::cyclic_succ;
using detail::impossible_solution;

// ---------------------------------------------------------------------------
// EndOfLine -> Lonely_q: q copies per vertex; the outgoing edge of u and the
// incoming edge of v are fused into the hyperedge {(u, q-1), (v, 0..q-2)}.
// Sources and sinks keep isolated copies; the designated copies of v* are
// the in-edge slots, which stay isolated by the in-degree-0 promise.
// ---------------------------------------------------------------------------

Reduction endofline_to_lonely(const EndOfLineInstance& src, int q) {
    if (q < 2) throw precondition_error("endofline_to_lonely: q must be at least 2");
    auto S = std::make_shared<const EndOfLineInstance>(src);
    VertexDomain dom = VertexDomain::product(src.domain, static_cast<std::uint64_t>(q));
    const std::uint64_t last = static_cast<std::uint64_t>(q - 1);

    auto C = VertexMap::from_fn([S, dom, q, last](std::uint64_t x) {
        auto [w, c] = dom.split(x);
        std::uint64_t u, v;
        if (c == last) {
            if (!eol_has_out(*S, w)) return x;
            u = w;
            v = S->succ(w);
        } else {
            if (!eol_has_in(*S, w)) return x;
            u = S->pred(w);
            v = w;
        }
        std::vector<std::uint64_t> members{dom.join(u, last)};
        for (std::uint64_t c2 = 0; c2 < last; ++c2) members.push_back(dom.join(v, c2));
        std::sort(members.begin(), members.end());
        return cyclic_succ(members, x);
    });

    std::vector<std::uint64_t> designated;
    for (std::uint64_t c = 0; c < last; ++c) designated.push_back(dom.join(src.designated, c));
    std::sort(designated.begin(), designated.end());

    LonelyInstance tgt = LonelyInstance::make(q, dom, C, designated);
    return Reduction{tgt,
                     [dom](const Solution& s) -> Solution {
                         auto* x = std::get_if<VertexSol>(&s);
                         if (!x || x->v >= dom.size()) return impossible_solution();
                         return VertexSol{dom.split(x->v).first};
                     },
                     "endofline->lonely"};
}

// ---------------------------------------------------------------------------
// Compiling an adaptive t-query algorithm into one Lonely_p instance.  The
// vertex set is the disjoint union of all answer prefixes (v_1, ..., v_k),
// k = 1..t.  A prefix whose proper part contains an invalid answer is
// matched with its siblings through a trivial matching on the last
// coordinate; a valid prefix follows the current query's hyperedge, hangs
// off its parent together with the next query's designated set, or - when
// complete - is isolated, in which case it decodes to a full answer tuple.
// ---------------------------------------------------------------------------

namespace {

void check_query(const LonelyInstance& g, int p, std::uint64_t d) {
    if (g.q != p) throw precondition_error("compile_turing: query modulus mismatch");
    if (g.domain.size() != d)
        throw precondition_error("compile_turing: queries must share one domain size");
    if (g.designated.size() != static_cast<std::size_t>(p - 1))
        throw precondition_error("compile_turing: queries must have exactly p-1 designated");
    for (std::uint64_t u : g.designated)
        if (lonely_edge(g, u))
            throw precondition_error("compile_turing: query designated sets must be isolated");
}

} // namespace

Reduction compile_turing(const AdaptiveOracleAlgorithm& alg) {
    const int p = alg.p;
    const int t = alg.t;
    if (t < 1) throw precondition_error("compile_turing: need at least one query");

    LonelyInstance first = alg.next_query({});
    const std::uint64_t d = first.domain.size();
    if (d % static_cast<std::uint64_t>(p) != 0)
        throw precondition_error("compile_turing: query domain size must be divisible by p");
    check_query(first, p, d);

    std::vector<VertexDomain> parts;
    std::uint64_t layer = 1;
    for (int k = 1; k <= t; ++k) {
        layer = checked_mul_u64(layer, d, "compile_turing");
        parts.push_back(VertexDomain::plain(layer));
    }
    VertexDomain dom = VertexDomain::disjoint_union(parts);

    auto rank = [dom, d](const std::vector<std::uint64_t>& coords) {
        std::uint64_t r = 0;
        for (std::uint64_t c : coords) r = r * d + c;
        return dom.offset_of_part(coords.size() - 1) + r;
    };
    auto decode = [dom, d](std::uint64_t x) {
        auto [part, local] = dom.locate(x);
        std::vector<std::uint64_t> coords(part + 1);
        for (std::size_t i = part + 1; i-- > 0;) {
            coords[i] = local % d;
            local /= d;
        }
        return coords;
    };

    auto C = VertexMap::from_fn([alg, p, t, d, rank, decode](std::uint64_t x) {
        auto coords = decode(x);
        const std::size_t k = coords.size();
        std::vector<Solution> answers;
        LonelyInstance g = alg.next_query(answers);
        std::size_t j = 0; // answered prefix length
        while (j + 1 < k) {
            check_query(g, p, d);
            if (!verify(SearchInstance{g}, VertexSol{coords[j]})) break;
            answers.push_back(VertexSol{coords[j]});
            g = alg.next_query(answers);
            ++j;
        }
        std::uint64_t vk = coords.back();
        std::vector<std::uint64_t> prefix(coords.begin(), coords.end() - 1);
        if (j + 1 < k) {
            // Invalid proper prefix: trivial matching on the last coordinate.
            std::vector<std::uint64_t> members;
            std::uint64_t base = vk / p * p;
            for (int b = 0; b < p; ++b) {
                auto c2 = prefix;
                c2.push_back(base + static_cast<std::uint64_t>(b));
                members.push_back(rank(c2));
            }
            std::sort(members.begin(), members.end());
            return cyclic_succ(members, x);
        }
        check_query(g, p, d);
        if (auto e = lonely_edge(g, vk)) {
            std::vector<std::uint64_t> members;
            for (std::uint64_t u : *e) {
                auto c2 = prefix;
                c2.push_back(u);
                members.push_back(rank(c2));
            }
            std::sort(members.begin(), members.end());
            return cyclic_succ(members, x);
        }
        if (g.is_designated(vk)) {
            if (k == 1) return x; // the compiled designated set stays isolated
            std::vector<std::uint64_t> members{rank(prefix)};
            for (std::uint64_t u : g.designated) {
                auto c2 = prefix;
                c2.push_back(u);
                members.push_back(rank(c2));
            }
            std::sort(members.begin(), members.end());
            return cyclic_succ(members, x);
        }
        // vk is a valid answer to the current query.
        if (k == static_cast<std::size_t>(t)) return x; // a compiled solution
        answers.push_back(VertexSol{vk});
        LonelyInstance gn = alg.next_query(answers);
        check_query(gn, p, d);
        std::vector<std::uint64_t> members{x};
        for (std::uint64_t u : gn.designated) {
            auto c2 = coords;
            c2.push_back(u);
            members.push_back(rank(c2));
        }
        std::sort(members.begin(), members.end());
        return cyclic_succ(members, x);
    });

    std::vector<std::uint64_t> designated;
    for (std::uint64_t u : first.designated) designated.push_back(rank({u}));
    std::sort(designated.begin(), designated.end());

    LonelyInstance tgt = LonelyInstance::make(p, dom, C, designated);
    return Reduction{
        tgt,
        [alg, p, t, d, dom, decode](const Solution& s) -> Solution {
            auto* x = std::get_if<VertexSol>(&s);
            if (!x || x->v >= dom.size()) return impossible_solution();
            auto coords = decode(x->v);
            if (coords.size() != static_cast<std::size_t>(t)) return impossible_solution();
            std::vector<Solution> answers;
            LonelyInstance g = alg.next_query(answers);
            for (int j = 0; j < t; ++j) {
                check_query(g, p, d);
                if (!verify(SearchInstance{g}, VertexSol{coords[static_cast<std::size_t>(j)]}))
                    return impossible_solution();
                answers.push_back(VertexSol{coords[static_cast<std::size_t>(j)]});
                if (j + 1 < t) g = alg.next_query(answers);
            }
            return alg.finalize(answers);
        },
        "turing->lonely"};
}

} // namespace modq
