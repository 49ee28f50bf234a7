#include <doctest.h>

#include <cstdint>
#include <vector>

#include "modq/gen.hpp"
#include "modq/reductions.hpp"
#include "modq/registry.hpp"

using namespace modq;

namespace {

LonelyInstance lonely_from_edges(int q, std::uint64_t n_vertices,
                                 std::vector<std::vector<std::uint64_t>> edges,
                                 std::vector<std::uint64_t> designated) {
    std::vector<std::uint64_t> table(n_vertices);
    for (std::uint64_t v = 0; v < n_vertices; ++v) table[v] = v;
    for (auto& e : edges)
        for (std::size_t i = 0; i < e.size(); ++i) table[e[i]] = e[(i + 1) % e.size()];
    return LonelyInstance::make(q, VertexDomain::plain(n_vertices),
                                VertexMap::from_table(std::move(table)),
                                std::move(designated));
}

} // namespace

TEST_CASE("every registered reduction is sound on a few seeds") {
    for (auto& r : reduction_registry()) {
        CAPTURE(r.id);
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            auto src = r.gen_source(seed);
            Budget budget;
            auto red = r.apply(src, budget);
            if (r.heavy_target) continue; // sweeping the target is infeasible
            Budget b2;
            CHECK(verify_reduction(src, red, b2));
        }
    }
}

TEST_CASE("registry ids are unique and resolvable") {
    auto& reg = reduction_registry();
    CHECK(reg.size() >= 14);
    for (auto& r : reg) {
        auto* found = find_reduction(r.id);
        REQUIRE(found != nullptr);
        CHECK(found->source_problem == r.source_problem);
    }
    CHECK(find_reduction("no-such-id") == nullptr);
}

TEST_CASE("corrupted back-maps are caught") {
    auto* r = find_reduction("A.3b:lonely->leaf");
    REQUIRE(r);
    auto src = r->gen_source(5);
    Budget budget;
    auto red = r->apply(src, budget);
    Reduction corrupted{red.target, [](const Solution&) -> Solution { return VertexSol{~0ull}; },
                        red.provenance};
    Budget b2, b3;
    CHECK(verify_reduction(src, red, b2));
    CHECK(!verify_reduction(src, corrupted, b3));
}

TEST_CASE("lonely_restrict reaches the requested designated count") {
    auto src = lonely_from_edges(5, 10, {{0, 1, 2, 3, 4}}, {5, 6, 7});
    for (int k = 1; k <= 4; ++k) {
        auto red = lonely_restrict(src, k);
        auto& tgt = std::get<LonelyInstance>(red.target);
        CHECK(tgt.q == 5);
        CHECK(tgt.designated.size() == static_cast<std::size_t>(k));
        Budget budget;
        CHECK(verify_reduction(SearchInstance{src}, red, budget));
    }
    CHECK_THROWS_AS(lonely_restrict(src, 0), precondition_error);
    CHECK_THROWS_AS(lonely_restrict(src, 5), precondition_error);
}

TEST_CASE("lonely_restrict short-circuits on a matched designated vertex") {
    auto src = lonely_from_edges(3, 6, {{0, 1, 2}}, {2, 3});
    auto red = lonely_restrict(src, 1);
    // Any target solution must map back to the immediate source solution 2.
    Budget budget;
    auto sol = brute_solve(red.target, budget);
    CHECK(red.back_map(sol) == Solution{VertexSol{2}});
    CHECK(verify(SearchInstance{src}, red.back_map(sol)));
}

TEST_CASE("lonely_pk_to_lonely_p: subset domain and designated set shape") {
    // |V*| = 2 with p = 2: t = 1, so the target lives on 2-subsets.
    auto src = lonely_from_edges(4, 8, {{0, 1, 2, 3}}, {5, 6});
    auto red = lonely_pk_to_lonely_p(src);
    auto& tgt = std::get<LonelyInstance>(red.target);
    CHECK(tgt.q == 2);
    CHECK(tgt.domain.kind() == VertexDomain::Kind::Subsets);
    CHECK(tgt.domain.base_size() == 8);
    CHECK(tgt.domain.k() == 2);
    CHECK(tgt.designated.size() == 1); // C(2, 2) = 1 subset of V*
    CHECK(tgt.designated.front() == tgt.domain.rank_elements({5, 6}));
    Budget budget;
    CHECK(verify_reduction(SearchInstance{src}, red, budget));
    CHECK_THROWS_AS(lonely_pk_to_lonely_p(lonely_from_edges(3, 6, {}, {1})),
                    precondition_error); // modulus not a proper prime power
}

TEST_CASE("lonely_to_mod and mod_to_lonely round-trip") {
    auto src = lonely_from_edges(3, 6, {{0, 1, 2}}, {4});
    auto red = lonely_to_mod(src);
    auto& mid = std::get<LonelyInstance>(red.target);
    // Domain = a 2^N cube plus the k appended designated vertices, with
    // 2^N = -k mod q.
    std::uint64_t cube = mid.domain.size() - mid.designated.size();
    CHECK((cube & (cube - 1)) == 0);
    CHECK((cube + mid.designated.size()) % 3 == 0);
    Budget b1;
    CHECK(verify_reduction(SearchInstance{src}, red, b1));
    auto red2 = mod_to_lonely(mid);
    Budget b2;
    CHECK(verify_reduction(SearchInstance{mid}, red2, b2));
}

TEST_CASE("endofline_to_lonely structure") {
    auto src = gen::endofline(7, 3);
    for (int q : {2, 3, 4}) {
        auto red = endofline_to_lonely(src, q);
        auto& tgt = std::get<LonelyInstance>(red.target);
        CHECK(tgt.q == q);
        CHECK(tgt.domain.size() == 7 * static_cast<std::uint64_t>(q));
        CHECK(tgt.designated.size() == static_cast<std::size_t>(q - 1));
        Budget budget;
        CHECK(verify_reduction(SearchInstance{src}, red, budget));
    }
}

// Each target polynomial is linear in the variable its -1-labeled monomial
// names, so a full point extends uniquely from the leading digit block by
// propagation.  Returns an empty point if the seed block never closes the
// chain (i.e. it is not a fixed point of the encoded map).
Point chain_point(const PolynomialSystem& g, const Labeling& lam,
                  const std::vector<int>& first_block) {
    std::vector<int> val(static_cast<std::size_t>(g.n_vars), 0);
    std::vector<bool> known(static_cast<std::size_t>(g.n_vars), false);
    for (std::size_t c = 0; c < first_block.size(); ++c) {
        val[c] = first_block[c];
        known[c] = true;
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < g.polys.size(); ++i) {
            auto dm = g.polys[i].distinct_monomials();
            int dvar = -1;
            bool ready = true;
            for (std::size_t j = 0; j < dm.size(); ++j) {
                if (lam.rows[i][j] == -1) {
                    dvar = dm[j].exps.begin()->first;
                } else {
                    for (auto& [v, e] : dm[j].exps) {
                        (void)e;
                        ready = ready && known[static_cast<std::size_t>(v)];
                    }
                }
            }
            if (dvar < 0 || known[static_cast<std::size_t>(dvar)] || !ready) continue;
            val[static_cast<std::size_t>(dvar)] = 0;
            int r = g.polys[i].eval(val);
            val[static_cast<std::size_t>(dvar)] = r; // f = (rest) - dvar
            known[static_cast<std::size_t>(dvar)] = true;
            progress = true;
        }
    }
    for (bool k : known)
        if (!k) return {};
    return val;
}

TEST_CASE("lonely_to_chevsym on a tiny instance, checked end to end") {
    // Both vertices isolated: the map is the identity on [2]^1.  The target
    // point space is far too large to sweep, but the canonical chain point
    // seeded with the nonzero fixed vertex is a common root of (g, h) and
    // must map back to the unique source solution.
    auto src = lonely_from_edges(2, 2, {}, {1});
    Budget budget(100000000ull);
    auto full = lonely_to_chevsym_full(src, budget);
    auto& tgt = std::get<ChevSymInstance>(full.red.target);
    CHECK(proper_labeling_check(tgt.g, full.lambda) == 0);
    CHECK(full.labeled_degree_sum == labeled_degree_sum(tgt.g, full.lambda));
    CHECK(full.labeled_degree_sum < tgt.g.n_vars);
    CHECK(tgt.sigma.order() == 2);

    Point w = chain_point(tgt.g, full.lambda, {1});
    REQUIRE(!w.empty());
    CHECK(tgt.g.vanishes_at(w));
    CHECK(tgt.h.vanishes_at(w));
    CHECK(verify(full.red.target, PointSol{w}));
    CHECK(full.red.back_map(PointSol{w}) == Solution{VertexSol{0}});
    CHECK(verify(SearchInstance{src}, full.red.back_map(PointSol{w})));
}

TEST_CASE("lonely_to_chevsym short-circuits on a matched designated vertex") {
    auto src = lonely_from_edges(2, 4, {{0, 1}}, {1});
    Budget budget;
    auto red = lonely_to_chevsym(src, budget);
    Budget b2;
    auto sol = brute_solve(red.target, b2);
    CHECK(red.back_map(sol) == Solution{VertexSol{1}});
}

TEST_CASE("compile_turing with one and two fixed queries") {
    for (int p : {2, 3}) {
        const std::uint64_t groups = 2;
        auto q0 = gen::lonely(p, groups, p - 1, 17);
        auto q1 = gen::lonely(p, groups, p - 1, 18);
        AdaptiveOracleAlgorithm alg;
        alg.p = p;
        alg.t = 2;
        alg.next_query = [q0, q1](const std::vector<Solution>& answers) {
            return answers.empty() ? q0 : q1;
        };
        alg.finalize = [](const std::vector<Solution>& answers) { return answers.back(); };
        auto red = compile_turing(alg);
        auto& tgt = std::get<LonelyInstance>(red.target);
        std::uint64_t d = q0.domain.size();
        CHECK(tgt.domain.size() == d + d * d);
        CHECK(tgt.designated.size() == static_cast<std::size_t>(p - 1));
        // Every target solution decodes through the back-map to an answer
        // that verifies the second query.
        Budget budget;
        for (auto& sol : all_solutions(SearchInstance{tgt}, budget)) {
            auto back = red.back_map(sol);
            CHECK(verify(SearchInstance{q1}, back));
        }
    }
}

TEST_CASE("amp round-trip through the composition operator") {
    auto src = gen::amp(2, 3, 21);
    auto red = amp_to_lonely_qr(*src, 2, 3);
    auto& tgt = std::get<LonelyInstance>(red.target);
    CHECK(tgt.q == 6);
    Budget budget;
    CHECK(verify_reduction(SearchInstance{src}, red, budget));
}
