#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "modq/gen.hpp"
#include "modq/instance.hpp"

using namespace modq;

namespace {

// A Lonely_q instance from an explicit list of disjoint hyperedges.
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

TEST_CASE("lonely: edges, degrees, verification") {
    auto inst = lonely_from_edges(3, 7, {{0, 2, 4}}, {6});
    CHECK(lonely_edge(inst, 0) == std::vector<std::uint64_t>{0, 2, 4});
    CHECK(lonely_edge(inst, 2) == std::vector<std::uint64_t>{0, 2, 4});
    CHECK(!lonely_edge(inst, 1));
    CHECK(!lonely_edge(inst, 6));
    SearchInstance si{inst};
    CHECK(degree(si, 0) == 1);
    CHECK(degree(si, 1) == 0);
    // Solutions: isolated non-designated vertices, or a matched designated one.
    CHECK(verify(si, VertexSol{1}));
    CHECK(verify(si, VertexSol{3}));
    CHECK(!verify(si, VertexSol{0}));   // matched, not designated
    CHECK(!verify(si, VertexSol{6}));   // designated and isolated
    CHECK(!verify(si, VertexSol{99}));  // out of domain
    CHECK(!verify(si, PointSol{{1}}));  // wrong solution shape

    Budget budget;
    auto all = all_solutions(si, budget);
    std::vector<Solution> want{VertexSol{1}, VertexSol{3}, VertexSol{5}};
    CHECK(all == want);
    Budget b2;
    CHECK(brute_solve(si, b2) == Solution{VertexSol{1}});
}

TEST_CASE("lonely: a matched designated vertex is a solution") {
    auto inst = lonely_from_edges(2, 4, {{0, 1}}, {1});
    SearchInstance si{inst};
    CHECK(verify(si, VertexSol{1}));
    CHECK(verify(si, VertexSol{2}));
    CHECK(!verify(si, VertexSol{0}));
}

TEST_CASE("lonely: broken orbits yield no edge") {
    // C(0) = 1 but C(1) = 1: not a clean 2-cycle, so both are isolated.
    std::vector<std::uint64_t> table{1, 1, 2, 3};
    auto inst = LonelyInstance::make(2, VertexDomain::plain(4),
                                     VertexMap::from_table(table), {3});
    CHECK(!lonely_edge(inst, 0));
    CHECK(!lonely_edge(inst, 1));
    CHECK(verify(SearchInstance{inst}, VertexSol{0}));
}

TEST_CASE("bipartite: mutual edges only") {
    // V = {0,1}, U = {2,3}; 0 lists 2 and 3, but only 2 lists 0 back.
    auto C = NeighborListMap::from_table({{2, 3}, {}, {0}, {}});
    BipartiteInstance inst{2, 2, 2, C, 0};
    CHECK(bipartite_neighbors(inst, 0) == std::vector<std::uint64_t>{2});
    SearchInstance si{inst};
    CHECK(degree(si, 0) == 1);
    CHECK(!verify(si, VertexSol{0})); // designated counts only when deg = 0 mod q
    CHECK(verify(si, VertexSol{2}));  // non-designated with degree 1 != 0 mod 2
    CHECK(!verify(si, VertexSol{1})); // degree 0 is fine off the designated vertex
}

TEST_CASE("twomatchings: designated expects (1, 0) degrees") {
    // Matching 0 holds edge {0,1}; matching 1 is empty.
    auto C0 = NeighborListMap::from_table({{0, 1}, {0, 1}, {}, {}});
    auto C1 = NeighborListMap::from_table({{}, {}, {}, {}});
    TwoMatchingsInstance inst{2, VertexDomain::plain(4), C0, C1, 0};
    SearchInstance si{inst};
    CHECK(!verify(si, VertexSol{0})); // deg0 = 1, deg1 = 0: as required at v*
    CHECK(!verify(si, VertexSol{2})); // deg0 = deg1 = 0 elsewhere: fine
    CHECK(verify(si, VertexSol{1}));  // deg0 = 1 != deg1 = 0 off the designated vertex
}

TEST_CASE("endofline: sources and sinks off the designated head") {
    // Confirmed path 0 -> 1 -> 2; vertex 3 isolated.
    auto succ = VertexMap::from_table({1, 2, 2, 3});
    auto pred = VertexMap::from_table({0, 0, 1, 3});
    EndOfLineInstance inst{VertexDomain::plain(4), succ, pred, 0};
    SearchInstance si{inst};
    CHECK(eol_has_out(inst, 0));
    CHECK(!eol_has_in(inst, 0));
    CHECK(verify(si, VertexSol{2})); // sink
    CHECK(verify(si, VertexSol{3})); // isolated = source and sink
    CHECK(!verify(si, VertexSol{0})); // the designated source itself
    CHECK(!verify(si, VertexSol{1})); // interior
}

TEST_CASE("chevalley: solutions are nonzero roots") {
    auto sys = parse_system({"x1*x2 + x3"}, 3, 3);
    auto inst = ChevalleyInstance::make(sys);
    SearchInstance si{inst};
    CHECK(!verify(si, PointSol{{0, 0, 0}}));
    CHECK(verify(si, PointSol{{1, 1, 2}}));  // 1*1 + 2 = 0 mod 3
    CHECK(!verify(si, PointSol{{1, 1, 1}}));
    CHECK(!verify(si, PointSol{{1, 1}}));    // wrong arity
    CHECK_THROWS_AS(ChevalleyInstance::make(parse_system({"x1 + 1"}, 3, 2)),
                    precondition_error); // not zecote
    CHECK_THROWS_AS(ChevalleyInstance::make(parse_system({"x1^2"}, 3, 2)),
                    precondition_error); // degree sum not < n
}

TEST_CASE("general chevalley: a second root or a max-degree tuple certificate") {
    // x1^2 over F_3 in one variable: variety = {0}, so |V| = 1 is not 0 mod 3
    // and the certificate side must be available.
    auto sys = parse_system({"x1^2"}, 3, 1);
    auto inst = GeneralChevalleyInstance::make(sys);
    SearchInstance si{inst};
    CHECK(!verify(si, PointSol{{0}}));
    CHECK(!verify(si, PointSol{{1}}));
    Budget budget;
    auto sols = all_solutions(si, budget);
    REQUIRE(!sols.empty());
    for (auto& s : sols) CHECK(std::holds_alternative<TupleSol>(s));

    // x1 + x2 has 3 roots: any nonzero root is a solution.
    auto inst2 = GeneralChevalleyInstance::make(parse_system({"x1 + x2"}, 3, 2));
    CHECK(verify(SearchInstance{inst2}, PointSol{{1, 2}}));
}

TEST_CASE("bis/sis: vector solutions are range-checked, nonzero, in the kernel") {
    ModMatrix A{{{1, 1, 2, 0}}, 4};
    // Rows m=1, n=4 >= (m+1)^{N(4)} (4-1) = 4*3 fails... use q=2.
    ModMatrix A2{{{1, 1, 0}}, 2};
    auto bis = BisInstance::make(A2);
    SearchInstance si{bis};
    CHECK(verify(si, VecSol{{1, 1, 0}}));
    CHECK(verify(si, VecSol{{0, 0, 1}}));   // 0 != touching the row? row dot = 0
    CHECK(!verify(si, VecSol{{0, 0, 0}}));  // zero vector
    CHECK(!verify(si, VecSol{{1, 0, 0}}));  // not in the kernel
    CHECK(!verify(si, VecSol{{-1, 1, 0}})); // out of {0,1}
    (void)A;

    ModMatrix A3{{{1, 2, 3}}, 3};
    auto sis = SisInstance::make(A3);
    SearchInstance s2{sis};
    CHECK(verify(s2, VecSol{{1, 1, 0}}));
    CHECK(verify(s2, VecSol{{-1, -1, 0}}));
    CHECK(!verify(s2, VecSol{{2, 1, 0}})); // out of {-1,0,1}
}

TEST_CASE("materialize turns closures into tables without changing behavior") {
    auto base = gen::lonely(3, 4, 2, 99);
    auto closure = LonelyInstance::make(
        base.q, base.domain,
        VertexMap::from_fn([base](std::uint64_t v) { return base.C(v); }),
        base.designated);
    CHECK(closure.C.backing == OracleBacking::Closure);
    Budget budget;
    auto mat = materialize(SearchInstance{closure}, budget);
    auto& m = std::get<LonelyInstance>(mat);
    CHECK(m.C.backing == OracleBacking::Table);
    for (std::uint64_t v = 0; v < base.domain.size(); ++v) CHECK(m.C(v) == base.C(v));
}

TEST_CASE("problem names are stable") {
    CHECK(problem_name(SearchInstance{gen::lonely(2, 2, 1, 1)}) == "lonely");
    CHECK(problem_name(SearchInstance{gen::leaf(3, 9, 1)}) == "leaf");
    CHECK(problem_name(SearchInstance{gen::endofline(6, 1)}) == "endofline");
    CHECK(problem_name(SearchInstance{gen::bis(2, 1, 1)}) == "bis");
}
