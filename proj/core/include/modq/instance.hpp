#ifndef MODQ_INSTANCE_HPP
#define MODQ_INSTANCE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <variant>

#include "modq/circuit.hpp"
#include "modq/domain.hpp"
#include "modq/poly.hpp"

namespace modq {

// ---------------------------------------------------------------------------
// Oracles.  Each is a pure map with one of three backings: an explicit table
// (serializable, desk scale), an arithmetic circuit (VertexMap over [p]^n
// only), or an opaque closure (reduction targets; materialize to serialize).
// ---------------------------------------------------------------------------

enum class OracleBacking { Table, Circuit, Closure };

struct VertexMap {
    OracleBacking backing = OracleBacking::Closure;
    std::function<std::uint64_t(std::uint64_t)> fn;
    std::vector<std::uint64_t> table;
    std::shared_ptr<ArithmeticCircuit> circuit;

    std::uint64_t operator()(std::uint64_t v) const { return fn(v); }

    static VertexMap from_table(std::vector<std::uint64_t> t);
    static VertexMap from_circuit(ArithmeticCircuit c);
    static VertexMap from_fn(std::function<std::uint64_t(std::uint64_t)> f);
};

struct NeighborListMap { // vertex -> candidate neighbor list
    OracleBacking backing = OracleBacking::Closure;
    std::function<std::vector<std::uint64_t>(std::uint64_t)> fn;
    std::vector<std::vector<std::uint64_t>> table;

    std::vector<std::uint64_t> operator()(std::uint64_t v) const { return fn(v); }

    static NeighborListMap from_table(std::vector<std::vector<std::uint64_t>> t);
    static NeighborListMap from_fn(std::function<std::vector<std::uint64_t>(std::uint64_t)> f);
};

struct SubsetListMap { // vertex -> candidate hyperedges (each a sorted vertex set)
    OracleBacking backing = OracleBacking::Closure;
    std::function<std::vector<std::vector<std::uint64_t>>(std::uint64_t)> fn;
    std::vector<std::vector<std::vector<std::uint64_t>>> table;

    std::vector<std::vector<std::uint64_t>> operator()(std::uint64_t v) const { return fn(v); }

    static SubsetListMap from_table(std::vector<std::vector<std::vector<std::uint64_t>>> t);
    static SubsetListMap from_fn(
        std::function<std::vector<std::vector<std::uint64_t>>(std::uint64_t)> f);
};

struct CountMap { // (v, u) -> edge multiplicity in 0..q-1
    OracleBacking backing = OracleBacking::Closure;
    std::function<int(std::uint64_t, std::uint64_t)> fn;
    std::vector<std::vector<int>> table; // [v][u]

    int operator()(std::uint64_t v, std::uint64_t u) const { return fn(v, u); }

    static CountMap from_table(std::vector<std::vector<int>> t);
    static CountMap from_fn(std::function<int(std::uint64_t, std::uint64_t)> f);
};

// Group of edges sharing the pivot endpoint: list of (other endpoint, copy
// index).  Empty list = "not grouped".
using EdgeGroup = std::vector<std::pair<std::uint64_t, int>>;

struct GroupMap {
    OracleBacking backing = OracleBacking::Closure;
    std::function<EdgeGroup(std::uint64_t, std::uint64_t, int)> fn;
    std::vector<std::vector<std::vector<EdgeGroup>>> table; // [v][u][k-1]

    EdgeGroup operator()(std::uint64_t v, std::uint64_t u, int k) const { return fn(v, u, k); }

    static GroupMap from_table(std::vector<std::vector<std::vector<EdgeGroup>>> t);
    static GroupMap from_fn(std::function<EdgeGroup(std::uint64_t, std::uint64_t, int)> f);
};

// ---------------------------------------------------------------------------
// Instances.
// ---------------------------------------------------------------------------

// Lonely_q: q-dimensional matching via the successor map C.  A hyperedge on
// distinct v_1..v_q exists iff C(v_i) = v_{i+1} cyclically; every vertex lies
// on at most one.  Solutions: v in V* with degree 1, or v not in V* with
// degree 0.
struct LonelyInstance {
    int q = 2;
    VertexDomain domain;
    VertexMap C;
    std::vector<std::uint64_t> designated; // sorted, 1 <= |V*| <= q-1 at construction

    static LonelyInstance make(int q, VertexDomain domain, VertexMap C,
                               std::vector<std::uint64_t> designated);
    // Same checks except the |V*| <= q-1 upper bound (internal chain steps).
    static LonelyInstance make_relaxed(int q, VertexDomain domain, VertexMap C,
                                       std::vector<std::uint64_t> designated);
    bool is_designated(std::uint64_t v) const;
};

// Bipartite_q: V = ranks 0..v_size-1, U = the next u_size ranks.  Edge (v,u)
// iff each lists the other.  Solutions: v* if deg(v*) = 0 mod q, v != v* if
// deg(v) != 0 mod q.
struct BipartiteInstance {
    int q = 2;
    std::uint64_t v_size = 0, u_size = 0;
    NeighborListMap C;
    std::uint64_t designated = 0; // must lie on the V side

    std::uint64_t total_size() const { return v_size + u_size; }
    bool on_v_side(std::uint64_t x) const { return x < v_size; }
};

// Leaf_q / Leaf'_q: q-uniform hypergraph; vertex lists q (resp. up to k)
// candidate hyperedges; a hyperedge exists iff all members list it.
struct LeafInstance {
    int q = 2;
    VertexDomain domain;
    SubsetListMap C; // at most q candidates per vertex
    std::uint64_t designated = 0;
};

struct LeafPrimeInstance {
    int q = 2;
    int k = 2; // polynomial degree bound
    VertexDomain domain;
    SubsetListMap C; // at most k candidates per vertex
    std::uint64_t designated = 0;
};

// SuccinctBipartite_q: edges (v,u,k) with 1 <= k <= C(v,u); grouping oracles
// partition (most) edges incident to a pivot into q-groups.
struct SuccBipartiteEdge {
    std::uint64_t v = 0, u = 0;
    int k = 1;
    bool operator==(const SuccBipartiteEdge& o) const {
        return v == o.v && u == o.u && k == o.k;
    }
};

struct SuccBipartiteInstance {
    int q = 2;
    std::uint64_t v_size = 0, u_size = 0; // U ranks are 0..u_size-1 (separate space)
    CountMap count;
    GroupMap phi_v; // pivot at the V endpoint
    GroupMap phi_u; // pivot at the U endpoint
    SuccBipartiteEdge e_star;
};

// TwoMatchings_p: two p-dimensional matchings via candidate-hyperedge oracles
// C0, C1 (edge present iff all members agree on it).  Solutions: v* if
// deg_0(v*) != 1 or deg_1(v*) != 0; v != v* if deg_0(v) != deg_1(v).
struct TwoMatchingsInstance {
    int p = 2;
    VertexDomain domain;
    NeighborListMap C0, C1; // candidate hyperedge (p vertices incl. the argument)
    std::uint64_t designated = 0;
};

struct ChevalleyInstance {
    PolynomialSystem sys; // zecote, degree sum < n_vars

    static ChevalleyInstance make(PolynomialSystem sys);
};

struct GeneralChevalleyInstance {
    PolynomialSystem sys; // zecote

    static GeneralChevalleyInstance make(PolynomialSystem sys);
};

// A permutation of variable indices; applied to assignments by
// (sigma(x))_i = x_{perm[i]}.
struct Permutation {
    std::vector<int> perm;

    Point apply(const Point& x) const;
    int order() const;
    bool is_identity() const;
};

struct ChevSymInstance {
    PolynomialSystem g, h; // zecote, shared variable set
    Permutation sigma;     // order exactly p = g.p

    static ChevSymInstance make(PolynomialSystem g, PolynomialSystem h, Permutation sigma);
};

// EndOfLine: edge u -> v iff succ(u) = v and pred(v) = u; v* has in-degree 0
// and out-degree 1 (generator-checked).  Solutions: v != v* that is a source
// or a sink.
struct EndOfLineInstance {
    VertexDomain domain;
    VertexMap succ, pred;
    std::uint64_t designated = 0;
};

// Integer matrix with modulus.
struct ModMatrix {
    std::vector<std::vector<long long>> entries; // m rows of n
    std::uint64_t q = 2;

    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return entries.empty() ? 0 : entries.front().size(); }
};

struct BisInstance {
    ModMatrix A; // requires n >= (m+1)^{N(q)} (q-1)
    static BisInstance make(ModMatrix A);
};

struct SisInstance {
    ModMatrix A; // requires n >= ((m+1)/2)^{N(q)} (q-1)
    static SisInstance make(ModMatrix A);
};

struct AmpInstance; // selector + payload, defined after SearchInstance

using SearchInstance =
    std::variant<LonelyInstance, BipartiteInstance, LeafInstance, LeafPrimeInstance,
                 SuccBipartiteInstance, TwoMatchingsInstance, ChevalleyInstance,
                 GeneralChevalleyInstance, ChevSymInstance, EndOfLineInstance, BisInstance,
                 SisInstance, std::shared_ptr<AmpInstance>>;

struct AmpInstance {
    int selector = 0; // which of the two declared problems the payload is
    SearchInstance payload;
};

std::string problem_name(const SearchInstance& inst);

// ---------------------------------------------------------------------------
// Solutions.
// ---------------------------------------------------------------------------

struct VertexSol {
    std::uint64_t v = 0;
    bool operator==(const VertexSol& o) const { return v == o.v; }
};
struct EdgeSol {
    SuccBipartiteEdge e;
    bool operator==(const EdgeSol& o) const { return e == o.e; }
};
struct PointSol {
    Point x;
    bool operator==(const PointSol& o) const { return x == o.x; }
};
struct TupleSol {
    MonomialTuple t;
    bool operator==(const TupleSol& o) const { return t == o.t; }
};
struct VecSol { // {0,1} or {-1,0,1} entries
    std::vector<int> x;
    bool operator==(const VecSol& o) const { return x == o.x; }
};

using Solution = std::variant<VertexSol, EdgeSol, PointSol, TupleSol, VecSol>;

std::string solution_str(const Solution& sol);

// ---------------------------------------------------------------------------
// Degrees, verification, solving.
// ---------------------------------------------------------------------------

// Hyperedge (sorted) through v, if any, under the Lonely cyclic rule.
std::optional<std::vector<std::uint64_t>> lonely_edge(const LonelyInstance& inst,
                                                      std::uint64_t v);
// Mutual neighbors of a Bipartite vertex.
std::vector<std::uint64_t> bipartite_neighbors(const BipartiteInstance& inst, std::uint64_t x);
// Distinct confirmed hyperedges through v (Leaf / Leaf' rule).
std::vector<std::vector<std::uint64_t>> leaf_edges(int cap, const SubsetListMap& C,
                                                   std::uint64_t domain_size, int q,
                                                   std::uint64_t v);
// Hyperedge through v in matching b of a TwoMatchings instance, if any.
std::optional<std::vector<std::uint64_t>> tm_edge(const TwoMatchingsInstance& inst, int b,
                                                  std::uint64_t v);
// Is the edge validly grouped pivoting at its V (side=0) / U (side=1) end?
bool succbip_grouped(const SuccBipartiteInstance& inst, int side, const SuccBipartiteEdge& e);
bool succbip_edge_exists(const SuccBipartiteInstance& inst, const SuccBipartiteEdge& e);

// EndOfLine confirmed neighbors.
bool eol_has_out(const EndOfLineInstance& inst, std::uint64_t v);
bool eol_has_in(const EndOfLineInstance& inst, std::uint64_t v);

// Number of (hyper)edges incident to a vertex under the instance's edge rule
// (for TwoMatchings: across both matchings).  Throws on out-of-domain.
std::uint64_t degree(const SearchInstance& inst, std::uint64_t vertex);

bool verify(const SearchInstance& inst, const Solution& sol);

// First verifying solution in canonical candidate order; hard error naming
// the violated totality premise if none exists.
Solution brute_solve(const SearchInstance& inst, Budget& budget);

// All verifying solutions in canonical order (harness use; budget-guarded).
std::vector<Solution> all_solutions(const SearchInstance& inst, Budget& budget);

// ok (nullopt) iff sigma acts freely on {x : pred(x)}: pred(x) implies
// pred(sigma(x)) and sigma(x) != x.  Otherwise the first violating point.
std::optional<Point> check_free_action(const Permutation& sigma,
                                       const std::function<bool(const Point&)>& pred, int n,
                                       int p, Budget& budget);

// Materialize closure oracles into tables (serialization path).
SearchInstance materialize(const SearchInstance& inst, Budget& budget);

} // namespace modq

#endif
