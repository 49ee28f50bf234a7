#include "modq/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace modq {

// ---------------------------------------------------------------------------
// Oracle constructors.
// ---------------------------------------------------------------------------

VertexMap VertexMap::from_table(std::vector<std::uint64_t> t) {
    VertexMap m;
    m.backing = OracleBacking::Table;
    m.table = std::move(t);
    auto tbl = std::make_shared<std::vector<std::uint64_t>>(m.table);
    m.fn = [tbl](std::uint64_t v) {
        if (v >= tbl->size()) throw precondition_error("VertexMap: vertex out of table range");
        return (*tbl)[v];
    };
    return m;
}

VertexMap VertexMap::from_circuit(ArithmeticCircuit c) {
    c.validate();
    VertexMap m;
    m.backing = OracleBacking::Circuit;
    m.circuit = std::make_shared<ArithmeticCircuit>(std::move(c));
    auto circ = m.circuit;
    m.fn = [circ](std::uint64_t v) { return eval_circuit_rank(*circ, v); };
    return m;
}

VertexMap VertexMap::from_fn(std::function<std::uint64_t(std::uint64_t)> f) {
    VertexMap m;
    m.backing = OracleBacking::Closure;
    m.fn = std::move(f);
    return m;
}

NeighborListMap NeighborListMap::from_table(std::vector<std::vector<std::uint64_t>> t) {
    NeighborListMap m;
    m.backing = OracleBacking::Table;
    m.table = std::move(t);
    auto tbl = std::make_shared<std::vector<std::vector<std::uint64_t>>>(m.table);
    m.fn = [tbl](std::uint64_t v) {
        if (v >= tbl->size()) throw precondition_error("NeighborListMap: vertex out of table range");
        return (*tbl)[v];
    };
    return m;
}

NeighborListMap NeighborListMap::from_fn(
    std::function<std::vector<std::uint64_t>(std::uint64_t)> f) {
    NeighborListMap m;
    m.backing = OracleBacking::Closure;
    m.fn = std::move(f);
    return m;
}

SubsetListMap SubsetListMap::from_table(std::vector<std::vector<std::vector<std::uint64_t>>> t) {
    SubsetListMap m;
    m.backing = OracleBacking::Table;
    m.table = std::move(t);
    auto tbl = std::make_shared<std::vector<std::vector<std::vector<std::uint64_t>>>>(m.table);
    m.fn = [tbl](std::uint64_t v) {
        if (v >= tbl->size()) throw precondition_error("SubsetListMap: vertex out of table range");
        return (*tbl)[v];
    };
    return m;
}

SubsetListMap SubsetListMap::from_fn(
    std::function<std::vector<std::vector<std::uint64_t>>(std::uint64_t)> f) {
    SubsetListMap m;
    m.backing = OracleBacking::Closure;
    m.fn = std::move(f);
    return m;
}

CountMap CountMap::from_table(std::vector<std::vector<int>> t) {
    CountMap m;
    m.backing = OracleBacking::Table;
    m.table = std::move(t);
    auto tbl = std::make_shared<std::vector<std::vector<int>>>(m.table);
    m.fn = [tbl](std::uint64_t v, std::uint64_t u) {
        if (v >= tbl->size() || u >= (*tbl)[v].size())
            throw precondition_error("CountMap: index out of table range");
        return (*tbl)[v][u];
    };
    return m;
}

CountMap CountMap::from_fn(std::function<int(std::uint64_t, std::uint64_t)> f) {
    CountMap m;
    m.backing = OracleBacking::Closure;
    m.fn = std::move(f);
    return m;
}

GroupMap GroupMap::from_table(std::vector<std::vector<std::vector<EdgeGroup>>> t) {
    GroupMap m;
    m.backing = OracleBacking::Table;
    m.table = std::move(t);
    auto tbl = std::make_shared<std::vector<std::vector<std::vector<EdgeGroup>>>>(m.table);
    m.fn = [tbl](std::uint64_t v, std::uint64_t u, int k) -> EdgeGroup {
        if (v >= tbl->size() || u >= (*tbl)[v].size())
            throw precondition_error("GroupMap: index out of table range");
        auto& per_k = (*tbl)[v][u];
        if (k < 1 || static_cast<std::size_t>(k) > per_k.size()) return {};
        return per_k[static_cast<std::size_t>(k - 1)];
    };
    return m;
}

GroupMap GroupMap::from_fn(std::function<EdgeGroup(std::uint64_t, std::uint64_t, int)> f) {
    GroupMap m;
    m.backing = OracleBacking::Closure;
    m.fn = std::move(f);
    return m;
}

// ---------------------------------------------------------------------------
// Instance constructors.
// ---------------------------------------------------------------------------

static void check_lonely_common(int q, const VertexDomain& domain,
                                const std::vector<std::uint64_t>& designated) {
    if (q < 2) throw precondition_error("LonelyInstance: q must be at least 2");
    if (designated.empty()) throw precondition_error("LonelyInstance: designated set is empty");
    if (!std::is_sorted(designated.begin(), designated.end()) ||
        std::adjacent_find(designated.begin(), designated.end()) != designated.end())
        throw precondition_error("LonelyInstance: designated set must be sorted and duplicate-free");
    if (designated.back() >= domain.size())
        throw precondition_error("LonelyInstance: designated vertex out of domain");
}

LonelyInstance LonelyInstance::make(int q, VertexDomain domain, VertexMap C,
                                    std::vector<std::uint64_t> designated) {
    check_lonely_common(q, domain, designated);
    if (designated.size() > static_cast<std::size_t>(q - 1))
        throw precondition_error("LonelyInstance: |V*| must be at most q-1");
    return LonelyInstance{q, std::move(domain), std::move(C), std::move(designated)};
}

LonelyInstance LonelyInstance::make_relaxed(int q, VertexDomain domain, VertexMap C,
                                            std::vector<std::uint64_t> designated) {
    check_lonely_common(q, domain, designated);
    return LonelyInstance{q, std::move(domain), std::move(C), std::move(designated)};
}

bool LonelyInstance::is_designated(std::uint64_t v) const {
    return std::binary_search(designated.begin(), designated.end(), v);
}

ChevalleyInstance ChevalleyInstance::make(PolynomialSystem sys) {
    if (!sys.is_zecote())
        throw precondition_error("ChevalleyInstance: system must have zero constant terms");
    if (sys.degree_sum() >= sys.n_vars)
        throw precondition_error("ChevalleyInstance: requires degree sum " +
                                 std::to_string(sys.degree_sum()) + " < n = " +
                                 std::to_string(sys.n_vars));
    return ChevalleyInstance{std::move(sys)};
}

GeneralChevalleyInstance GeneralChevalleyInstance::make(PolynomialSystem sys) {
    if (!sys.is_zecote())
        throw precondition_error("GeneralChevalleyInstance: system must have zero constant terms");
    return GeneralChevalleyInstance{std::move(sys)};
}

Point Permutation::apply(const Point& x) const {
    if (x.size() != perm.size()) throw precondition_error("Permutation::apply: arity mismatch");
    Point y(x.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        y[i] = x[static_cast<std::size_t>(perm[i])];
    return y;
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != static_cast<int>(i)) return false;
    return true;
}

int Permutation::order() const {
    // Validate that perm is a permutation, then lcm of cycle lengths.
    std::size_t n = perm.size();
    std::vector<bool> seen(n, false);
    for (int v : perm)
        if (v < 0 || v >= static_cast<int>(n) || seen[static_cast<std::size_t>(v)])
            throw precondition_error("Permutation: not a bijection");
        else
            seen[static_cast<std::size_t>(v)] = true;
    std::fill(seen.begin(), seen.end(), false);
    long long ord = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        long long len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = true;
            ++len;
        }
        ord = std::lcm(ord, len);
        if (ord > (1ll << 40)) throw precondition_error("Permutation::order: order overflow");
    }
    return static_cast<int>(ord);
}

ChevSymInstance ChevSymInstance::make(PolynomialSystem g, PolynomialSystem h, Permutation sigma) {
    if (g.p != h.p || g.n_vars != h.n_vars)
        throw precondition_error("ChevSymInstance: g and h must share field and variables");
    if (!g.is_zecote() || !h.is_zecote())
        throw precondition_error("ChevSymInstance: systems must have zero constant terms");
    if (static_cast<int>(sigma.perm.size()) != g.n_vars)
        throw precondition_error("ChevSymInstance: sigma must permute the variable set");
    if (sigma.order() != g.p)
        throw precondition_error("ChevSymInstance: sigma must have order exactly p");
    return ChevSymInstance{std::move(g), std::move(h), std::move(sigma)};
}

static void check_matrix(const ModMatrix& A, const char* who) {
    if (A.rows() == 0 || A.cols() == 0)
        throw precondition_error(std::string(who) + ": matrix must be at least 1x1");
    if (A.q < 2) throw precondition_error(std::string(who) + ": modulus must be at least 2");
    for (auto& row : A.entries)
        if (row.size() != A.cols())
            throw precondition_error(std::string(who) + ": ragged matrix");
}

BisInstance BisInstance::make(ModMatrix A) {
    check_matrix(A, "BisInstance");
    int N = exponent_sum(A.q);
    std::uint64_t need = checked_mul_u64(
        checked_pow_u64(static_cast<std::uint64_t>(A.rows()) + 1, static_cast<unsigned>(N),
                        "BisInstance"),
        A.q - 1, "BisInstance");
    if (A.cols() < need)
        throw precondition_error("BisInstance: parameter condition needs n >= " +
                                 std::to_string(need) + ", got " + std::to_string(A.cols()));
    return BisInstance{std::move(A)};
}

SisInstance SisInstance::make(ModMatrix A) {
    check_matrix(A, "SisInstance");
    int N = exponent_sum(A.q);
    // n >= ((m+1)/2)^N (q-1), compared exactly: n * 2^N >= (m+1)^N (q-1).
    std::uint64_t lhs = checked_mul_u64(A.cols(), checked_pow_u64(2, static_cast<unsigned>(N),
                                                                  "SisInstance"),
                                        "SisInstance");
    std::uint64_t rhs = checked_mul_u64(
        checked_pow_u64(static_cast<std::uint64_t>(A.rows()) + 1, static_cast<unsigned>(N),
                        "SisInstance"),
        A.q - 1, "SisInstance");
    if (lhs < rhs)
        throw precondition_error("SisInstance: parameter condition n >= ((m+1)/2)^N(q)·(q-1) fails");
    return SisInstance{std::move(A)};
}

std::string problem_name(const SearchInstance& inst) {
    struct V {
        std::string operator()(const LonelyInstance&) const { return "lonely"; }
        std::string operator()(const BipartiteInstance&) const { return "bipartite"; }
        std::string operator()(const LeafInstance&) const { return "leaf"; }
        std::string operator()(const LeafPrimeInstance&) const { return "leafprime"; }
        std::string operator()(const SuccBipartiteInstance&) const { return "succbipartite"; }
        std::string operator()(const TwoMatchingsInstance&) const { return "twomatchings"; }
        std::string operator()(const ChevalleyInstance&) const { return "chevalley"; }
        std::string operator()(const GeneralChevalleyInstance&) const { return "generalchevalley"; }
        std::string operator()(const ChevSymInstance&) const { return "chevsym"; }
        std::string operator()(const EndOfLineInstance&) const { return "endofline"; }
        std::string operator()(const BisInstance&) const { return "bis"; }
        std::string operator()(const SisInstance&) const { return "sis"; }
        std::string operator()(const std::shared_ptr<AmpInstance>&) const { return "amp"; }
    };
    return std::visit(V{}, inst);
}

std::string solution_str(const Solution& sol) {
    std::ostringstream os;
    if (auto* v = std::get_if<VertexSol>(&sol)) {
        os << "vertex " << v->v;
    } else if (auto* e = std::get_if<EdgeSol>(&sol)) {
        os << "edge (" << e->e.v << ", " << e->e.u << ", " << e->e.k << ")";
    } else if (auto* p = std::get_if<PointSol>(&sol)) {
        os << "point (";
        for (std::size_t i = 0; i < p->x.size(); ++i) os << (i ? "," : "") << p->x[i];
        os << ")";
    } else if (auto* t = std::get_if<TupleSol>(&sol)) {
        os << "tuple (";
        for (std::size_t i = 0; i < t->t.idx.size(); ++i) os << (i ? "," : "") << t->t.idx[i];
        os << ")";
    } else if (auto* x = std::get_if<VecSol>(&sol)) {
        os << "vector (";
        for (std::size_t i = 0; i < x->x.size(); ++i) os << (i ? "," : "") << x->x[i];
        os << ")";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Edge rules.
// ---------------------------------------------------------------------------

std::optional<std::vector<std::uint64_t>> lonely_edge(const LonelyInstance& inst,
                                                      std::uint64_t v) {
    if (v >= inst.domain.size()) throw precondition_error("lonely_edge: vertex out of domain");
    // Follow C for q steps; a hyperedge exists iff the orbit is a clean
    // q-cycle of distinct in-domain vertices returning to v.
    std::vector<std::uint64_t> orbit{v};
    std::uint64_t w = v;
    for (int i = 1; i < inst.q; ++i) {
        w = inst.C(w);
        if (w >= inst.domain.size()) return std::nullopt;
        orbit.push_back(w);
    }
    if (inst.C(w) != v) return std::nullopt;
    std::vector<std::uint64_t> sorted = orbit;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
    return sorted;
}

std::vector<std::uint64_t> bipartite_neighbors(const BipartiteInstance& inst, std::uint64_t x) {
    if (x >= inst.total_size())
        throw precondition_error("bipartite_neighbors: vertex out of domain");
    std::vector<std::uint64_t> out;
    std::set<std::uint64_t> seen;
    for (std::uint64_t y : inst.C(x)) {
        if (y >= inst.total_size() || inst.on_v_side(y) == inst.on_v_side(x)) continue;
        if (!seen.insert(y).second) continue;
        auto back = inst.C(y);
        if (std::find(back.begin(), back.end(), x) != back.end()) out.push_back(y);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::uint64_t>> leaf_edges(int cap, const SubsetListMap& C,
                                                   std::uint64_t domain_size, int q,
                                                   std::uint64_t v) {
    if (v >= domain_size) throw precondition_error("leaf_edges: vertex out of domain");
    auto candidates = C(v);
    if (static_cast<int>(candidates.size()) > cap)
        candidates.resize(static_cast<std::size_t>(cap));
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<std::vector<std::uint64_t>> out;
    for (auto e : candidates) {
        std::sort(e.begin(), e.end());
        if (static_cast<int>(e.size()) != q) continue;
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) continue;
        if (e.back() >= domain_size) continue;
        if (!std::binary_search(e.begin(), e.end(), v)) continue;
        if (!seen.insert(e).second) continue;
        // Confirmed iff every member lists it.
        bool confirmed = true;
        for (std::uint64_t w : e) {
            if (w == v) continue;
            auto wc = C(w);
            if (static_cast<int>(wc.size()) > cap) wc.resize(static_cast<std::size_t>(cap));
            bool listed = false;
            for (auto we : wc) {
                std::sort(we.begin(), we.end());
                if (we == e) {
                    listed = true;
                    break;
                }
            }
            if (!listed) {
                confirmed = false;
                break;
            }
        }
        if (confirmed) out.push_back(std::move(e));
    }
    return out;
}

std::optional<std::vector<std::uint64_t>> tm_edge(const TwoMatchingsInstance& inst, int b,
                                                  std::uint64_t v) {
    if (v >= inst.domain.size()) throw precondition_error("tm_edge: vertex out of domain");
    const NeighborListMap& C = b == 0 ? inst.C0 : inst.C1;
    auto e = C(v);
    std::sort(e.begin(), e.end());
    if (static_cast<int>(e.size()) != inst.p) return std::nullopt;
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) return std::nullopt;
    if (e.back() >= inst.domain.size()) return std::nullopt;
    if (!std::binary_search(e.begin(), e.end(), v)) return std::nullopt;
    for (std::uint64_t w : e) {
        if (w == v) continue;
        auto we = C(w);
        std::sort(we.begin(), we.end());
        if (we != e) return std::nullopt;
    }
    return e;
}

bool succbip_edge_exists(const SuccBipartiteInstance& inst, const SuccBipartiteEdge& e) {
    if (e.v >= inst.v_size || e.u >= inst.u_size) return false;
    int c = inst.count(e.v, e.u);
    return e.k >= 1 && e.k <= c && c <= inst.q - 1;
}

bool succbip_grouped(const SuccBipartiteInstance& inst, int side, const SuccBipartiteEdge& e) {
    if (!succbip_edge_exists(inst, e)) return false;
    const GroupMap& phi = side == 0 ? inst.phi_v : inst.phi_u;
    std::uint64_t pivot = side == 0 ? e.v : e.u;
    std::uint64_t other = side == 0 ? e.u : e.v;
    EdgeGroup group = phi(pivot, other, e.k);
    if (group.size() != static_cast<std::size_t>(inst.q)) return false;
    auto canon = [](EdgeGroup g) {
        std::sort(g.begin(), g.end());
        return g;
    };
    EdgeGroup canon_group = canon(group);
    if (std::adjacent_find(canon_group.begin(), canon_group.end()) != canon_group.end())
        return false;
    bool has_self = false;
    for (auto& [o, k2] : group) {
        SuccBipartiteEdge e2 = side == 0 ? SuccBipartiteEdge{e.v, o, k2}
                                         : SuccBipartiteEdge{o, e.u, k2};
        if (!succbip_edge_exists(inst, e2)) return false;
        if (o == other && k2 == e.k) has_self = true;
        EdgeGroup g2 = phi(pivot, o, k2);
        if (canon(g2) != canon_group) return false;
    }
    return has_self;
}

bool eol_has_out(const EndOfLineInstance& inst, std::uint64_t v) {
    std::uint64_t w = inst.succ(v);
    return w < inst.domain.size() && w != v && inst.pred(w) == v;
}

bool eol_has_in(const EndOfLineInstance& inst, std::uint64_t v) {
    std::uint64_t u = inst.pred(v);
    return u < inst.domain.size() && u != v && inst.succ(u) == v;
}

std::uint64_t degree(const SearchInstance& inst, std::uint64_t vertex) {
    struct V {
        std::uint64_t x;
        std::uint64_t operator()(const LonelyInstance& i) const {
            return lonely_edge(i, x) ? 1 : 0;
        }
        std::uint64_t operator()(const BipartiteInstance& i) const {
            return bipartite_neighbors(i, x).size();
        }
        std::uint64_t operator()(const LeafInstance& i) const {
            return leaf_edges(i.q, i.C, i.domain.size(), i.q, x).size();
        }
        std::uint64_t operator()(const LeafPrimeInstance& i) const {
            return leaf_edges(i.k, i.C, i.domain.size(), i.q, x).size();
        }
        std::uint64_t operator()(const SuccBipartiteInstance& i) const {
            // Combined rank space: V side first, then U side.
            std::uint64_t deg = 0;
            if (x < i.v_size) {
                for (std::uint64_t u = 0; u < i.u_size; ++u)
                    deg += static_cast<std::uint64_t>(std::max(0, std::min(i.count(x, u), i.q - 1)));
            } else if (x < i.v_size + i.u_size) {
                std::uint64_t u = x - i.v_size;
                for (std::uint64_t v = 0; v < i.v_size; ++v)
                    deg += static_cast<std::uint64_t>(std::max(0, std::min(i.count(v, u), i.q - 1)));
            } else {
                throw precondition_error("degree: vertex out of domain");
            }
            return deg;
        }
        std::uint64_t operator()(const TwoMatchingsInstance& i) const {
            return (tm_edge(i, 0, x) ? 1u : 0u) + (tm_edge(i, 1, x) ? 1u : 0u);
        }
        std::uint64_t operator()(const EndOfLineInstance& i) const {
            if (x >= i.domain.size()) throw precondition_error("degree: vertex out of domain");
            return (eol_has_in(i, x) ? 1u : 0u) + (eol_has_out(i, x) ? 1u : 0u);
        }
        std::uint64_t operator()(const ChevalleyInstance&) const {
            throw precondition_error("degree: not a graph problem");
        }
        std::uint64_t operator()(const GeneralChevalleyInstance&) const {
            throw precondition_error("degree: not a graph problem");
        }
        std::uint64_t operator()(const ChevSymInstance&) const {
            throw precondition_error("degree: not a graph problem");
        }
        std::uint64_t operator()(const BisInstance&) const {
            throw precondition_error("degree: not a graph problem");
        }
        std::uint64_t operator()(const SisInstance&) const {
            throw precondition_error("degree: not a graph problem");
        }
        std::uint64_t operator()(const std::shared_ptr<AmpInstance>& a) const {
            return degree(a->payload, x);
        }
    };
    return std::visit(V{vertex}, inst);
}

// ---------------------------------------------------------------------------
// Verification.
// ---------------------------------------------------------------------------

namespace {

bool point_is_zero(const Point& x) {
    return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
}

bool verify_matrix_solution(const ModMatrix& A, const std::vector<int>& x, bool signed_entries) {
    if (x.size() != A.cols()) return false;
    bool nonzero = false;
    for (int v : x) {
        if (signed_entries ? (v < -1 || v > 1) : (v < 0 || v > 1)) return false;
        nonzero |= v != 0;
    }
    if (!nonzero) return false;
    for (auto& row : A.entries) {
        long long acc = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            acc += (row[j] % static_cast<long long>(A.q)) * x[j];
            acc %= static_cast<long long>(A.q);
        }
        if ((acc % static_cast<long long>(A.q) + static_cast<long long>(A.q)) %
                static_cast<long long>(A.q) !=
            0)
            return false;
    }
    return true;
}

} // namespace

bool verify(const SearchInstance& inst, const Solution& sol) {
    struct V {
        const Solution& sol;

        bool operator()(const LonelyInstance& i) const {
            auto* s = std::get_if<VertexSol>(&sol);
            if (!s || s->v >= i.domain.size()) return false;
            bool has_edge = lonely_edge(i, s->v).has_value();
            return i.is_designated(s->v) ? has_edge : !has_edge;
        }
        bool operator()(const BipartiteInstance& i) const {
            auto* s = std::get_if<VertexSol>(&sol);
            if (!s || s->v >= i.total_size()) return false;
            std::uint64_t deg = bipartite_neighbors(i, s->v).size();
            bool zero_mod_q = deg % static_cast<std::uint64_t>(i.q) == 0;
            return s->v == i.designated ? zero_mod_q : !zero_mod_q;
        }
        bool operator()(const LeafInstance& i) const {
            auto* s = std::get_if<VertexSol>(&sol);
            if (!s || s->v >= i.domain.size()) return false;
            std::uint64_t deg = leaf_edges(i.q, i.C, i.domain.size(), i.q, s->v).size();
            bool zero_mod_q = deg % static_cast<std::uint64_t>(i.q) == 0;
            return s->v == i.designated ? zero_mod_q : !zero_mod_q;
        }
        bool operator()(const LeafPrimeInstance& i) const {
            auto* s = std::get_if<VertexSol>(&sol);
            if (!s || s->v >= i.domain.size()) return false;
            std::uint64_t deg = leaf_edges(i.k, i.C, i.domain.size(), i.q, s->v).size();
            bool zero_mod_q = deg % static_cast<std::uint64_t>(i.q) == 0;
            return s->v == i.designated ? zero_mod_q : !zero_mod_q;
        }
        bool operator()(const SuccBipartiteInstance& i) const {
            auto* s = std::get_if<EdgeSol>(&sol);
            if (!s || !succbip_edge_exists(i, s->e)) return false;
            bool gv = succbip_grouped(i, 0, s->e);
            bool gu = succbip_grouped(i, 1, s->e);
            if (s->e == i.e_star) return gv || !gu;
            return !gv || !gu;
        }
        bool operator()(const TwoMatchingsInstance& i) const {
            auto* s = std::get_if<VertexSol>(&sol);
            if (!s || s->v >= i.domain.size()) return false;
            int d0 = tm_edge(i, 0, s->v) ? 1 : 0;
            int d1 = tm_edge(i, 1, s->v) ? 1 : 0;
            if (s->v == i.designated) return d0 != 1 || d1 != 0;
            return d0 != d1;
        }
        bool operator()(const ChevalleyInstance& i) const {
            auto* s = std::get_if<PointSol>(&sol);
            if (!s || static_cast<int>(s->x.size()) != i.sys.n_vars) return false;
            for (int v : s->x)
                if (v < 0 || v >= i.sys.p) return false;
            return !point_is_zero(s->x) && i.sys.vanishes_at(s->x);
        }
        bool operator()(const GeneralChevalleyInstance& i) const {
            if (auto* t = std::get_if<TupleSol>(&sol)) {
                auto factors = cw_factors(i.sys);
                if (t->t.idx.size() != factors.size()) return false;
                for (std::size_t j = 0; j < factors.size(); ++j)
                    if (t->t.idx[j] < 0 ||
                        t->t.idx[j] >= static_cast<int>(factors[j].poly.terms.size()))
                        return false;
                return is_max_degree(factors, i.sys.n_vars, t->t);
            }
            if (auto* s = std::get_if<PointSol>(&sol)) {
                if (static_cast<int>(s->x.size()) != i.sys.n_vars) return false;
                for (int v : s->x)
                    if (v < 0 || v >= i.sys.p) return false;
                return !point_is_zero(s->x) && i.sys.vanishes_at(s->x);
            }
            return false;
        }
        bool operator()(const ChevSymInstance& i) const {
            if (auto* t = std::get_if<TupleSol>(&sol)) {
                auto factors = cw_factors(i.g);
                if (t->t.idx.size() != factors.size()) return false;
                for (std::size_t j = 0; j < factors.size(); ++j)
                    if (t->t.idx[j] < 0 ||
                        t->t.idx[j] >= static_cast<int>(factors[j].poly.terms.size()))
                        return false;
                return is_max_degree(factors, i.g.n_vars, t->t);
            }
            if (auto* s = std::get_if<PointSol>(&sol)) {
                if (static_cast<int>(s->x.size()) != i.g.n_vars) return false;
                for (int v : s->x)
                    if (v < 0 || v >= i.g.p) return false;
                bool in_vg = i.g.vanishes_at(s->x);
                bool in_vh = i.h.vanishes_at(s->x);
                // Clause 1: nonzero common root of (g, h).
                if (in_vg && in_vh && !point_is_zero(s->x)) return true;
                // Clause 0(b): symmetry violation witness on V_g \ V_h.
                if (in_vg && !in_vh) {
                    Point y = i.sigma.apply(s->x);
                    if (y == s->x) return true;
                    if (!(i.g.vanishes_at(y) && !i.h.vanishes_at(y))) return true;
                }
                return false;
            }
            return false;
        }
        bool operator()(const EndOfLineInstance& i) const {
            auto* s = std::get_if<VertexSol>(&sol);
            if (!s || s->v >= i.domain.size()) return false;
            if (s->v == i.designated) return false;
            return !eol_has_in(i, s->v) || !eol_has_out(i, s->v);
        }
        bool operator()(const BisInstance& i) const {
            auto* s = std::get_if<VecSol>(&sol);
            return s && verify_matrix_solution(i.A, s->x, false);
        }
        bool operator()(const SisInstance& i) const {
            auto* s = std::get_if<VecSol>(&sol);
            return s && verify_matrix_solution(i.A, s->x, true);
        }
        bool operator()(const std::shared_ptr<AmpInstance>& a) const {
            return verify(a->payload, sol);
        }
    };
    try {
        return std::visit(V{sol}, inst);
    } catch (const precondition_error&) {
        return false; // malformed solutions simply do not verify
    }
}

// ---------------------------------------------------------------------------
// Brute-force solving.
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void no_solution(const SearchInstance& inst, const char* premise) {
    throw error("brute_solve(" + problem_name(inst) +
                "): no solution found; violated totality premise: " + premise);
}

// Enumerate solution candidates in canonical order, invoking sink(sol) on
// each *verifying* solution until it returns false ("stop").
void for_each_solution(const SearchInstance& inst, Budget& budget,
                       const std::function<bool(const Solution&)>& sink) {
    struct V {
        const SearchInstance& inst;
        Budget& budget;
        const std::function<bool(const Solution&)>& sink;

        bool try_sol(const Solution& s) const { // returns "continue?"
            return verify(inst, s) ? sink(s) : true;
        }

        void vertex_scan(std::uint64_t size) const {
            for (std::uint64_t v = 0; v < size; ++v) {
                budget.charge(1, "brute_solve");
                if (!try_sol(VertexSol{v})) return;
            }
        }

        void point_scan(int p, int n) const {
            Point x(static_cast<std::size_t>(n), 0);
            while (true) {
                budget.charge(1, "brute_solve");
                if (!try_sol(PointSol{x})) return;
                int i = n - 1;
                while (i >= 0 && x[static_cast<std::size_t>(i)] == p - 1)
                    x[static_cast<std::size_t>(i--)] = 0;
                if (i < 0) break;
                ++x[static_cast<std::size_t>(i)];
            }
        }

        void tuple_scan(const PolynomialSystem& sys) const {
            for (auto& t : enumerate_max_degree(cw_factors(sys), sys.p, sys.n_vars, budget))
                if (!try_sol(TupleSol{t})) return;
        }

        void vec_scan(std::size_t n, const std::vector<int>& digits) const {
            std::vector<std::size_t> d(n, 0);
            std::vector<int> x(n, digits[0]);
            while (true) {
                budget.charge(1, "brute_solve");
                if (!try_sol(VecSol{x})) return;
                std::size_t i = n;
                while (i > 0 && d[i - 1] == digits.size() - 1) {
                    d[i - 1] = 0;
                    x[i - 1] = digits[0];
                    --i;
                }
                if (i == 0) break;
                ++d[i - 1];
                x[i - 1] = digits[d[i - 1]];
            }
        }

        void operator()(const LonelyInstance& i) const { vertex_scan(i.domain.size()); }
        void operator()(const BipartiteInstance& i) const { vertex_scan(i.total_size()); }
        void operator()(const LeafInstance& i) const { vertex_scan(i.domain.size()); }
        void operator()(const LeafPrimeInstance& i) const { vertex_scan(i.domain.size()); }
        void operator()(const TwoMatchingsInstance& i) const { vertex_scan(i.domain.size()); }
        void operator()(const EndOfLineInstance& i) const { vertex_scan(i.domain.size()); }
        void operator()(const SuccBipartiteInstance& i) const {
            for (std::uint64_t v = 0; v < i.v_size; ++v)
                for (std::uint64_t u = 0; u < i.u_size; ++u) {
                    budget.charge(1, "brute_solve");
                    int c = std::min(i.count(v, u), i.q - 1);
                    for (int k = 1; k <= c; ++k)
                        if (!try_sol(EdgeSol{SuccBipartiteEdge{v, u, k}})) return;
                }
        }
        void operator()(const ChevalleyInstance& i) const { point_scan(i.sys.p, i.sys.n_vars); }
        void operator()(const GeneralChevalleyInstance& i) const {
            tuple_scan(i.sys);
            point_scan(i.sys.p, i.sys.n_vars);
        }
        void operator()(const ChevSymInstance& i) const {
            tuple_scan(i.g);
            point_scan(i.g.p, i.g.n_vars);
        }
        void operator()(const BisInstance& i) const { vec_scan(i.A.cols(), {0, 1}); }
        void operator()(const SisInstance& i) const { vec_scan(i.A.cols(), {0, 1, -1}); }
        void operator()(const std::shared_ptr<AmpInstance>& a) const {
            for_each_solution(a->payload, budget, sink);
        }
    };
    std::visit(V{inst, budget, sink}, inst);
}

const char* totality_premise(const SearchInstance& inst) {
    struct V {
        const char* operator()(const LonelyInstance&) const {
            return "|V| with |V*| != 0 mod q forces an unmatched or designated-matched vertex";
        }
        const char* operator()(const BipartiteInstance&) const {
            return "handshake counting mod q over the bipartite edge set";
        }
        const char* operator()(const LeafInstance&) const {
            return "handshake counting mod q over the hypergraph";
        }
        const char* operator()(const LeafPrimeInstance&) const {
            return "handshake counting mod q over the hypergraph";
        }
        const char* operator()(const SuccBipartiteInstance&) const {
            return "edge grouping parity at the designated edge";
        }
        const char* operator()(const TwoMatchingsInstance&) const {
            return "two matchings must disagree somewhere off the designated vertex";
        }
        const char* operator()(const ChevalleyInstance&) const {
            return "Chevalley-Warning: degree sum < n forces a second root";
        }
        const char* operator()(const GeneralChevalleyInstance&) const {
            return "CW congruence: no max-degree tuple forces a nonzero root";
        }
        const char* operator()(const ChevSymInstance&) const {
            return "CW congruence with symmetry: some clause must fire";
        }
        const char* operator()(const EndOfLineInstance&) const {
            return "a line starting at the designated source must end";
        }
        const char* operator()(const BisInstance&) const {
            return "pigeonhole on subset sums (parameter condition)";
        }
        const char* operator()(const SisInstance&) const {
            return "pigeonhole on subset sums (parameter condition)";
        }
        const char* operator()(const std::shared_ptr<AmpInstance>&) const {
            return "payload totality";
        }
    };
    return std::visit(V{}, inst);
}

} // namespace

Solution brute_solve(const SearchInstance& inst, Budget& budget) {
    std::optional<Solution> found;
    for_each_solution(inst, budget, [&](const Solution& s) {
        found = s;
        return false;
    });
    if (!found) no_solution(inst, totality_premise(inst));
    return *found;
}

std::vector<Solution> all_solutions(const SearchInstance& inst, Budget& budget) {
    std::vector<Solution> out;
    for_each_solution(inst, budget, [&](const Solution& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

std::optional<Point> check_free_action(const Permutation& sigma,
                                       const std::function<bool(const Point&)>& pred, int n,
                                       int p, Budget& budget) {
    if (static_cast<int>(sigma.perm.size()) != n)
        throw precondition_error("check_free_action: sigma arity mismatch");
    Point x(static_cast<std::size_t>(n), 0);
    while (true) {
        budget.charge(1, "check_free_action");
        if (pred(x)) {
            Point y = sigma.apply(x);
            if (y == x || !pred(y)) return x;
        }
        int i = n - 1;
        while (i >= 0 && x[static_cast<std::size_t>(i)] == p - 1)
            x[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++x[static_cast<std::size_t>(i)];
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Materialization.
// ---------------------------------------------------------------------------

namespace {

VertexMap materialize_vertex_map(const VertexMap& m, std::uint64_t size, Budget& budget) {
    if (m.backing != OracleBacking::Closure) return m;
    budget.require(size, "materialize");
    std::vector<std::uint64_t> t(size);
    for (std::uint64_t v = 0; v < size; ++v) {
        budget.charge(1, "materialize");
        t[v] = m(v);
    }
    return VertexMap::from_table(std::move(t));
}

NeighborListMap materialize_neighbors(const NeighborListMap& m, std::uint64_t size,
                                      Budget& budget) {
    if (m.backing != OracleBacking::Closure) return m;
    budget.require(size, "materialize");
    std::vector<std::vector<std::uint64_t>> t(size);
    for (std::uint64_t v = 0; v < size; ++v) {
        budget.charge(1, "materialize");
        t[v] = m(v);
    }
    return NeighborListMap::from_table(std::move(t));
}

SubsetListMap materialize_subsets(const SubsetListMap& m, std::uint64_t size, Budget& budget) {
    if (m.backing != OracleBacking::Closure) return m;
    budget.require(size, "materialize");
    std::vector<std::vector<std::vector<std::uint64_t>>> t(size);
    for (std::uint64_t v = 0; v < size; ++v) {
        budget.charge(1, "materialize");
        t[v] = m(v);
    }
    return SubsetListMap::from_table(std::move(t));
}

} // namespace

SearchInstance materialize(const SearchInstance& inst, Budget& budget) {
    struct V {
        Budget& budget;
        SearchInstance operator()(LonelyInstance i) const {
            i.C = materialize_vertex_map(i.C, i.domain.size(), budget);
            return i;
        }
        SearchInstance operator()(BipartiteInstance i) const {
            i.C = materialize_neighbors(i.C, i.total_size(), budget);
            return i;
        }
        SearchInstance operator()(LeafInstance i) const {
            i.C = materialize_subsets(i.C, i.domain.size(), budget);
            return i;
        }
        SearchInstance operator()(LeafPrimeInstance i) const {
            i.C = materialize_subsets(i.C, i.domain.size(), budget);
            return i;
        }
        SearchInstance operator()(SuccBipartiteInstance i) const {
            if (i.count.backing == OracleBacking::Closure) {
                budget.require(checked_mul_u64(i.v_size, i.u_size, "materialize"), "materialize");
                std::vector<std::vector<int>> t(i.v_size, std::vector<int>(i.u_size));
                for (std::uint64_t v = 0; v < i.v_size; ++v)
                    for (std::uint64_t u = 0; u < i.u_size; ++u) {
                        budget.charge(1, "materialize");
                        t[v][u] = i.count(v, u);
                    }
                i.count = CountMap::from_table(std::move(t));
            }
            auto materialize_phi = [&](const GroupMap& phi, bool pivot_v) {
                if (phi.backing != OracleBacking::Closure) return phi;
                std::uint64_t np = pivot_v ? i.v_size : i.u_size;
                std::uint64_t no = pivot_v ? i.u_size : i.v_size;
                std::vector<std::vector<std::vector<EdgeGroup>>> t(np);
                for (std::uint64_t a = 0; a < np; ++a) {
                    t[a].resize(no);
                    for (std::uint64_t b = 0; b < no; ++b) {
                        budget.charge(1, "materialize");
                        int c = pivot_v ? i.count(a, b) : i.count(b, a);
                        c = std::max(0, std::min(c, i.q - 1));
                        for (int k = 1; k <= c; ++k) t[a][b].push_back(phi(a, b, k));
                    }
                }
                return GroupMap::from_table(std::move(t));
            };
            i.phi_v = materialize_phi(i.phi_v, true);
            i.phi_u = materialize_phi(i.phi_u, false);
            return i;
        }
        SearchInstance operator()(TwoMatchingsInstance i) const {
            i.C0 = materialize_neighbors(i.C0, i.domain.size(), budget);
            i.C1 = materialize_neighbors(i.C1, i.domain.size(), budget);
            return i;
        }
        SearchInstance operator()(EndOfLineInstance i) const {
            i.succ = materialize_vertex_map(i.succ, i.domain.size(), budget);
            i.pred = materialize_vertex_map(i.pred, i.domain.size(), budget);
            return i;
        }
        SearchInstance operator()(ChevalleyInstance i) const { return i; }
        SearchInstance operator()(GeneralChevalleyInstance i) const { return i; }
        SearchInstance operator()(ChevSymInstance i) const { return i; }
        SearchInstance operator()(BisInstance i) const { return i; }
        SearchInstance operator()(SisInstance i) const { return i; }
        SearchInstance operator()(std::shared_ptr<AmpInstance> a) const {
            return std::make_shared<AmpInstance>(
                AmpInstance{a->selector, materialize(a->payload, budget)});
        }
    };
    return std::visit(V{budget}, inst);
}

} // namespace modq
