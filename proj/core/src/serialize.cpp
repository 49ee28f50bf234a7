#include "modq/serialize.hpp"

#include <memory>
#include <string>
#include <vector>

#include "modq/circuit.hpp"
#include "modq/error.hpp"

namespace modq {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw format_error("json: " + what); }

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing key '") + key + "'");
    return *it;
}

json poly_to_json(const ExplicitPolynomial& f) {
    json terms = json::array();
    for (const auto& m : f.terms) terms.push_back(m.str());
    return json{{"p", f.p}, {"n_vars", f.n_vars}, {"terms", std::move(terms)},
                {"text", f.str()}};
}

ExplicitPolynomial poly_from_json(const json& j) {
    ExplicitPolynomial f{field(j, "p").get<int>(), field(j, "n_vars").get<int>(), {}};
    for (const auto& t : field(j, "terms")) {
        ExplicitPolynomial one = parse_polynomial(t.get<std::string>(), f.p, f.n_vars);
        if (one.terms.size() != 1) bad("term '" + t.get<std::string>() + "' is not one monomial");
        f.terms.push_back(one.terms.front());
    }
    return f;
}

json vertex_map_to_json(const VertexMap& m, std::uint64_t domain_size) {
    if (m.backing == OracleBacking::Circuit)
        return json{{"kind", "circuit"}, {"text", circuit_to_text(*m.circuit)}};
    if (m.backing == OracleBacking::Table) return json{{"kind", "table"}, {"values", m.table}};
    std::vector<std::uint64_t> t(domain_size);
    for (std::uint64_t v = 0; v < domain_size; ++v) t[v] = m(v);
    return json{{"kind", "table"}, {"values", std::move(t)}};
}

VertexMap vertex_map_from_json(const json& j) {
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "circuit")
        return VertexMap::from_circuit(circuit_from_text(field(j, "text").get<std::string>()));
    if (kind == "table")
        return VertexMap::from_table(field(j, "values").get<std::vector<std::uint64_t>>());
    bad("unknown oracle kind '" + kind + "'");
}

json neighbors_to_json(const NeighborListMap& m) {
    if (m.backing != OracleBacking::Table) bad("neighbor oracle must be materialized first");
    return json{{"kind", "table"}, {"values", m.table}};
}

NeighborListMap neighbors_from_json(const json& j) {
    if (field(j, "kind").get<std::string>() != "table") bad("neighbor oracle: expected a table");
    return NeighborListMap::from_table(
        field(j, "values").get<std::vector<std::vector<std::uint64_t>>>());
}

json subsets_to_json(const SubsetListMap& m) {
    if (m.backing != OracleBacking::Table) bad("subset oracle must be materialized first");
    return json{{"kind", "table"}, {"values", m.table}};
}

SubsetListMap subsets_from_json(const json& j) {
    if (field(j, "kind").get<std::string>() != "table") bad("subset oracle: expected a table");
    return SubsetListMap::from_table(
        field(j, "values").get<std::vector<std::vector<std::vector<std::uint64_t>>>>());
}

json groups_to_json(const GroupMap& m) {
    if (m.backing != OracleBacking::Table) bad("group oracle must be materialized first");
    json groups = json::array();
    for (const auto& per_v : m.table) {
        json jv = json::array();
        for (const auto& per_u : per_v) {
            json ju = json::array();
            for (const auto& grp : per_u) {
                json jg = json::array();
                for (const auto& [other, copy] : grp) jg.push_back(json::array({other, copy}));
                ju.push_back(std::move(jg));
            }
            jv.push_back(std::move(ju));
        }
        groups.push_back(std::move(jv));
    }
    return json{{"kind", "table"}, {"values", std::move(groups)}};
}

GroupMap groups_from_json(const json& j) {
    if (field(j, "kind").get<std::string>() != "table") bad("group oracle: expected a table");
    std::vector<std::vector<std::vector<EdgeGroup>>> t;
    for (const auto& jv : field(j, "values")) {
        t.emplace_back();
        for (const auto& ju : jv) {
            t.back().emplace_back();
            for (const auto& jg : ju) {
                EdgeGroup g;
                for (const auto& e : jg)
                    g.emplace_back(e.at(0).get<std::uint64_t>(), e.at(1).get<int>());
                t.back().back().push_back(std::move(g));
            }
        }
    }
    return GroupMap::from_table(std::move(t));
}

json counts_to_json(const CountMap& m) {
    if (m.backing != OracleBacking::Table) bad("count oracle must be materialized first");
    return json{{"kind", "table"}, {"values", m.table}};
}

CountMap counts_from_json(const json& j) {
    if (field(j, "kind").get<std::string>() != "table") bad("count oracle: expected a table");
    return CountMap::from_table(field(j, "values").get<std::vector<std::vector<int>>>());
}

json matrix_to_json(const ModMatrix& A) {
    return json{{"q", A.q}, {"rows", A.entries}};
}

ModMatrix matrix_from_json(const json& j) {
    ModMatrix A;
    A.q = field(j, "q").get<std::uint64_t>();
    A.entries = field(j, "rows").get<std::vector<std::vector<long long>>>();
    return A;
}

struct ToJson {
    json operator()(const LonelyInstance& i) const {
        return json{{"q", i.q},
                    {"domain", domain_to_json(i.domain)},
                    {"oracle", vertex_map_to_json(i.C, i.domain.size())},
                    {"designated", i.designated}};
    }
    json operator()(const BipartiteInstance& i) const {
        return json{{"q", i.q},
                    {"v_size", i.v_size},
                    {"u_size", i.u_size},
                    {"oracle", neighbors_to_json(i.C)},
                    {"designated", i.designated}};
    }
    json operator()(const LeafInstance& i) const {
        return json{{"q", i.q},
                    {"domain", domain_to_json(i.domain)},
                    {"oracle", subsets_to_json(i.C)},
                    {"designated", i.designated}};
    }
    json operator()(const LeafPrimeInstance& i) const {
        return json{{"q", i.q},
                    {"k", i.k},
                    {"domain", domain_to_json(i.domain)},
                    {"oracle", subsets_to_json(i.C)},
                    {"designated", i.designated}};
    }
    json operator()(const SuccBipartiteInstance& i) const {
        return json{{"q", i.q},
                    {"v_size", i.v_size},
                    {"u_size", i.u_size},
                    {"count", counts_to_json(i.count)},
                    {"phi_v", groups_to_json(i.phi_v)},
                    {"phi_u", groups_to_json(i.phi_u)},
                    {"e_star", json{{"v", i.e_star.v}, {"u", i.e_star.u}, {"k", i.e_star.k}}}};
    }
    json operator()(const TwoMatchingsInstance& i) const {
        return json{{"p", i.p},
                    {"domain", domain_to_json(i.domain)},
                    {"c0", neighbors_to_json(i.C0)},
                    {"c1", neighbors_to_json(i.C1)},
                    {"designated", i.designated}};
    }
    json operator()(const ChevalleyInstance& i) const {
        return json{{"system", system_to_json(i.sys)}};
    }
    json operator()(const GeneralChevalleyInstance& i) const {
        return json{{"system", system_to_json(i.sys)}};
    }
    json operator()(const ChevSymInstance& i) const {
        return json{{"g", system_to_json(i.g)},
                    {"h", system_to_json(i.h)},
                    {"sigma", i.sigma.perm}};
    }
    json operator()(const EndOfLineInstance& i) const {
        return json{{"domain", domain_to_json(i.domain)},
                    {"succ", vertex_map_to_json(i.succ, i.domain.size())},
                    {"pred", vertex_map_to_json(i.pred, i.domain.size())},
                    {"designated", i.designated}};
    }
    json operator()(const BisInstance& i) const { return json{{"matrix", matrix_to_json(i.A)}}; }
    json operator()(const SisInstance& i) const { return json{{"matrix", matrix_to_json(i.A)}}; }
    json operator()(const std::shared_ptr<AmpInstance>& a) const; // defined below
};

} // namespace

json domain_to_json(const VertexDomain& d) {
    switch (d.kind()) {
        case VertexDomain::Kind::Plain:
            return json{{"kind", "plain"}, {"size", d.size()}};
        case VertexDomain::Kind::Qary:
            return json{{"kind", "qary"}, {"q", d.q()}, {"n", d.n()}};
        case VertexDomain::Kind::Subsets:
            return json{{"kind", "subsets"}, {"base_size", d.base_size()}, {"k", d.k()}};
        case VertexDomain::Kind::Union: {
            json parts = json::array();
            for (const auto& p : d.parts()) parts.push_back(domain_to_json(p));
            return json{{"kind", "union"}, {"parts", std::move(parts)}};
        }
        case VertexDomain::Kind::Product:
            return json{{"kind", "product"},
                        {"base", domain_to_json(d.base())},
                        {"copies", d.copies()}};
    }
    bad("unreachable domain kind");
}

VertexDomain domain_from_json(const json& j) {
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "plain") return VertexDomain::plain(field(j, "size").get<std::uint64_t>());
    if (kind == "qary")
        return VertexDomain::qary(field(j, "q").get<int>(), field(j, "n").get<int>());
    if (kind == "subsets")
        return VertexDomain::subsets(field(j, "base_size").get<std::uint64_t>(),
                                     field(j, "k").get<int>());
    if (kind == "union") {
        std::vector<VertexDomain> parts;
        for (const auto& p : field(j, "parts")) parts.push_back(domain_from_json(p));
        return VertexDomain::disjoint_union(std::move(parts));
    }
    if (kind == "product")
        return VertexDomain::product(domain_from_json(field(j, "base")),
                                     field(j, "copies").get<std::uint64_t>());
    bad("unknown domain kind '" + kind + "'");
}

json system_to_json(const PolynomialSystem& sys) {
    json polys = json::array();
    for (const auto& f : sys.polys) polys.push_back(poly_to_json(f));
    return json{{"p", sys.p}, {"n_vars", sys.n_vars}, {"polys", std::move(polys)}};
}

PolynomialSystem system_from_json(const json& j) {
    PolynomialSystem sys{field(j, "p").get<int>(), field(j, "n_vars").get<int>(), {}};
    for (const auto& f : field(j, "polys")) sys.polys.push_back(poly_from_json(f));
    return sys;
}

namespace {


Budget* g_to_json_budget = nullptr; // set only inside instance_to_json

json ToJson::operator()(const std::shared_ptr<AmpInstance>& a) const {
    return json{{"selector", a->selector},
                {"payload", instance_to_json(a->payload, *g_to_json_budget)}};
}

} // namespace

json instance_to_json(const SearchInstance& inst, Budget& budget) {
    SearchInstance mat = materialize(inst, budget);
    g_to_json_budget = &budget;
    json body = std::visit(ToJson{}, mat);
    g_to_json_budget = nullptr;
    body["format"] = 1;
    body["problem"] = problem_name(mat);
    return body;
}

SearchInstance instance_from_json(const json& j) {
    if (field(j, "format").get<int>() != 1) bad("unsupported format version");
    std::string problem = field(j, "problem").get<std::string>();
    if (problem == "lonely")
        return LonelyInstance::make(
            field(j, "q").get<int>(), domain_from_json(field(j, "domain")),
            vertex_map_from_json(field(j, "oracle")),
            field(j, "designated").get<std::vector<std::uint64_t>>());
    if (problem == "bipartite")
        return BipartiteInstance{field(j, "q").get<int>(),
                                 field(j, "v_size").get<std::uint64_t>(),
                                 field(j, "u_size").get<std::uint64_t>(),
                                 neighbors_from_json(field(j, "oracle")),
                                 field(j, "designated").get<std::uint64_t>()};
    if (problem == "leaf")
        return LeafInstance{field(j, "q").get<int>(), domain_from_json(field(j, "domain")),
                            subsets_from_json(field(j, "oracle")),
                            field(j, "designated").get<std::uint64_t>()};
    if (problem == "leafprime")
        return LeafPrimeInstance{field(j, "q").get<int>(), field(j, "k").get<int>(),
                                 domain_from_json(field(j, "domain")),
                                 subsets_from_json(field(j, "oracle")),
                                 field(j, "designated").get<std::uint64_t>()};
    if (problem == "succbipartite") {
        const json& e = field(j, "e_star");
        return SuccBipartiteInstance{
            field(j, "q").get<int>(),
            field(j, "v_size").get<std::uint64_t>(),
            field(j, "u_size").get<std::uint64_t>(),
            counts_from_json(field(j, "count")),
            groups_from_json(field(j, "phi_v")),
            groups_from_json(field(j, "phi_u")),
            SuccBipartiteEdge{field(e, "v").get<std::uint64_t>(),
                              field(e, "u").get<std::uint64_t>(), field(e, "k").get<int>()}};
    }
    if (problem == "twomatchings")
        return TwoMatchingsInstance{field(j, "p").get<int>(),
                                    domain_from_json(field(j, "domain")),
                                    neighbors_from_json(field(j, "c0")),
                                    neighbors_from_json(field(j, "c1")),
                                    field(j, "designated").get<std::uint64_t>()};
    if (problem == "chevalley")
        return ChevalleyInstance::make(system_from_json(field(j, "system")));
    if (problem == "generalchevalley")
        return GeneralChevalleyInstance::make(system_from_json(field(j, "system")));
    if (problem == "chevsym")
        return ChevSymInstance::make(system_from_json(field(j, "g")),
                                     system_from_json(field(j, "h")),
                                     Permutation{field(j, "sigma").get<std::vector<int>>()});
    if (problem == "endofline")
        return EndOfLineInstance{domain_from_json(field(j, "domain")),
                                 vertex_map_from_json(field(j, "succ")),
                                 vertex_map_from_json(field(j, "pred")),
                                 field(j, "designated").get<std::uint64_t>()};
    if (problem == "bis") return BisInstance::make(matrix_from_json(field(j, "matrix")));
    if (problem == "sis") return SisInstance::make(matrix_from_json(field(j, "matrix")));
    if (problem == "amp")
        return std::make_shared<AmpInstance>(
            AmpInstance{field(j, "selector").get<int>(),
                        instance_from_json(field(j, "payload"))});
    bad("unknown problem '" + problem + "'");
}

json solution_to_json(const Solution& sol) {
    json j{{"format", 1}};
    if (const auto* v = std::get_if<VertexSol>(&sol)) {
        j["kind"] = "vertex";
        j["v"] = v->v;
    } else if (const auto* e = std::get_if<EdgeSol>(&sol)) {
        j["kind"] = "edge";
        j["v"] = e->e.v;
        j["u"] = e->e.u;
        j["k"] = e->e.k;
    } else if (const auto* p = std::get_if<PointSol>(&sol)) {
        j["kind"] = "point";
        j["x"] = p->x;
    } else if (const auto* t = std::get_if<TupleSol>(&sol)) {
        j["kind"] = "tuple";
        j["idx"] = t->t.idx;
    } else if (const auto* x = std::get_if<VecSol>(&sol)) {
        j["kind"] = "vector";
        j["x"] = x->x;
    }
    return j;
}

Solution solution_from_json(const json& j) {
    if (field(j, "format").get<int>() != 1) bad("unsupported format version");
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "vertex") return VertexSol{field(j, "v").get<std::uint64_t>()};
    if (kind == "edge")
        return EdgeSol{SuccBipartiteEdge{field(j, "v").get<std::uint64_t>(),
                                         field(j, "u").get<std::uint64_t>(),
                                         field(j, "k").get<int>()}};
    if (kind == "point") return PointSol{field(j, "x").get<Point>()};
    if (kind == "tuple") return TupleSol{MonomialTuple{field(j, "idx").get<std::vector<int>>()}};
    if (kind == "vector") return VecSol{field(j, "x").get<std::vector<int>>()};
    bad("unknown solution kind '" + kind + "'");
}

} // namespace modq
