// modq: batch CLI over the library — generate, solve, verify, reduce,
// back-map, run the reduction soundness harness, and check the
// Chevalley-Warning counting lemma.

#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modq/gen.hpp"
#include "modq/instance.hpp"
#include "modq/modsolve.hpp"
#include "modq/poly.hpp"
#include "modq/reductions.hpp"
#include "modq/registry.hpp"
#include "modq/serialize.hpp"

namespace {

using nlohmann::json;

struct Options {
    std::string in, out, id, solution;
    std::string format = "text";
    std::string problem;
    std::uint64_t seed = 1;
    std::uint64_t count = 1;
    std::uint64_t budget = modq::Budget::default_limit();
    int jobs = 1;
    // generator parameters
    int p = 2, n = 2, m = 1, k = 2, r = 3, gates = 4;
    std::uint64_t q = 2, groups = 3, v_size = 4, u_size = 4, size = 8;
    bool normalized = false;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--in", o.in, "input file");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--id", o.id, "registered reduction id");
    cmd->add_option("--seed", o.seed, "PRNG seed (std::mt19937_64)");
    cmd->add_option("--count", o.count, "number of seeded runs");
    cmd->add_option("--budget", o.budget, "enumeration step budget (env TFNP_BUDGET)");
    cmd->add_option("--jobs", o.jobs, "parallel workers for independent runs");
    cmd->add_option("--format", o.format, "report format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
}

void emit(const Options& o, const std::string& text, const json& j) {
    std::string payload = o.format == "json" ? j.dump(2) + "\n" : text;
    if (o.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(o.out);
        if (!f) throw modq::error("cannot open output file: " + o.out);
        f << payload;
    }
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw modq::error("cannot open input file: " + path);
    json j;
    f >> j;
    return j;
}

// Accepts either a bare solution object or a `solve` report (which nests
// the solution under "solution"), so solver output can be fed back in.
modq::Solution load_solution(const std::string& path) {
    json j = load_json(path);
    if (j.contains("solution") && !j.contains("kind")) j = j.at("solution");
    return modq::solution_from_json(j);
}

modq::SearchInstance generate(const Options& o) {
    using namespace modq;
    const std::string& pr = o.problem;
    if (pr == "lonely") {
        if (o.n > 0 && o.q == 2) return gen::lonely_qary(o.p, o.n, o.seed);
        return gen::lonely(static_cast<int>(o.q), o.groups, 1, o.seed);
    }
    if (pr == "leaf") return gen::leaf(static_cast<int>(o.q), o.size, o.seed);
    if (pr == "leafprime")
        return gen::leafprime(static_cast<int>(o.q), o.k, o.size, o.seed);
    if (pr == "bipartite")
        return gen::bipartite(static_cast<int>(o.q), o.v_size, o.u_size, o.seed);
    if (pr == "succbipartite") return gen::succbipartite(o.p, o.seed);
    if (pr == "twomatchings") return gen::twomatchings(o.p, o.size, o.seed);
    if (pr == "endofline") return gen::endofline(o.size, o.seed);
    if (pr == "chevalley") {
        if (o.m > 0) {
            PolynomialSystem sys = gen::system(o.p, o.n, o.m, 1, o.seed);
            return ChevalleyInstance::make(std::move(sys));
        }
        return gen::chevalley(o.p, o.n, o.seed);
    }
    if (pr == "generalchevalley") return gen::general_chevalley(o.p, o.n, o.seed);
    if (pr == "chevsym")
        return o.normalized ? gen::chevsym_normalized(o.p, o.n, o.seed)
                            : gen::chevsym_unnormalized(o.p, o.seed);
    if (pr == "bis") return gen::bis(o.q, static_cast<std::size_t>(o.m), o.seed);
    if (pr == "sis") return gen::sis(o.q, static_cast<std::size_t>(o.m), o.seed);
    if (pr == "amp") return gen::amp(static_cast<int>(o.q), o.r, o.seed);
    if (pr == "system") {
        // bare polynomial system wrapped as a general Chevalley instance
        return GeneralChevalleyInstance::make(gen::system(o.p, o.n, o.m, 3, o.seed));
    }
    throw modq::error("unknown problem '" + pr + "'");
}

int cmd_gen(const Options& o) {
    modq::Budget budget(o.budget);
    modq::SearchInstance inst = generate(o);
    json j = modq::instance_to_json(inst, budget);
    std::string text = "generated " + modq::problem_name(inst) + " instance (seed " +
                       std::to_string(o.seed) + ")\n";
    if (o.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(o.out);
        if (!f) throw modq::error("cannot open output file: " + o.out);
        f << j.dump(2) << "\n";
        if (o.format == "text") std::cout << text;
    }
    return 0;
}

int cmd_solve(const Options& o) {
    modq::Budget budget(o.budget);
    modq::SearchInstance inst = modq::instance_from_json(load_json(o.in));
    modq::Solution sol = modq::brute_solve(inst, budget);
    bool ok = modq::verify(inst, sol);
    json report{{"format", 1},
                {"problem", modq::problem_name(inst)},
                {"solution", modq::solution_to_json(sol)},
                {"verified", ok}};
    emit(o, "solution: " + modq::solution_str(sol) + "\nverified: " +
                (ok ? "true" : "false") + "\n",
         report);
    return ok ? 0 : 1;
}

int cmd_verify(const Options& o) {
    modq::SearchInstance inst = modq::instance_from_json(load_json(o.in));
    modq::Solution sol = modq::solution_from_json(load_json(o.solution));
    bool ok = modq::verify(inst, sol);
    emit(o, std::string("verified: ") + (ok ? "true" : "false") + "\n",
         json{{"format", 1}, {"verified", ok}});
    return ok ? 0 : 1;
}

const modq::RegisteredReduction& entry_for(const std::string& id) {
    const modq::RegisteredReduction* e = modq::find_reduction(id);
    if (!e) {
        std::ostringstream os;
        os << "unknown reduction id '" << id << "'; registered ids:";
        for (const auto& r : modq::reduction_registry()) os << "\n  " << r.id;
        throw modq::error(os.str());
    }
    return *e;
}

int cmd_reduce(const Options& o) {
    const auto& e = entry_for(o.id);
    modq::Budget budget(o.budget);
    modq::SearchInstance src = modq::instance_from_json(load_json(o.in));
    modq::Reduction red = e.apply(src, budget);
    json j = modq::instance_to_json(red.target, budget);
    if (o.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(o.out);
        if (!f) throw modq::error("cannot open output file: " + o.out);
        f << j.dump(2) << "\n";
        if (o.format == "text")
            std::cout << "reduced via " << red.provenance << " to "
                      << modq::problem_name(red.target) << "\n";
    }
    return 0;
}

int cmd_backmap(const Options& o) {
    const auto& e = entry_for(o.id);
    modq::Budget budget(o.budget);
    modq::SearchInstance src = modq::instance_from_json(load_json(o.in));
    modq::Reduction red = e.apply(src, budget);
    modq::Solution tsol = modq::solution_from_json(load_json(o.solution));
    if (!modq::verify(red.target, tsol)) {
        emit(o, "target solution does not verify; back-map not applied\n",
             json{{"format", 1}, {"target_verified", false}});
        return 1;
    }
    modq::Solution ssol = red.back_map(tsol);
    bool ok = modq::verify(src, ssol);
    json report{{"format", 1},
                {"target_verified", true},
                {"source_solution", modq::solution_to_json(ssol)},
                {"source_verified", ok}};
    emit(o, "source solution: " + modq::solution_str(ssol) + "\nverified: " +
                (ok ? "true" : "false") + "\n",
         report);
    return ok ? 0 : 1;
}

struct RoundtripResult {
    std::string id;
    std::uint64_t passed = 0, ran = 0;
    std::string note;
};

RoundtripResult roundtrip_one(const modq::RegisteredReduction& e, const Options& o) {
    RoundtripResult res;
    res.id = e.id;
    res.ran = o.count;
    std::vector<std::uint8_t> ok(o.count, 0);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (std::uint64_t i = next.fetch_add(1); i < o.count; i = next.fetch_add(1)) {
            try {
                modq::Budget budget(o.budget);
                modq::SearchInstance src = e.gen_source(o.seed + i);
                modq::Reduction red = e.apply(src, budget);
                if (e.heavy_target) {
                    ok[i] = 1; // construction self-checks; sweep done elsewhere
                } else {
                    ok[i] = modq::verify_reduction(src, red, budget) ? 1 : 0;
                }
            } catch (const modq::error&) {
                ok[i] = 0;
            }
        }
    };
    int jobs = std::max(1, o.jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto b : ok) res.passed += b;
    if (e.heavy_target) res.note = "construction checks only (target too large to sweep)";
    return res;
}

int cmd_roundtrip(const Options& o) {
    std::vector<RoundtripResult> results;
    if (!o.id.empty()) {
        results.push_back(roundtrip_one(entry_for(o.id), o));
    } else {
        for (const auto& e : modq::reduction_registry()) results.push_back(roundtrip_one(e, o));
    }
    bool all_ok = true;
    std::ostringstream text;
    json jres = json::array();
    for (const auto& r : results) {
        all_ok = all_ok && r.passed == r.ran;
        text << r.id << ": " << r.passed << "/" << r.ran << " passed"
             << (r.note.empty() ? "" : " [" + r.note + "]") << "\n";
        jres.push_back(json{{"id", r.id},
                            {"passed", r.passed},
                            {"count", r.ran},
                            {"note", r.note}});
    }
    text << (all_ok ? "PASS" : "FAIL") << "\n";
    json report{{"format", 1},
                {"prng", "std::mt19937_64"},
                {"seed", o.seed},
                {"results", std::move(jres)},
                {"ok", all_ok}};
    Options eo = o;
    eo.out = o.out;
    emit(eo, text.str(), report);
    return all_ok ? 0 : 1;
}

int cmd_cw_check(const Options& o) {
    modq::PolynomialSystem sys = modq::system_from_json(load_json(o.in));
    modq::Budget budget(o.budget);
    modq::CwLemmaReport rep = modq::check_cw_lemma(sys, budget);
    auto factors = modq::cw_factors(sys);
    std::uint64_t tuples = 1;
    std::ostringstream sizes;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        std::uint64_t L = factors[i].poly.terms.size();
        tuples *= L;
        sizes << (i ? " x " : "") << L;
    }
    std::ostringstream text;
    text << "factor sizes: " << sizes.str() << " (" << tuples << " tuples)\n"
         << "|V| = " << rep.variety_size << "\n"
         << "|M| = " << rep.max_tuple_count << "\n"
         << "congruent: " << (rep.congruent ? "true" : "false") << "\n";
    json report{{"format", 1},
                {"variety_size", rep.variety_size},
                {"max_tuple_count", rep.max_tuple_count},
                {"tuple_space", tuples},
                {"congruent", rep.congruent}};
    emit(o, text.str(), report);
    return rep.congruent ? 0 : 1;
}

int cmd_matrix_solve(const Options& o, bool signed_problem, std::uint64_t q_expected) {
    std::ifstream f(o.in);
    if (!f) throw modq::error("cannot open input file: " + o.in);
    modq::ModMatrix A = modq::read_matrix(f);
    if (q_expected != 0 && q_expected != A.q)
        throw modq::error("--q " + std::to_string(q_expected) +
                          " does not match the file header modulus " + std::to_string(A.q));
    modq::VecSol sol = signed_problem
                           ? modq::solve_sis_2k3l(modq::SisInstance::make(A))
                           : modq::solve_bis_pow2(modq::BisInstance::make(A));
    bool ok = modq::verify(signed_problem
                               ? modq::SearchInstance{modq::SisInstance::make(A)}
                               : modq::SearchInstance{modq::BisInstance::make(A)},
                           sol);
    std::ostringstream text;
    text << "solution:";
    for (int v : sol.x) text << ' ' << v;
    text << "\nverified: " << (ok ? "true" : "false") << "\n";
    json report{{"format", 1}, {"solution", sol.x}, {"q", A.q}, {"verified", ok}};
    emit(o, text.str(), report);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modq: modulo-q total search problems, reductions, and solvers"};
    app.require_subcommand(1);
    Options o;

    CLI::App* gen = app.add_subcommand("gen", "generate a seeded random instance");
    gen->add_option("problem", o.problem, "problem name")->required();
    gen->add_option("--p", o.p, "prime modulus / characteristic");
    gen->add_option("--q", o.q, "modulus");
    gen->add_option("--n", o.n, "variables / q-ary string length");
    gen->add_option("--m", o.m, "rows / polynomial count");
    gen->add_option("--k", o.k, "candidate bound / exponent");
    gen->add_option("--r", o.r, "second modulus (amp)");
    gen->add_option("--groups", o.groups, "hyperedge group count");
    gen->add_option("--v-size", o.v_size, "left side size");
    gen->add_option("--u-size", o.u_size, "right side size");
    gen->add_option("--size", o.size, "vertex count");
    gen->add_flag("--normalized", o.normalized, "emit normal-form chevsym");
    add_common(gen, o);

    CLI::App* solve = app.add_subcommand("solve", "brute-solve an instance file");
    add_common(solve, o);
    CLI::App* verify = app.add_subcommand("verify", "verify a solution file");
    verify->add_option("--solution", o.solution, "solution file")->required();
    add_common(verify, o);
    CLI::App* reduce = app.add_subcommand("reduce", "apply a registered reduction");
    add_common(reduce, o);
    CLI::App* backmap = app.add_subcommand("backmap", "map a target solution back");
    backmap->add_option("--solution", o.solution, "target solution file")->required();
    add_common(backmap, o);
    CLI::App* roundtrip =
        app.add_subcommand("roundtrip", "reduction soundness harness over seeded instances");
    add_common(roundtrip, o);
    CLI::App* cwcheck = app.add_subcommand("cw-check", "Chevalley-Warning counting check");
    add_common(cwcheck, o);

    CLI::App* bis = app.add_subcommand("bis", "binary modular system solvers");
    CLI::App* bis_solve = bis->add_subcommand("solve", "solve a BIS matrix file (q = 2^k)");
    add_common(bis_solve, o);
    CLI::App* sis = app.add_subcommand("sis", "signed modular system solvers");
    CLI::App* sis_solve = sis->add_subcommand("solve", "solve a SIS matrix file (q = 2^k 3^l)");
    sis_solve->add_option("--q", o.q, "expected modulus (must match the file header)");
    add_common(sis_solve, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(o);
        if (solve->parsed()) return cmd_solve(o);
        if (verify->parsed()) return cmd_verify(o);
        if (reduce->parsed()) return cmd_reduce(o);
        if (backmap->parsed()) return cmd_backmap(o);
        if (roundtrip->parsed()) return cmd_roundtrip(o);
        if (cwcheck->parsed()) return cmd_cw_check(o);
        if (bis->parsed() && bis_solve->parsed()) return cmd_matrix_solve(o, false, 0);
        if (sis->parsed() && sis_solve->parsed())
            return cmd_matrix_solve(o, true, sis_solve->count("--q") ? o.q : 0);
        std::cerr << "missing subcommand\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
