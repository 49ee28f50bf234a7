#include "modq/registry.hpp"

#include <random>

#include "modq/error.hpp"
#include "modq/gen.hpp"
#include "modq/reductions.hpp"

namespace modq {

namespace {

template <class T>
const T& expect(const SearchInstance& inst) {
    const T* p = std::get_if<T>(&inst);
    if (!p)
        throw precondition_error("registry: source is " + problem_name(inst) +
                                 ", expected another problem");
    return *p;
}

std::vector<RegisteredReduction> build_registry() {
    std::vector<RegisteredReduction> r;

    r.push_back({"A.1a:leaf->leafprime", "leaf", "leafprime", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int q = (s % 2) ? 3 : 2;
                     return gen::leaf(q, 6 + s % 5, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return leaf_to_leafprime(expect<LeafInstance>(i));
                 }});

    r.push_back({"A.1b:leafprime->leaf", "leafprime", "leaf", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int q = (s % 2) ? 3 : 2;
                     int k = q + static_cast<int>(s % 3);
                     return gen::leafprime(q, k, 6 + s % 5, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return leafprime_to_leaf(expect<LeafPrimeInstance>(i));
                 }});

    r.push_back({"A.2a:leafprime->bipartite", "leafprime", "bipartite", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int q = (s % 2) ? 3 : 2;
                     int k = q + static_cast<int>(s % 3);
                     return gen::leafprime(q, k, 5 + s % 4, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return leafprime_to_bipartite(expect<LeafPrimeInstance>(i));
                 }});

    r.push_back({"A.2b:bipartite->leafprime", "bipartite", "leafprime", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int q = (s % 2) ? 3 : 2;
                     return gen::bipartite(q, 3 + s % 3, 3 + (s / 2) % 3, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return bipartite_to_leafprime(expect<BipartiteInstance>(i));
                 }});

    r.push_back({"A.3a:leaf->lonely", "leaf", "lonely", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int q = (s % 2) ? 3 : 2;
                     return gen::leaf(q, 6 + s % 4, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return leaf_to_lonely(expect<LeafInstance>(i));
                 }});

    r.push_back({"A.3b:lonely->leaf", "lonely", "leaf", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int q = (s % 2) ? 3 : 2;
                     std::uint64_t groups = static_cast<std::uint64_t>(q - 1) + 1 + s % 3;
                     int nd = q == 2 ? 1 : 1 + static_cast<int>(s % (q - 1));
                     return gen::lonely(q, groups, nd, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return lonely_to_leaf(expect<LonelyInstance>(i));
                 }});

    r.push_back({"B.1:bipartite->succbipartite", "bipartite", "succbipartite", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int q = (s % 2) ? 3 : 2;
                     return gen::bipartite(q, 3 + s % 3, 3 + (s / 3) % 3, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return bipartite_to_succbipartite(expect<BipartiteInstance>(i));
                 }});

    r.push_back({"B.2:succbipartite->twomatchings", "succbipartite", "twomatchings", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int p = (s % 2) ? 3 : 2;
                     return gen::succbipartite(p, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return succbipartite_to_twomatchings(expect<SuccBipartiteInstance>(i));
                 }});

    r.push_back({"B.3:twomatchings->lonely", "twomatchings", "lonely", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int p = (s % 2) ? 3 : 2;
                     return gen::twomatchings(p, p * (2 + s % 3) + s % 2, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return twomatchings_to_lonely(expect<TwoMatchingsInstance>(i));
                 }});

    r.push_back({"3.1a:amp->lonely_qr", "amp", "lonely", false,
                 [](std::uint64_t s) -> SearchInstance { return gen::amp(2, 3, s); },
                 [](const SearchInstance& i, Budget&) {
                     const auto& a = expect<std::shared_ptr<AmpInstance>>(i);
                     return amp_to_lonely_qr(*a, 2, 3);
                 }});

    r.push_back({"3.1b:bipartite_qr->amp", "bipartite", "amp", false,
                 [](std::uint64_t s) -> SearchInstance {
                     return gen::bipartite(6, 3 + s % 3, 3 + (s / 5) % 3, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return bipartite_qr_to_amp(expect<BipartiteInstance>(i), 2, 3);
                 }});

    r.push_back({"3.2:lonely_pk->lonely_p", "lonely", "lonely", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int q = (s % 4 == 3) ? 8 : 4;
                     std::uint64_t groups = 1 + s % 2;
                     int nd = 1 + static_cast<int>(s % (q - 1));
                     return gen::lonely(q, groups, nd, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return lonely_pk_to_lonely_p(expect<LonelyInstance>(i));
                 }});

    r.push_back({"3.3:lonely_restrict", "lonely", "lonely", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int p = (s % 2) ? 5 : 3;
                     int nd = 1 + static_cast<int>(s % (p - 1));
                     return gen::lonely(p, 2 + s % 2, nd, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     const auto& l = expect<LonelyInstance>(i);
                     int k = 1 + static_cast<int>((l.designated.front() + l.domain.size()) %
                                                  static_cast<std::uint64_t>(l.q - 1));
                     return lonely_restrict(l, k);
                 }});

    r.push_back({"4.1:chevalley->general", "chevalley", "general_chevalley", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int p = s % 3 == 0 ? 2 : (s % 3 == 1 ? 3 : 5);
                     return gen::chevalley(p, 3 + static_cast<int>(s % 2), s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return chevalley_to_general(expect<ChevalleyInstance>(i));
                 }});

    r.push_back({"4.2:general->chevsym", "general_chevalley", "chevsym", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int p = (s % 2) ? 3 : 2;
                     return gen::general_chevalley(p, 2, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return general_to_chevsym(expect<GeneralChevalleyInstance>(i));
                 }});

    r.push_back({"4.3:normalize_chevsym", "chevsym", "chevsym", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int p = (s % 2) ? 3 : 2;
                     return gen::chevsym_unnormalized(p, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return normalize_chevsym(expect<ChevSymInstance>(i));
                 }});

    r.push_back({"4.4:chevsym->succbipartite", "chevsym", "succbipartite", false,
                 [](std::uint64_t s) -> SearchInstance {
                     return gen::chevsym_normalized(2, 2, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return chevsym_to_succbipartite(expect<ChevSymInstance>(i));
                 }});

    r.push_back({"4:lonely->chevsym", "lonely", "chevsym", true,
                 [](std::uint64_t s) -> SearchInstance {
                     int p = (s % 3 == 2) ? 3 : 2;
                     int n = p == 2 ? 1 + static_cast<int>(s % 2) : 1;
                     return gen::lonely_circuit(p, n, 6, s);
                 },
                 [](const SearchInstance& i, Budget& b) {
                     return lonely_to_chevsym(expect<LonelyInstance>(i), b);
                 }});

    r.push_back({"5.1:endofline->lonely", "endofline", "lonely", false,
                 [](std::uint64_t s) -> SearchInstance {
                     return gen::endofline(5 + s % 5, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     const auto& e = expect<EndOfLineInstance>(i);
                     return endofline_to_lonely(e, 2 + static_cast<int>(e.designated % 3));
                 }});

    r.push_back({"5.2a:lonely->mod", "lonely", "lonely", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int q = (s % 2) ? 3 : 2;
                     int nd = q == 2 ? 1 : 1 + static_cast<int>(s % (q - 1));
                     return gen::lonely(q, 2 + s % 3, nd, s);
                 },
                 [](const SearchInstance& i, Budget&) {
                     return lonely_to_mod(expect<LonelyInstance>(i));
                 }});

    r.push_back({"5.2b:mod->lonely", "lonely", "lonely", false,
                 [](std::uint64_t s) -> SearchInstance {
                     int q = (s % 2) ? 3 : 2;
                     int nd = q == 2 ? 1 : 1 + static_cast<int>(s % (q - 1));
                     Reduction red = lonely_to_mod(gen::lonely(q, 2 + s % 3, nd, s));
                     return red.target;
                 },
                 [](const SearchInstance& i, Budget&) {
                     return mod_to_lonely(expect<LonelyInstance>(i));
                 }});

    return r;
}

} // namespace

const std::vector<RegisteredReduction>& reduction_registry() {
    static const std::vector<RegisteredReduction> reg = build_registry();
    return reg;
}

const RegisteredReduction* find_reduction(const std::string& id) {
    for (const auto& e : reduction_registry())
        if (e.id == id) return &e;
    return nullptr;
}

} // namespace modq
