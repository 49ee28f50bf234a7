#pragma once

#include "modq/labeling.hpp"
#include "modq/reduction.hpp"

namespace modq {

// ---------------------------------------------------------------------------
// Interreducibility of the graph formulations (any q >= 2 unless noted).
// ---------------------------------------------------------------------------

Reduction leaf_to_leafprime(const LeafInstance& src);
Reduction leafprime_to_leaf(const LeafPrimeInstance& src);
Reduction leafprime_to_bipartite(const LeafPrimeInstance& src);
Reduction bipartite_to_leafprime(const BipartiteInstance& src);
Reduction leaf_to_lonely(const LeafInstance& src);
Reduction lonely_to_leaf(const LonelyInstance& src);
Reduction bipartite_to_succbipartite(const BipartiteInstance& src); // q prime
Reduction succbipartite_to_twomatchings(const SuccBipartiteInstance& src);
Reduction twomatchings_to_lonely(const TwoMatchingsInstance& src);

// ---------------------------------------------------------------------------
// Characteristic manipulation.
// ---------------------------------------------------------------------------

// Payload is a Lonely_q (selector 0) or Lonely_r (selector 1) instance; the
// target is Lonely_{qr}.
Reduction amp_to_lonely_qr(const AmpInstance& src, int q, int r);

// Split a Bipartite_{qr} instance into the congruence that fails at v*;
// short-circuits (sentinel) when deg(v*) = 0 mod qr.
Reduction bipartite_qr_to_amp(const BipartiteInstance& src, int q, int r);

// Lonely_{p^k} -> Lonely_p over the p^t-subset domain (t = p-adic valuation
// of |V*|); composes a designated-set restriction when needed.
Reduction lonely_pk_to_lonely_p(const LonelyInstance& src);

// Lonely_p with arbitrary designated count -> Lonely_p with |V*| = k
// (1 <= k <= p-1).  Requires every designated vertex isolated (otherwise a
// sentinel with the immediate source solution).
Reduction lonely_restrict(const LonelyInstance& src, int k);

// Lonely_q over any domain -> Lonely_q over a power-of-two domain whose
// designated count k satisfies 2^N = -k mod q (the MOD_q encoding), and back.
Reduction lonely_to_mod(const LonelyInstance& src);
Reduction mod_to_lonely(const LonelyInstance& src); // src must be the MOD_q shape

// ---------------------------------------------------------------------------
// Chevalley-Warning formulations (p prime).
// ---------------------------------------------------------------------------

Reduction chevalley_to_general(const ChevalleyInstance& src);
Reduction general_to_chevsym(const GeneralChevalleyInstance& src);

// Rewrite g so every polynomial has at most 3 monomials, each of degree at
// most 2, via fresh gate-style variables; back-map projects onto the original
// variables.
Reduction normalize_chevsym(const ChevSymInstance& src);

// Membership direction; requires the normalized shape (see normalize_chevsym).
Reduction chevsym_to_succbipartite(const ChevSymInstance& src);

// Hardness direction.  The emitted system carries a proper labeling with
// labeled degree sum < N; the constructor checks that, plus the free action
// of sigma, before returning (the free-action sweep is budget-guarded).
struct LonelyToChevsym {
    Reduction red;
    Labeling lambda;              // labeling of the target's g system
    long long labeled_degree_sum; // < number of variables
};
LonelyToChevsym lonely_to_chevsym_full(const LonelyInstance& src, Budget& budget);
Reduction lonely_to_chevsym(const LonelyInstance& src, Budget& budget);

// ---------------------------------------------------------------------------
// EndOfLine and Turing-to-Karp compilation.
// ---------------------------------------------------------------------------

Reduction endofline_to_lonely(const EndOfLineInstance& src, int q);

// An adaptive algorithm making exactly t Lonely_p queries (each with
// |V*| = p-1) and computing a source solution from the answers.  The
// problem input is captured inside the closures.
struct AdaptiveOracleAlgorithm {
    int p = 2;
    int t = 1;
    // answers.size() = number of queries already answered (< t).
    std::function<LonelyInstance(const std::vector<Solution>&)> next_query;
    std::function<Solution(const std::vector<Solution>&)> finalize;
};

Reduction compile_turing(const AdaptiveOracleAlgorithm& alg);

} // namespace modq
