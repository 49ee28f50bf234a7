#ifndef MODQ_GEN_HPP
#define MODQ_GEN_HPP

#include <cstdint>
#include <memory>

#include "modq/instance.hpp"

// Seeded random instance generators (std::mt19937_64 throughout).  All
// outputs are well-formed desk-scale instances; the same seed always yields
// the same instance.

namespace modq::gen {

// Partial q-matching on q*groups vertices with n_designated isolated
// designated vertices.
LonelyInstance lonely(int q, std::uint64_t groups, int n_designated, std::uint64_t seed);

// As above but over the domain [p]^n (designated isolated).
LonelyInstance lonely_qary(int p, int n, std::uint64_t seed);

// Successor map given by a random (+, x) circuit with at most max_gates
// non-input gates; the designated vertex is a random isolated one (circuits
// are retried deterministically until one exists).
LonelyInstance lonely_circuit(int p, int n, int max_gates, std::uint64_t seed);

LeafInstance leaf(int q, std::uint64_t n_vertices, std::uint64_t seed);
LeafPrimeInstance leafprime(int q, int k, std::uint64_t n_vertices, std::uint64_t seed);
BipartiteInstance bipartite(int q, std::uint64_t v_size, std::uint64_t u_size,
                            std::uint64_t seed);
// Built by reducing a random bipartite instance (retried past sentinels).
SuccBipartiteInstance succbipartite(int p, std::uint64_t seed);
TwoMatchingsInstance twomatchings(int p, std::uint64_t n_vertices, std::uint64_t seed);
// One confirmed path plus isolated vertices; designated = path head.
EndOfLineInstance endofline(std::uint64_t n_vertices, std::uint64_t seed);

// Random zecote system with m polynomials of max term degree <= max_deg.
PolynomialSystem system(int p, int n, int m, int max_deg, std::uint64_t seed);

ChevalleyInstance chevalley(int p, int n, std::uint64_t seed); // degree sum < n
GeneralChevalleyInstance general_chevalley(int p, int n, std::uint64_t seed);
// h empty, sigma cycles variable blocks, g deliberately not in normal form.
ChevSymInstance chevsym_unnormalized(int p, std::uint64_t seed);
// Normal-form instance produced by the general -> symmetric -> normalize
// pipeline on a random source.
ChevSymInstance chevsym_normalized(int p, int n, std::uint64_t seed);

std::shared_ptr<AmpInstance> amp(int q, int r, std::uint64_t seed);

BisInstance bis(std::uint64_t q, std::size_t m, std::uint64_t seed);
SisInstance sis(std::uint64_t q, std::size_t m, std::uint64_t seed);

} // namespace modq::gen

#endif
