#ifndef MODQ_MODSOLVE_HPP
#define MODQ_MODSOLVE_HPP

#include <iosfwd>
#include <vector>

#include "modq/instance.hpp"
#include "modq/reduction.hpp"

namespace modq {

// Nonzero kernel vectors of A (shape ignored beyond entries) by Gaussian
// elimination; require more columns than rows.
std::vector<int> kernel_vector_f2(const ModMatrix& A); // entries {0, 1}
std::vector<int> kernel_vector_f3(const ModMatrix& A); // entries {-1, 0, 1}

// Polynomial-time solvers via bootstrapping: peel one prime factor of q per
// stage, solving column blocks recursively and combining with a prime-field
// kernel vector over the block images divided by the residual modulus.
VecSol solve_bis_pow2(const BisInstance& inst);  // q a power of 2
VecSol solve_sis_2k3l(const SisInstance& inst);  // q = 2^k 3^l

// Reductions to polynomial root finding, for prime q (SIS: odd prime).
Reduction bis_to_chevalley(const BisInstance& src);
Reduction sis_to_chevalley(const SisInstance& src);

// Text format: "m n q" on the first line, then m rows of n integers.
ModMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const ModMatrix& A);

} // namespace modq

#endif
