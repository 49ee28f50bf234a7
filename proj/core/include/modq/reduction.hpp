#pragma once

#include <functional>
#include <string>

#include "modq/error.hpp"
#include "modq/instance.hpp"

namespace modq {

// A Karp-style reduction between search problems: a target instance plus a
// back-map that converts any verifying target solution into a verifying
// source solution.
struct Reduction {
    SearchInstance target;
    std::function<Solution(const Solution&)> back_map;
    std::string provenance;
};

// A trivially solved target whose back-map returns a fixed, precomputed
// source solution. Used when a construction can short-circuit: the source
// solution is already known, so any uniform target works.
Reduction sentinel_reduction(Solution forced_source_solution, std::string provenance);

// Soundness check: brute-solve the target, back-map, verify against the
// source. When the target's solution space is small enough (domain at most
// 2^14), every target solution is enumerated and back-mapped.
bool verify_reduction(const SearchInstance& source, const Reduction& red, Budget& budget);

}  // namespace modq
