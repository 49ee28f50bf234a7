#ifndef MODQ_REGISTRY_HPP
#define MODQ_REGISTRY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "modq/reduction.hpp"

namespace modq {

// One registered reduction: a stable string id, a seeded source generator
// producing desk-scale instances appropriate for the construction, and the
// construction itself.
struct RegisteredReduction {
    std::string id;
    std::string source_problem;
    std::string target_problem;
    // Target solution spaces too large to sweep; such entries are exercised
    // by dedicated tests instead of generic brute-force verification.
    bool heavy_target = false;
    std::function<SearchInstance(std::uint64_t seed)> gen_source;
    std::function<Reduction(const SearchInstance&, Budget&)> apply;
};

const std::vector<RegisteredReduction>& reduction_registry();
const RegisteredReduction* find_reduction(const std::string& id); // null if absent

} // namespace modq

#endif
