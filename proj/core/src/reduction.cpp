#include "modq/reduction.hpp"

#include <utility>

namespace modq {

namespace {

// Rough count of the target's candidate-solution space, used to decide
// whether exhaustive back-map checking is feasible.
std::uint64_t solution_space_size(const SearchInstance& inst) {
    struct V {
        std::uint64_t operator()(const LonelyInstance& i) const { return i.domain.size(); }
        std::uint64_t operator()(const BipartiteInstance& i) const { return i.total_size(); }
        std::uint64_t operator()(const LeafInstance& i) const { return i.domain.size(); }
        std::uint64_t operator()(const LeafPrimeInstance& i) const { return i.domain.size(); }
        std::uint64_t operator()(const SuccBipartiteInstance& i) const {
            return checked_mul_u64(checked_mul_u64(i.v_size, i.u_size, "solution_space_size"),
                                   static_cast<std::uint64_t>(i.q - 1), "solution_space_size");
        }
        std::uint64_t operator()(const TwoMatchingsInstance& i) const { return i.domain.size(); }
        std::uint64_t operator()(const ChevalleyInstance& i) const {
            return point_space(i.sys);
        }
        std::uint64_t operator()(const GeneralChevalleyInstance& i) const {
            return point_space(i.sys);
        }
        std::uint64_t operator()(const ChevSymInstance& i) const { return point_space(i.g); }
        std::uint64_t operator()(const EndOfLineInstance& i) const { return i.domain.size(); }
        std::uint64_t operator()(const BisInstance& i) const {
            return checked_pow_u64(2, static_cast<unsigned>(i.A.cols()), "solution_space_size");
        }
        std::uint64_t operator()(const SisInstance& i) const {
            return checked_pow_u64(3, static_cast<unsigned>(i.A.cols()), "solution_space_size");
        }
        std::uint64_t operator()(const std::shared_ptr<AmpInstance>& a) const {
            return std::visit(*this, a->payload);
        }
        static std::uint64_t point_space(const PolynomialSystem& sys) {
            return checked_pow_u64(static_cast<std::uint64_t>(sys.p),
                                   static_cast<unsigned>(sys.n_vars), "solution_space_size");
        }
    };
    return std::visit(V{}, inst);
}

} // namespace

Reduction sentinel_reduction(Solution forced_source_solution, std::string provenance) {
    // A two-vertex identity-map instance: the non-designated vertex is
    // isolated, hence always a solution.
    LonelyInstance target = LonelyInstance::make(
        2, VertexDomain::plain(2), VertexMap::from_fn([](std::uint64_t v) { return v; }), {0});
    return Reduction{
        target,
        [sol = std::move(forced_source_solution)](const Solution&) { return sol; },
        std::move(provenance)};
}

bool verify_reduction(const SearchInstance& source, const Reduction& red, Budget& budget) {
    bool exhaustive = false;
    try {
        exhaustive = solution_space_size(red.target) <= (std::uint64_t{1} << 14);
    } catch (const error&) {
        exhaustive = false;
    }
    if (exhaustive) {
        std::vector<Solution> sols = all_solutions(red.target, budget);
        if (sols.empty()) return false; // totality of the target violated
        for (const Solution& s : sols) {
            if (!verify(source, red.back_map(s))) return false;
        }
        return true;
    }
    Solution s = brute_solve(red.target, budget);
    return verify(source, red.back_map(s));
}

} // namespace modq
