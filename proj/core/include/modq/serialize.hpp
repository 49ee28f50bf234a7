#ifndef MODQ_SERIALIZE_HPP
#define MODQ_SERIALIZE_HPP

#include <json.hpp>

#include "modq/instance.hpp"
#include "modq/poly.hpp"

// JSON instance/solution files, all carrying "format": 1.  Closure-backed
// oracles are materialized to tables (charged to the budget) on the way out;
// table- and circuit-backed oracles round-trip exactly.

namespace modq {

nlohmann::json instance_to_json(const SearchInstance& inst, Budget& budget);
SearchInstance instance_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const Solution& sol);
Solution solution_from_json(const nlohmann::json& j);

nlohmann::json system_to_json(const PolynomialSystem& sys);
PolynomialSystem system_from_json(const nlohmann::json& j);

nlohmann::json domain_to_json(const VertexDomain& d);
VertexDomain domain_from_json(const nlohmann::json& j);

} // namespace modq

#endif
