#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "causal/conditional.hpp"
#include "causal/realize.hpp"

namespace causal {

using Json = nlohmann::ordered_json;

/// Raised for unreadable files and malformed documents.
class FormatError : public CausalError {
public:
    using CausalError::CausalError;
};

Json read_json_file(const std::filesystem::path& path);

/// {"events": [...], "order": [[x, y], ...], "inputs": {e: [...]}, "outputs": {e: [...]}}
CausalScenario scenario_from_json(const Json& j);
Json scenario_to_json(const CausalScenario& s);

/// A "scenario" value: an inline object or a path relative to `base`.
CausalScenario resolve_scenario(const Json& value, const std::filesystem::path& base);

/// {"scenario": ..., "event_order": "A,B", "rows": {"i,..": {"o,..": "p/q"}}}.
/// Missing cells are zero; every row must be present.
EmpiricalTable model_from_json(const Json& j, const std::filesystem::path& base = {});
EmpiricalTable read_model(const std::filesystem::path& path);
/// Writes every cell in canonical order. A model on a proper lowerset is
/// written over the scenario restricted to that lowerset.
Json model_to_json(const EmpiricalTable& e);

/// The same table over the scenario restricted to its support.
EmpiricalTable as_full_model(const EmpiricalTable& e);

Json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const Json& j, const std::filesystem::path& base = {});

/// "discrete", "indiscrete", "chain:A<B<C", "pairs:C<A,C<B", or a JSON file
/// with an "order" list of generating pairs.
Preorder parse_order_spec(const std::string& spec, const std::vector<std::string>& events);

/// Fixed-width text table with a header naming the canonical event order.
std::string format_table(const EmpiricalTable& e);

}  // namespace causal
