#pragma once

#include <string>

#include "json.hpp"
#include "secopt/model.hpp"

namespace secopt {

using Json = nlohmann::json;

/// Complex numbers are encoded as [re, im] pairs; see docs/scenario_format.md.
Json complex_to_json(Cplx c);
Json cvec_to_json(const CVec& v);

/// Parses a scenario object. Throws SchemaError naming the offending field.
/// A missing p0_min is derived from `a` with default_p0_min (0 without `a`);
/// a missing rs0 defaults to 0.
Scenario scenario_from_json(const Json& j);
Json scenario_to_json(const Scenario& sc);

Json solution_to_json(const SchemeSolution& sol, bool with_traces = true);

}  // namespace secopt
