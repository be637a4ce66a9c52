#pragma once

#include <string>

#include <json.hpp>

#include "stcga/dynamics.hpp"
#include "stcga/euclid.hpp"
#include "stcga/multivector.hpp"
#include "stcga/spacetime.hpp"

namespace stcga::io {

using json = nlohmann::ordered_json;

/// Canonical key of a basis blade: generator names joined by '^' in index
/// order; "1" for the scalar blade.
std::string blade_key(const Algebra& alg, BladeMask mask);

/// Parses a blade key, accepting factors in any order. Returns the canonical
/// mask and the reordering sign. Throws ValidationError for unknown or
/// repeated generator names.
std::pair<BladeMask, int> parse_blade_key(const Algebra& alg, const std::string& key);

json multivector_to_json(const Multivector& a);
Multivector multivector_from_json(const AlgebraPtr& alg, const json& j);

json gram_to_json(const Algebra& alg);

json point_to_json(const euclid::Point& p);
euclid::Point point_from_json(const json& j);

json event_to_json(const spacetime::Event& e);
spacetime::Event event_from_json(const json& j);

json shell_to_json(const spacetime::Shell& s);

json signature_to_json(const SignatureCounts& counts);

json infinity_report_to_json(const spacetime::InfinityLimitReport& report);

/// Self-describing convention block embedded in every emitted document:
/// generator list, Gram matrix, distance sign, shell normalization,
/// translator direction and prune epsilon.
json convention_record(const std::string& model_name);

}  // namespace stcga::io
