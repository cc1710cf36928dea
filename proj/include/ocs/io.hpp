#pragma once

#include "ocs/configuration.hpp"
#include "ocs/dowling.hpp"
#include "ocs/group.hpp"
#include "ocs/homology.hpp"
#include "ocs/poset.hpp"
#include "ocs/stability.hpp"
#include "ocs/symmetric.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace ocs {

using json = nlohmann::json;

// Schema violations throw Error with code "malformed_input".

GroupTable group_from_json(const json& j);
json group_to_json(const GroupTable& g);

GSetSpec gset_from_json(const json& j, const GroupTable& group);
json gset_to_json(const GSetSpec& gset);

// {"group": ..., "gset": ...}; the gset may be omitted (S empty).
DowlingSpec dowling_spec_from_json(const json& j, int n);
json dowling_spec_to_json(const DowlingSpec& spec);

// {"name", "betti", "group", "orbits": [{"stabilizer": {"elements": [...]}, "inT"}],
//  "gset" (alternative to orbits), "iAcyclic"}
SpaceInput space_from_json(const json& j);

struct PosetInput {
    Poset poset;
    std::optional<DowlingPoset> dowling; // when the file records its Dowling spec
};

// {"n", "covers", "rank"?, "elements"?, "spec"?, "degree"?}
PosetInput poset_from_json(const json& j);
json poset_to_json(const Poset& p);
json dowling_poset_to_json(const DowlingPoset& dp);

// Covers sorted, with ranks: the key for result caching.
std::string canonical_poset_string(const Poset& p);
std::string fnv1a_hex(const std::string& s);

json rational_to_json(const Rational& r);
json betti_to_json(const BettiTable& b);
json whitney_to_json(const WhitneyHomology& w);
json partition_to_json(const Partition& p);
json step_to_json(const StabilityStep& s);
json report_to_json(const StabilityReport& r);

// Reads a JSON file; parse errors become "malformed_input".
json read_json_file(const std::string& path);

} // namespace ocs
