#pragma once

// JSON encodings of reports. Field names are part of the external contract.
// Non-finite numbers (the +inf right-hand side of TAN2 at θ = π/2) encode as
// null; `unbounded_rhs` tells the two cases apart.

#include <string>

#include <json.hpp>

#include "ritzmaj/harness.hpp"

namespace ritzmaj {

using Json = nlohmann::ordered_json;

Json to_json(const MajorizationVerdict& v);
Json to_json(const BoundCheckReport& r);
Json to_json(const FuzzConfig& cfg);
/// `include_wall_time = false` drops the only nondeterministic field.
Json to_json(const CampaignReport& r, bool include_wall_time = true);
Json to_json(const SuiteReport& r);
Json to_json(const IntermediateRecord& r);
Json matrix_to_json(const CMatrix& m);

/// One CSV row per bound: bound,applicable,held,violated,inapplicable,worst_slack.
std::string campaign_csv(const CampaignReport& r);

std::string seed_hex(std::uint64_t seed);

}  // namespace ritzmaj
