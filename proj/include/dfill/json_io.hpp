#pragma once

// Versioned JSON documents.  Keys are emitted in a fixed order and rationals
// as exact "a/b" strings, so equal inputs serialize to identical bytes.

#include "dfill/arcs.hpp"
#include "dfill/census.hpp"
#include "dfill/filling.hpp"
#include "dfill/ladder.hpp"
#include "dfill/monodromy.hpp"
#include "dfill/tracks.hpp"

#include "json.hpp"

#include <string>

namespace dfill {

using Json = nlohmann::ordered_json;

// Readers throw ParseError on malformed JSON and StructuralError on a
// document of the wrong shape or schema tag.
Json parse_json_text(const std::string& text);

Json to_json(const SlopeInterval& arc);

Json to_json(const MonodromyBoundaryAction& action);
MonodromyBoundaryAction action_from_json(const Json& j);

Json to_json(const MultislopeReport& report);
// A report for one torus examined at each slope in turn.
Json filling_report_json(const BoundaryOrbit& orbit, const std::vector<MultislopeReport>& per_slope);
Json multislope_report_json(const std::vector<BoundaryOrbit>& orbits, const MultislopeReport& report);

Json to_json(const AdmissibleArcSystem& sys);
AdmissibleArcSystem arc_system_from_json(const Json& j);
Json to_json(const std::vector<Violation>& violations);

Json to_json(const TorusTrainTrack& track);
TorusTrainTrack track_from_json(const Json& j);
Json to_json(const CarriedSlopes& slopes, const WeightCone& cone);

Json to_json(const EndpointConfig& config);
EndpointConfig config_from_json(const Json& j);

Json to_json(const CensusEntry& e);
Json census_json(const std::vector<CensusEntry>& entries);
std::vector<CensusEntry> census_from_json(const Json& j);
Json to_json(const VerificationRecord& r);

Json to_json(const LadderSummary& s);

}  // namespace dfill
