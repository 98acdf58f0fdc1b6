#pragma once

#include <json.hpp>

#include "graph.hpp"
#include "protocol.hpp"
#include "structure.hpp"
#include "theory.hpp"

namespace lmp {

using Json = nlohmann::ordered_json;

Json profile_json(const DegreeSequenceProfile& p);
Json thresholds_json(const ThresholdSet& t);
Json typicality_json(const TypicalityReport& r);
Json run_json(const ProtocolRun& r);
Json condition_json(const BiasCondition& c);

// Full audit document: profile + thresholds + typicality verdicts.
Json inspect_json(const Graph& g, const DegreeSequenceProfile& profile,
                  const ThresholdSet& t, const TypicalityReport& report);

// CSV with columns t,p_t,bound_t,dominated.
std::string recursion_csv(const RecursionTrace& trace);

} // namespace lmp
