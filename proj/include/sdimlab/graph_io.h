#pragma once

#include "sdimlab/geom.h"

#include <json.hpp>

#include <string>
#include <string_view>

namespace sdimlab {

/// A graph plus free-form metadata (the continuum builder stores the tooth
/// sequence and truncation depth K there).
struct GraphDocument {
    PLGraph graph;
    nlohmann::json meta = nlohmann::json::object();
};

/// {"format": "sdimlab-graph/1", "host": ..., "vertices": [["p/q","r/s"], ...],
///  "edges": [[u, v], ...], "meta": {...}}
std::string serialize_graph(const PLGraph& g, const nlohmann::json& meta = nlohmann::json::object());

/// Throws ParseError on malformed text and the geom errors on invariant
/// violations (repeated vertices, crossings, disconnection).
GraphDocument parse_graph(std::string_view text);

/// Stable fingerprint of the exact vertex/edge lists (16 hex digits).
std::string host_id(const PLGraph& g);

}  // namespace sdimlab
