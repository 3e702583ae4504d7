#pragma once

#include <json.hpp>
#include <string>

#include "abcs/graph.hpp"
#include "abcs/search.hpp"

namespace abcs {

// The query result document. Field order is fixed so documents are diffable
// byte-for-byte; with stable_timing the elapsed_ms field is pinned to 0 so
// repeated runs serialize identically.
nlohmann::ordered_json result_document(const AttributedBipartiteGraph& g, const QuerySpec& spec,
                                       const QueryResult& result, bool stable_timing);

std::string render_json(const nlohmann::ordered_json& doc);

// Tab-separated alternative: one line per community,
// "keywords_u keywords_v vertices_u vertices_v size" with comma-joined cells.
std::string render_tsv(const AttributedBipartiteGraph& g, const QueryResult& result);

}  // namespace abcs
