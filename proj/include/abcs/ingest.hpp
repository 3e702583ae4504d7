#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "abcs/graph.hpp"

namespace abcs {

// Edge list, one edge per line: "<upper> <lower> [ignored extra columns]",
// whitespace separated, lines starting with '%' are comments. Ids are opaque
// labels (KONECT-style integer ids included); dense indices are assigned in
// order of first appearance, duplicate edges are merged.
void read_edge_list(std::istream& in, GraphBuilder& builder, const std::string& name);

// Attribute file, one vertex per line: "<id>\t<kw1>,<kw2>,...". Vertices may
// be omitted (empty keyword set); ids must exist in the graph.
void read_attributes(std::istream& in, GraphBuilder& builder, Layer layer,
                     const std::string& name);

AttributedBipartiteGraph load_graph(const std::string& edge_path,
                                    const std::optional<std::string>& attrs_upper_path,
                                    const std::optional<std::string>& attrs_lower_path);

// Inverse of the readers: vertices keep their labels; a reparse reproduces the
// same dense ids because edges are written in index order.
void write_edge_list(const AttributedBipartiteGraph& g, std::ostream& out);
void write_attributes(const AttributedBipartiteGraph& g, Layer layer, std::ostream& out);

struct SyntheticAttrConfig {
    std::uint32_t min_per_vertex{8};
    std::uint32_t max_per_vertex{13};
    std::uint32_t vocab_upper{0};  // must be >= max_per_vertex
    std::uint32_t vocab_lower{0};
    std::uint64_t seed{1};
};

// Replace all keyword sets with synthetic ones: each vertex draws a uniform
// count in [min,max] of distinct words from its layer's vocabulary. The two
// layer vocabularies are disjoint ("u<i>" / "v<i>").
AttributedBipartiteGraph generate_attributes(const AttributedBipartiteGraph& g,
                                             const SyntheticAttrConfig& cfg);

// Induced subgraph on round(fraction * n) vertices per layer, chosen uniformly.
// Labels and keywords carry over; indices are re-densified in original order.
AttributedBipartiteGraph sample_subgraph(const AttributedBipartiteGraph& g, double fraction,
                                         std::uint64_t seed);

// Keep a uniform ceil(fraction * |W|) subset of each vertex's keyword set.
AttributedBipartiteGraph sample_keywords(const AttributedBipartiteGraph& g, double fraction,
                                         std::uint64_t seed);

}  // namespace abcs
