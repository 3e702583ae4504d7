#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace abcs {

enum class Layer : std::uint8_t { Upper = 0, Lower = 1 };

constexpr Layer other_layer(Layer l) {
    return l == Layer::Upper ? Layer::Lower : Layer::Upper;
}

struct VertexRef {
    Layer layer{Layer::Upper};
    std::uint32_t index{0};

    friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

using KeywordId = std::uint32_t;

// Interns keyword strings to dense ids. Both layers share one id space; the
// loaders keep the layer vocabularies disjoint, the table does not care.
class KeywordTable {
  public:
    KeywordId intern(std::string_view word);
    std::optional<KeywordId> find(std::string_view word) const;
    const std::string& word(KeywordId id) const { return words_.at(id); }
    std::uint32_t size() const { return static_cast<std::uint32_t>(words_.size()); }

  private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, KeywordId> ids_;
};

class AttributedBipartiteGraph;

// Mutable staging area; build() freezes everything into CSR form.
class GraphBuilder {
  public:
    // Labels are unique per layer. Adding an existing label returns its index.
    std::uint32_t ensure_vertex(Layer layer, std::string_view label);
    std::optional<std::uint32_t> find_vertex(Layer layer, std::string_view label) const;
    void add_edge(std::uint32_t upper, std::uint32_t lower);
    void add_edge_labels(std::string_view upper_label, std::string_view lower_label);
    KeywordId intern_keyword(std::string_view word) { return keywords_.intern(word); }
    void add_keyword(VertexRef v, std::string_view word);
    void add_keyword_id(VertexRef v, KeywordId id);

    std::uint32_t layer_count(Layer layer) const {
        return static_cast<std::uint32_t>(labels_[static_cast<int>(layer)].size());
    }

    AttributedBipartiteGraph build() &&;

  private:
    friend class AttributedBipartiteGraph;
    std::vector<std::string> labels_[2];
    std::unordered_map<std::string, std::uint32_t> label_index_[2];
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;  // (upper, lower)
    std::vector<std::vector<KeywordId>> vertex_keywords_[2];
    KeywordTable keywords_;
};

// Immutable attributed bipartite graph. Adjacency is CSR per layer with sorted
// neighbor lists; keyword sets are sorted id lists; per-layer posting lists map
// a keyword to the vertices carrying it.
class AttributedBipartiteGraph {
  public:
    std::uint32_t upper_count() const { return layer_count(Layer::Upper); }
    std::uint32_t lower_count() const { return layer_count(Layer::Lower); }
    std::uint32_t layer_count(Layer layer) const {
        return static_cast<std::uint32_t>(labels_[side(layer)].size());
    }
    std::uint64_t edge_count() const { return adj_[0].size(); }

    // Neighbor indices live in the opposite layer.
    std::span<const std::uint32_t> neighbors(VertexRef v) const {
        const int s = side(v.layer);
        return {adj_[s].data() + adj_offsets_[s][v.index],
                adj_[s].data() + adj_offsets_[s][v.index + 1]};
    }
    std::uint32_t degree(VertexRef v) const {
        const int s = side(v.layer);
        return static_cast<std::uint32_t>(adj_offsets_[s][v.index + 1] -
                                          adj_offsets_[s][v.index]);
    }
    bool has_edge(std::uint32_t upper, std::uint32_t lower) const;

    std::span<const KeywordId> keywords(VertexRef v) const {
        const int s = side(v.layer);
        return {kw_[s].data() + kw_offsets_[s][v.index],
                kw_[s].data() + kw_offsets_[s][v.index + 1]};
    }
    // True iff the sorted id list `required` is a subset of v's keyword set.
    bool has_keywords(VertexRef v, std::span<const KeywordId> required) const;

    // Vertices of `layer` whose keyword set contains `k`, sorted. Empty span
    // for keywords absent from that layer.
    std::span<const std::uint32_t> posting(Layer layer, KeywordId k) const;

    const KeywordTable& keyword_table() const { return keywords_; }
    const std::string& label(VertexRef v) const { return labels_[side(v.layer)][v.index]; }
    std::optional<VertexRef> find_label(Layer layer, std::string_view label) const;

  private:
    friend class GraphBuilder;
    static constexpr int side(Layer l) { return static_cast<int>(l); }

    std::vector<std::string> labels_[2];
    std::unordered_map<std::string, std::uint32_t> label_index_[2];
    std::vector<std::uint64_t> adj_offsets_[2];
    std::vector<std::uint32_t> adj_[2];
    std::vector<std::uint32_t> kw_offsets_[2];
    std::vector<KeywordId> kw_[2];
    std::vector<std::uint32_t> posting_offsets_[2];  // indexed by keyword id
    std::vector<std::uint32_t> posting_[2];
    KeywordTable keywords_;
};

// A view of a subgraph: which vertices are alive per layer, plus explicitly
// removed edges (endpoints may stay alive). Edge keys pack (upper << 32 | lower).
struct SubgraphMask {
    boost::dynamic_bitset<> alive_upper;
    boost::dynamic_bitset<> alive_lower;
    std::unordered_set<std::uint64_t> removed_edges;

    static SubgraphMask all_alive(const AttributedBipartiteGraph& g);
    static SubgraphMask none(const AttributedBipartiteGraph& g);
    static constexpr std::uint64_t edge_key(std::uint32_t upper, std::uint32_t lower) {
        return (static_cast<std::uint64_t>(upper) << 32) | lower;
    }

    boost::dynamic_bitset<>& layer_bits(Layer l) {
        return l == Layer::Upper ? alive_upper : alive_lower;
    }
    const boost::dynamic_bitset<>& layer_bits(Layer l) const {
        return l == Layer::Upper ? alive_upper : alive_lower;
    }
    bool alive(VertexRef v) const { return layer_bits(v.layer).test(v.index); }
    void kill(VertexRef v) { layer_bits(v.layer).reset(v.index); }
    bool edge_removed(std::uint32_t upper, std::uint32_t lower) const {
        return !removed_edges.empty() && removed_edges.count(edge_key(upper, lower)) > 0;
    }
    void remove_edge(std::uint32_t upper, std::uint32_t lower) {
        removed_edges.insert(edge_key(upper, lower));
    }
    std::uint64_t alive_count() const { return alive_upper.count() + alive_lower.count(); }
    bool empty() const { return alive_upper.none() && alive_lower.none(); }

    bool operator==(const SubgraphMask& o) const {
        return alive_upper == o.alive_upper && alive_lower == o.alive_lower &&
               removed_edges == o.removed_edges;
    }
};

// Intersection of alive sets; removed edge sets are unioned.
SubgraphMask intersect(const SubgraphMask& a, const SubgraphMask& b);

// Degree of v counting only alive opposite endpoints and non-removed edges.
std::uint32_t effective_degree(const AttributedBipartiteGraph& g, const SubgraphMask& m,
                               VertexRef v);

// Mask keeping upper vertices whose keyword set contains all of su and lower
// vertices containing all of sv. Empty set means no constraint on that layer.
// Both inputs must be sorted.
SubgraphMask keyword_filtered_mask(const AttributedBipartiteGraph& g,
                                   std::span<const KeywordId> su,
                                   std::span<const KeywordId> sv);

// Connected component of q within the masked subgraph. Empty mask if q is dead.
SubgraphMask connected_component_of(const AttributedBipartiteGraph& g,
                                    const SubgraphMask& m, VertexRef q);

}  // namespace abcs
