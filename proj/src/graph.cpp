#include "abcs/graph.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace abcs {

KeywordId KeywordTable::intern(std::string_view word) {
    if (auto it = ids_.find(std::string(word)); it != ids_.end()) return it->second;
    const auto id = static_cast<KeywordId>(words_.size());
    words_.emplace_back(word);
    ids_.emplace(words_.back(), id);
    return id;
}

std::optional<KeywordId> KeywordTable::find(std::string_view word) const {
    auto it = ids_.find(std::string(word));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t GraphBuilder::ensure_vertex(Layer layer, std::string_view label) {
    const int s = static_cast<int>(layer);
    if (auto it = label_index_[s].find(std::string(label)); it != label_index_[s].end())
        return it->second;
    const auto idx = static_cast<std::uint32_t>(labels_[s].size());
    labels_[s].emplace_back(label);
    label_index_[s].emplace(labels_[s].back(), idx);
    vertex_keywords_[s].emplace_back();
    return idx;
}

std::optional<std::uint32_t> GraphBuilder::find_vertex(Layer layer,
                                                       std::string_view label) const {
    const auto& index = label_index_[static_cast<int>(layer)];
    auto it = index.find(std::string(label));
    if (it == index.end()) return std::nullopt;
    return it->second;
}

void GraphBuilder::add_edge(std::uint32_t upper, std::uint32_t lower) {
    if (upper >= labels_[0].size() || lower >= labels_[1].size())
        throw std::out_of_range("add_edge: vertex index out of range");
    edges_.emplace_back(upper, lower);
}

void GraphBuilder::add_edge_labels(std::string_view upper_label, std::string_view lower_label) {
    const auto u = ensure_vertex(Layer::Upper, upper_label);
    const auto v = ensure_vertex(Layer::Lower, lower_label);
    edges_.emplace_back(u, v);
}

void GraphBuilder::add_keyword(VertexRef v, std::string_view word) {
    add_keyword_id(v, keywords_.intern(word));
}

void GraphBuilder::add_keyword_id(VertexRef v, KeywordId id) {
    auto& kws = vertex_keywords_[static_cast<int>(v.layer)];
    if (v.index >= kws.size()) throw std::out_of_range("add_keyword: vertex index out of range");
    kws[v.index].push_back(id);
}

AttributedBipartiteGraph GraphBuilder::build() && {
    AttributedBipartiteGraph g;
    for (int s = 0; s < 2; ++s) {
        g.labels_[s] = std::move(labels_[s]);
        g.label_index_[s] = std::move(label_index_[s]);
    }
    g.keywords_ = std::move(keywords_);

    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    const std::size_t n[2] = {g.labels_[0].size(), g.labels_[1].size()};
    for (int s = 0; s < 2; ++s) {
        g.adj_offsets_[s].assign(n[s] + 1, 0);
        g.adj_[s].reserve(edges_.size());
    }
    for (const auto& [u, v] : edges_) {
        ++g.adj_offsets_[0][u + 1];
        ++g.adj_offsets_[1][v + 1];
    }
    for (int s = 0; s < 2; ++s)
        for (std::size_t i = 1; i <= n[s]; ++i) g.adj_offsets_[s][i] += g.adj_offsets_[s][i - 1];
    g.adj_[0].resize(edges_.size());
    g.adj_[1].resize(edges_.size());
    std::vector<std::uint64_t> cursor0(g.adj_offsets_[0].begin(), g.adj_offsets_[0].end() - 1);
    std::vector<std::uint64_t> cursor1(g.adj_offsets_[1].begin(), g.adj_offsets_[1].end() - 1);
    // Edges are sorted by (u, v), so upper adjacency comes out sorted; lower
    // adjacency is filled in increasing u per vertex, also sorted.
    for (const auto& [u, v] : edges_) {
        g.adj_[0][cursor0[u]++] = v;
        g.adj_[1][cursor1[v]++] = u;
    }

    for (int s = 0; s < 2; ++s) {
        auto& per_vertex = vertex_keywords_[s];
        g.kw_offsets_[s].assign(n[s] + 1, 0);
        std::size_t total = 0;
        for (std::size_t i = 0; i < n[s]; ++i) {
            auto& kws = per_vertex[i];
            std::sort(kws.begin(), kws.end());
            kws.erase(std::unique(kws.begin(), kws.end()), kws.end());
            total += kws.size();
            g.kw_offsets_[s][i + 1] = static_cast<std::uint32_t>(total);
        }
        g.kw_[s].reserve(total);
        for (auto& kws : per_vertex)
            g.kw_[s].insert(g.kw_[s].end(), kws.begin(), kws.end());

        // Postings: counting sort of (keyword, vertex) pairs by keyword.
        const std::uint32_t vocab = g.keywords_.size();
        g.posting_offsets_[s].assign(vocab + 1, 0);
        for (const auto k : g.kw_[s]) ++g.posting_offsets_[s][k + 1];
        for (std::uint32_t k = 1; k <= vocab; ++k)
            g.posting_offsets_[s][k] += g.posting_offsets_[s][k - 1];
        g.posting_[s].resize(g.kw_[s].size());
        std::vector<std::uint32_t> pcur(g.posting_offsets_[s].begin(),
                                        g.posting_offsets_[s].end() - 1);
        for (std::uint32_t i = 0; i < n[s]; ++i)
            for (std::uint32_t o = g.kw_offsets_[s][i]; o < g.kw_offsets_[s][i + 1]; ++o)
                g.posting_[s][pcur[g.kw_[s][o]]++] = i;
    }
    return g;
}

bool AttributedBipartiteGraph::has_edge(std::uint32_t upper, std::uint32_t lower) const {
    const auto nbrs = neighbors({Layer::Upper, upper});
    return std::binary_search(nbrs.begin(), nbrs.end(), lower);
}

bool AttributedBipartiteGraph::has_keywords(VertexRef v,
                                            std::span<const KeywordId> required) const {
    const auto own = keywords(v);
    return std::includes(own.begin(), own.end(), required.begin(), required.end());
}

std::span<const std::uint32_t> AttributedBipartiteGraph::posting(Layer layer,
                                                                 KeywordId k) const {
    const int s = side(layer);
    if (k >= keywords_.size()) return {};
    return {posting_[s].data() + posting_offsets_[s][k],
            posting_[s].data() + posting_offsets_[s][k + 1]};
}

std::optional<VertexRef> AttributedBipartiteGraph::find_label(Layer layer,
                                                              std::string_view label) const {
    const auto& index = label_index_[side(layer)];
    auto it = index.find(std::string(label));
    if (it == index.end()) return std::nullopt;
    return VertexRef{layer, it->second};
}

SubgraphMask SubgraphMask::all_alive(const AttributedBipartiteGraph& g) {
    SubgraphMask m;
    m.alive_upper.resize(g.upper_count(), true);
    m.alive_lower.resize(g.lower_count(), true);
    return m;
}

SubgraphMask SubgraphMask::none(const AttributedBipartiteGraph& g) {
    SubgraphMask m;
    m.alive_upper.resize(g.upper_count(), false);
    m.alive_lower.resize(g.lower_count(), false);
    return m;
}

SubgraphMask intersect(const SubgraphMask& a, const SubgraphMask& b) {
    assert(a.alive_upper.size() == b.alive_upper.size());
    SubgraphMask out;
    out.alive_upper = a.alive_upper & b.alive_upper;
    out.alive_lower = a.alive_lower & b.alive_lower;
    out.removed_edges = a.removed_edges;
    out.removed_edges.insert(b.removed_edges.begin(), b.removed_edges.end());
    return out;
}

std::uint32_t effective_degree(const AttributedBipartiteGraph& g, const SubgraphMask& m,
                               VertexRef v) {
    if (!m.alive(v)) return 0;
    const auto& opposite = m.layer_bits(other_layer(v.layer));
    std::uint32_t deg = 0;
    if (m.removed_edges.empty()) {
        for (const auto w : g.neighbors(v)) deg += opposite.test(w);
    } else {
        for (const auto w : g.neighbors(v)) {
            if (!opposite.test(w)) continue;
            const bool gone = v.layer == Layer::Upper ? m.edge_removed(v.index, w)
                                                      : m.edge_removed(w, v.index);
            deg += !gone;
        }
    }
    return deg;
}

SubgraphMask keyword_filtered_mask(const AttributedBipartiteGraph& g,
                                   std::span<const KeywordId> su,
                                   std::span<const KeywordId> sv) {
    assert(std::is_sorted(su.begin(), su.end()));
    assert(std::is_sorted(sv.begin(), sv.end()));
    SubgraphMask m;
    const std::span<const KeywordId> req[2] = {su, sv};
    for (const Layer layer : {Layer::Upper, Layer::Lower}) {
        auto& bits = m.layer_bits(layer);
        const auto need = req[static_cast<int>(layer)];
        if (need.empty()) {
            bits.resize(g.layer_count(layer), true);
            continue;
        }
        bits.resize(g.layer_count(layer), false);
        // Scan the smallest posting list and subset-test only those vertices.
        std::span<const std::uint32_t> seed = g.posting(layer, need[0]);
        for (const auto k : need.subspan(1)) {
            const auto p = g.posting(layer, k);
            if (p.size() < seed.size()) seed = p;
        }
        for (const auto v : seed)
            if (g.has_keywords({layer, v}, need)) bits.set(v);
    }
    return m;
}

SubgraphMask connected_component_of(const AttributedBipartiteGraph& g,
                                    const SubgraphMask& m, VertexRef q) {
    SubgraphMask out = SubgraphMask::none(g);
    if (!m.alive(q)) return out;
    out.removed_edges = m.removed_edges;
    std::vector<VertexRef> stack{q};
    out.layer_bits(q.layer).set(q.index);
    while (!stack.empty()) {
        const VertexRef v = stack.back();
        stack.pop_back();
        const auto& opp_alive = m.layer_bits(other_layer(v.layer));
        auto& opp_out = out.layer_bits(other_layer(v.layer));
        for (const auto w : g.neighbors(v)) {
            if (!opp_alive.test(w) || opp_out.test(w)) continue;
            if (!m.removed_edges.empty()) {
                const bool gone = v.layer == Layer::Upper ? m.edge_removed(v.index, w)
                                                          : m.edge_removed(w, v.index);
                if (gone) continue;
            }
            opp_out.set(w);
            stack.push_back({other_layer(v.layer), w});
        }
    }
    return out;
}

}  // namespace abcs
