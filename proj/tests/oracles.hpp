#pragma once

// Slow reference implementations used to cross-check the library. They share
// only the data types with the library, never its algorithms: degrees are
// recounted from adjacency on every use, fixed points are reached by repeated
// full rescans, components use union-find instead of BFS, and keyword
// containment is a quadratic scan instead of sorted-set operations.

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "abcs/candidates.hpp"
#include "abcs/graph.hpp"
#include "abcs/peeling.hpp"
#include "abcs/rng.hpp"

namespace refimpl {

using namespace abcs;

inline bool contains_all(std::span<const KeywordId> have, std::span<const KeywordId> need) {
    for (const auto k : need) {
        bool found = false;
        for (const auto h : have)
            if (h == k) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

inline std::uint32_t slow_degree(const AttributedBipartiteGraph& g, const SubgraphMask& m,
                                 VertexRef v) {
    if (!m.alive(v)) return 0;
    std::uint32_t d = 0;
    for (const auto w : g.neighbors(v)) {
        if (!m.alive({other_layer(v.layer), w})) continue;
        const auto upper = v.layer == Layer::Upper ? v.index : w;
        const auto lower = v.layer == Layer::Upper ? w : v.index;
        if (m.edge_removed(upper, lower)) continue;
        ++d;
    }
    return d;
}

// Fixed point by repeated rescans. With `order` set, delete exactly one
// randomly chosen violator per round (exercises order independence);
// otherwise sweep all current violators each round.
inline SubgraphMask slow_core(const AttributedBipartiteGraph& g, SubgraphMask m,
                              CoreParams params, std::mt19937_64* order = nullptr) {
    for (;;) {
        std::vector<VertexRef> violators;
        for (const Layer layer : {Layer::Upper, Layer::Lower}) {
            for (std::uint32_t i = 0; i < g.layer_count(layer); ++i) {
                const VertexRef v{layer, i};
                if (m.alive(v) && slow_degree(g, m, v) < params.threshold(layer))
                    violators.push_back(v);
            }
        }
        if (violators.empty()) return m;
        if (order)
            m.kill(violators[uniform_below(*order, violators.size())]);
        else
            for (const auto v : violators) m.kill(v);
    }
}

// Connected component of q via union-find over alive vertices.
inline SubgraphMask slow_component(const AttributedBipartiteGraph& g, const SubgraphMask& m,
                                   VertexRef q) {
    if (!m.alive(q)) return SubgraphMask::none(g);
    const std::uint32_t nu = g.upper_count();
    std::vector<std::uint32_t> parent(nu + g.lower_count());
    for (std::uint32_t i = 0; i < parent.size(); ++i) parent[i] = i;
    const auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::uint32_t u = 0; u < nu; ++u) {
        if (!m.alive({Layer::Upper, u})) continue;
        for (const auto v : g.neighbors({Layer::Upper, u})) {
            if (!m.alive({Layer::Lower, v}) || m.edge_removed(u, v)) continue;
            parent[find(u)] = find(nu + v);
        }
    }
    const auto root = find(q.layer == Layer::Upper ? q.index : nu + q.index);
    SubgraphMask out = SubgraphMask::none(g);
    out.removed_edges = m.removed_edges;
    for (std::uint32_t u = 0; u < nu; ++u)
        if (m.alive({Layer::Upper, u}) && find(u) == root) out.alive_upper.set(u);
    for (std::uint32_t v = 0; v < g.lower_count(); ++v)
        if (m.alive({Layer::Lower, v}) && find(nu + v) == root) out.alive_lower.set(v);
    return out;
}

// Community of q inside `scope`: iterate core + component until stable.
inline PeelResult slow_community(const AttributedBipartiteGraph& g, const SubgraphMask& scope,
                                 VertexRef q, CoreParams params) {
    SubgraphMask current = scope;
    for (;;) {
        SubgraphMask cored = slow_core(g, current, params);
        if (!cored.alive(q)) return PeelResult{SubgraphMask::none(g), 0, 0, false};
        SubgraphMask comp = slow_component(g, cored, q);
        if (comp == current) break;
        current = std::move(comp);
    }
    PeelResult r;
    r.mask = current;
    r.upper_size = static_cast<std::uint32_t>(current.alive_upper.count());
    r.lower_size = static_cast<std::uint32_t>(current.alive_lower.count());
    r.exists = true;
    return r;
}

// Vertices whose keyword sets contain the given sets (empty set = no filter).
inline SubgraphMask slow_filter(const AttributedBipartiteGraph& g,
                                std::span<const KeywordId> su, std::span<const KeywordId> sv) {
    SubgraphMask m = SubgraphMask::none(g);
    for (std::uint32_t u = 0; u < g.upper_count(); ++u)
        if (contains_all(g.keywords({Layer::Upper, u}), su)) m.alive_upper.set(u);
    for (std::uint32_t v = 0; v < g.lower_count(); ++v)
        if (contains_all(g.keywords({Layer::Lower, v}), sv)) m.alive_lower.set(v);
    return m;
}

inline std::vector<std::uint32_t> bits_of(const boost::dynamic_bitset<>& b) {
    std::vector<std::uint32_t> out;
    for (auto i = b.find_first(); i != boost::dynamic_bitset<>::npos; i = b.find_next(i))
        out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

struct SlowCommunity {
    std::vector<std::uint32_t> upper;
    std::vector<std::uint32_t> lower;
};

// Every nonempty subset of a small base set, as plain sorted vectors.
inline std::vector<KeywordSet> slow_subsets(const KeywordSet& base) {
    std::vector<KeywordSet> out;
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << base.size()); ++bits) {
        KeywordSet s;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (bits & (std::uint64_t{1} << i)) s.push_back(base[i]);
        out.push_back(std::move(s));
    }
    return out;
}

// Exhaustive map of every qualified pair for (q, params, S) to its community,
// enumerating all nonempty subsets of S against all nonempty subsets of the
// lower layer's vocabulary. Only usable at corpus scale.
inline std::map<CandidatePair, SlowCommunity> all_qualified(const AttributedBipartiteGraph& g,
                                                            VertexRef q, CoreParams params,
                                                            const KeywordSet& s) {
    KeywordSet vocab;
    for (std::uint32_t v = 0; v < g.lower_count(); ++v) {
        const auto k = g.keywords({Layer::Lower, v});
        vocab.insert(vocab.end(), k.begin(), k.end());
    }
    std::sort(vocab.begin(), vocab.end());
    vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
    if (s.size() > 10 || vocab.size() > 16)
        throw std::runtime_error("all_qualified: base sets too large for exhaustion");

    std::map<CandidatePair, SlowCommunity> out;
    for (const auto& su : slow_subsets(s)) {
        for (const auto& sv : slow_subsets(vocab)) {
            const SubgraphMask filtered = slow_filter(g, su, sv);
            const PeelResult r = slow_community(g, filtered, q, params);
            if (r.exists)
                out.emplace(CandidatePair{su, sv},
                            SlowCommunity{bits_of(r.mask.alive_upper), bits_of(r.mask.alive_lower)});
        }
    }
    return out;
}

// The expected query answer derived from all_qualified: all pairs of maximum
// total size with their communities, in canonical pair order.
inline std::vector<std::pair<CandidatePair, SlowCommunity>> max_qualified(
    const std::map<CandidatePair, SlowCommunity>& qualified) {
    std::uint32_t best = 0;
    for (const auto& [pair, comm] : qualified) best = std::max(best, pair.size());
    std::vector<std::pair<CandidatePair, SlowCommunity>> out;
    for (const auto& [pair, comm] : qualified)
        if (pair.size() == best) out.emplace_back(pair, comm);
    return out;  // std::map iterates in CandidatePair order already
}

}  // namespace refimpl
