#include "abcs/peeling.hpp"

#include <cassert>
#include <stdexcept>

namespace abcs {

namespace {

// Per-thread scratch so scoped peels on large graphs do not pay an O(n)
// allocation each call. Entries are only valid at positions alive in the
// current mask; stale values at dead positions are never read.
struct PeelScratch {
    std::vector<std::uint32_t> deg[2];
    std::vector<VertexRef> queue;
};
thread_local PeelScratch tl_scratch;

// Queue-driven cascade with maintained degree counters: seed with every
// violating vertex, decrement neighbor counters on deletion and push a vertex
// exactly when it crosses below its threshold. Stops early (returns false)
// once `watch` dies; with watch == nullptr runs to the fixed point.
bool cascade(const AttributedBipartiteGraph& g, SubgraphMask& m, CoreParams params,
             const VertexRef* watch) {
    auto& scratch = tl_scratch;
    auto& queue = scratch.queue;
    queue.clear();
    for (const Layer layer : {Layer::Upper, Layer::Lower}) {
        const int s = static_cast<int>(layer);
        auto& deg = scratch.deg[s];
        if (deg.size() < g.layer_count(layer)) deg.resize(g.layer_count(layer));
        const auto& bits = m.layer_bits(layer);
        const auto need = params.threshold(layer);
        for (auto i = bits.find_first(); i != boost::dynamic_bitset<>::npos;
             i = bits.find_next(i)) {
            const VertexRef v{layer, static_cast<std::uint32_t>(i)};
            deg[i] = effective_degree(g, m, v);
            if (deg[i] < need) queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const VertexRef v = queue.back();
        queue.pop_back();
        if (!m.alive(v)) continue;  // re-queued entries may already be dead
        m.kill(v);
        if (watch && v == *watch) return false;
        const Layer opp = other_layer(v.layer);
        const auto opp_need = params.threshold(opp);
        const auto& opp_bits = m.layer_bits(opp);
        auto& opp_deg = scratch.deg[static_cast<int>(opp)];
        for (const auto w : g.neighbors(v)) {
            if (!opp_bits.test(w)) continue;
            if (!m.removed_edges.empty()) {
                const bool gone = v.layer == Layer::Upper ? m.edge_removed(v.index, w)
                                                          : m.edge_removed(w, v.index);
                if (gone) continue;
            }
            if (--opp_deg[w] == opp_need - 1) queue.push_back({opp, w});
        }
    }
    return true;
}

}  // namespace

SubgraphMask peel_to_core(const AttributedBipartiteGraph& g, const SubgraphMask& scope,
                          CoreParams params) {
    if (params.alpha < 1 || params.beta < 1)
        throw std::invalid_argument("peel_to_core: alpha and beta must be >= 1");
    SubgraphMask m = scope;
    cascade(g, m, params, nullptr);
    return m;
}

PeelResult peel_community(const AttributedBipartiteGraph& g, const SubgraphMask& scope,
                          VertexRef q, CoreParams params) {
    if (params.alpha < 1 || params.beta < 1)
        throw std::invalid_argument("peel_community: alpha and beta must be >= 1");
    PeelResult r;
    if (!scope.alive(q)) {
        r.mask = SubgraphMask::none(g);
        return r;
    }
    SubgraphMask m = scope;
    if (!cascade(g, m, params, &q)) {
        r.mask = SubgraphMask::none(g);
        return r;
    }
    r.mask = connected_component_of(g, m, q);
#ifndef NDEBUG
    // Restricting the core to one component cannot drop any degree below the
    // threshold: all neighbors of a component member are in the component.
    for (const Layer layer : {Layer::Upper, Layer::Lower}) {
        const auto& bits = r.mask.layer_bits(layer);
        for (auto i = bits.find_first(); i != boost::dynamic_bitset<>::npos;
             i = bits.find_next(i))
            assert(effective_degree(g, r.mask, {layer, static_cast<std::uint32_t>(i)}) >=
                   params.threshold(layer));
    }
#endif
    r.upper_size = static_cast<std::uint32_t>(r.mask.alive_upper.count());
    r.lower_size = static_cast<std::uint32_t>(r.mask.alive_lower.count());
    r.exists = true;
    return r;
}

std::vector<SubgraphMask> core_decompose(const AttributedBipartiteGraph& g, CoreParams params) {
    const SubgraphMask core = peel_to_core(g, SubgraphMask::all_alive(g), params);
    std::vector<SubgraphMask> components;
    boost::dynamic_bitset<> seen(g.upper_count());
    for (auto i = core.alive_upper.find_first(); i != boost::dynamic_bitset<>::npos;
         i = core.alive_upper.find_next(i)) {
        if (seen.test(i)) continue;
        SubgraphMask comp =
            connected_component_of(g, core, {Layer::Upper, static_cast<std::uint32_t>(i)});
        seen |= comp.alive_upper;
        components.push_back(std::move(comp));
    }
    return components;
}

}  // namespace abcs
