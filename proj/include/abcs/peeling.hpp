#pragma once

#include <cstdint>
#include <vector>

#include "abcs/graph.hpp"

namespace abcs {

struct CoreParams {
    std::uint32_t alpha{1};  // minimum degree for upper vertices
    std::uint32_t beta{1};   // minimum degree for lower vertices

    std::uint32_t threshold(Layer l) const { return l == Layer::Upper ? alpha : beta; }
    friend bool operator==(const CoreParams&, const CoreParams&) = default;
};

struct PeelResult {
    SubgraphMask mask;
    std::uint32_t upper_size{0};
    std::uint32_t lower_size{0};
    bool exists{false};  // false iff q was peeled away (or dead on entry)
};

// Restrict `scope` to its maximal subgraph where every upper vertex has degree
// >= alpha and every lower vertex degree >= beta (cascading deletions), i.e.
// the (alpha,beta)-core of the masked subgraph. Deletion order does not change
// the fixed point.
SubgraphMask peel_to_core(const AttributedBipartiteGraph& g, const SubgraphMask& scope,
                          CoreParams params);

// The community of q inside `scope`: peel to the core, then keep q's connected
// component. Returns exists=false with an empty mask as soon as q is deleted.
PeelResult peel_community(const AttributedBipartiteGraph& g, const SubgraphMask& scope,
                          VertexRef q, CoreParams params);

// Connected components of the whole graph's (alpha,beta)-core, each as a mask,
// ordered by their smallest upper vertex (components without upper vertices
// cannot occur for alpha,beta >= 1).
std::vector<SubgraphMask> core_decompose(const AttributedBipartiteGraph& g, CoreParams params);

}  // namespace abcs
