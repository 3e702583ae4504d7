#include "abcs/candidates.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace abcs {

namespace {

// Nonempty subsets of a sorted base set, appended to `out` (or deduplicated
// into `sink` when given). Base stays sorted, so each subset is sorted too.
template <typename Emit>
void emit_nonempty_subsets(std::span<const KeywordId> base, Emit&& emit) {
    if (base.size() > 31)
        throw std::invalid_argument("subset enumeration over more than 31 keywords");
    const std::uint32_t n = static_cast<std::uint32_t>(base.size());
    for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
        KeywordSet subset;
        subset.reserve(static_cast<std::size_t>(std::popcount(bits)));
        for (std::uint32_t i = 0; i < n; ++i)
            if (bits & (1u << i)) subset.push_back(base[i]);
        emit(std::move(subset));
    }
}

}  // namespace

std::vector<KeywordSet> enumerate_upper_subsets(std::span<const KeywordId> s, std::size_t cap) {
    if (s.size() > cap)
        throw std::invalid_argument("enumerate_upper_subsets: |S|=" + std::to_string(s.size()) +
                                    " exceeds the cap of " + std::to_string(cap) +
                                    "; reduce the query keyword set");
    KeywordSet base(s.begin(), s.end());
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    std::vector<KeywordSet> out;
    out.reserve((std::size_t{1} << base.size()) - 1);
    emit_nonempty_subsets(base, [&](KeywordSet&& subset) { out.push_back(std::move(subset)); });
    std::sort(out.begin(), out.end(), SizeLexLess{});
    return out;
}

std::vector<KeywordSet> collect_lower_candidates(const AttributedBipartiteGraph& g,
                                                 LowerScope scope, SubsetMode mode,
                                                 std::optional<VertexRef> q,
                                                 std::size_t per_vertex_cap,
                                                 std::size_t total_cap, Deadline deadline) {
    std::vector<std::uint32_t> in_scope;
    if (scope == LowerScope::NeighborsOfQ) {
        if (!q || q->layer != Layer::Upper)
            throw std::invalid_argument("collect_lower_candidates: NeighborsOfQ needs an upper q");
        const auto nbrs = g.neighbors(*q);
        in_scope.assign(nbrs.begin(), nbrs.end());
    } else {
        in_scope.resize(g.lower_count());
        for (std::uint32_t v = 0; v < g.lower_count(); ++v) in_scope[v] = v;
    }

    std::set<KeywordSet> distinct;
    std::size_t polled = 0;
    for (const auto v : in_scope) {
        const VertexRef ref{Layer::Lower, v};
        const auto kws = g.keywords(ref);
        if (mode == SubsetMode::Singletons) {
            for (const auto k : kws) distinct.insert(KeywordSet{k});
            continue;
        }
        if (kws.size() > per_vertex_cap)
            throw std::invalid_argument("collect_lower_candidates: vertex '" + g.label(ref) +
                                        "' has " + std::to_string(kws.size()) +
                                        " keywords, above the subset cap of " +
                                        std::to_string(per_vertex_cap));
        emit_nonempty_subsets(kws, [&](KeywordSet&& subset) {
            distinct.insert(std::move(subset));
            if ((++polled & 0xfff) == 0) {
                check_deadline(deadline);
                if (distinct.size() > total_cap)
                    throw std::runtime_error(
                        "collect_lower_candidates: candidate count exceeds " +
                        std::to_string(total_cap) + "; query infeasible at this scale");
            }
        });
    }
    std::vector<KeywordSet> out(std::make_move_iterator(distinct.begin()),
                                std::make_move_iterator(distinct.end()));
    std::sort(out.begin(), out.end(), SizeLexLess{});
    return out;
}

namespace {

std::vector<std::uint32_t> containment_list(const AttributedBipartiteGraph& g, Layer layer,
                                            const KeywordSet& set) {
    // Scan the smallest posting among the set's keywords; every vertex
    // containing the whole set appears in each posting.
    std::span<const std::uint32_t> seed = g.posting(layer, set.front());
    for (std::size_t i = 1; i < set.size(); ++i) {
        const auto p = g.posting(layer, set[i]);
        if (p.size() < seed.size()) seed = p;
    }
    std::vector<std::uint32_t> out;
    for (const auto v : seed)
        if (g.has_keywords({layer, v}, set)) out.push_back(v);
    return out;
}

}  // namespace

const std::vector<std::uint32_t>* SupportIndex::find(Layer layer, const KeywordSet& set) const {
    const auto& sets = layer == Layer::Upper ? upper_sets : lower_sets;
    const auto& supports = layer == Layer::Upper ? upper_support : lower_support;
    const auto it = std::lower_bound(sets.begin(), sets.end(), set, SizeLexLess{});
    if (it == sets.end() || *it != set) return nullptr;
    return &supports[static_cast<std::size_t>(it - sets.begin())];
}

SupportIndex build_support(const AttributedBipartiteGraph& g,
                           std::span<const KeywordSet> upper_cands,
                           std::span<const KeywordSet> lower_cands, Deadline deadline) {
    SupportIndex index;
    index.upper_sets.assign(upper_cands.begin(), upper_cands.end());
    index.lower_sets.assign(lower_cands.begin(), lower_cands.end());
    for (const Layer layer : {Layer::Upper, Layer::Lower}) {
        auto& sets = layer == Layer::Upper ? index.upper_sets : index.lower_sets;
        auto& supports = layer == Layer::Upper ? index.upper_support : index.lower_support;
        supports.reserve(sets.size());
        std::size_t polled = 0;
        for (const auto& set : sets) {
            supports.push_back(containment_list(g, layer, set));
            if ((++polled & 0x3f) == 0) check_deadline(deadline);
        }
    }
    return index;
}

SupportIndex prune_by_support(SupportIndex index, CoreParams params) {
    const std::size_t need[2] = {params.beta, params.alpha};  // upper needs beta peers
    for (const Layer layer : {Layer::Upper, Layer::Lower}) {
        const int s = static_cast<int>(layer);
        auto& sets = layer == Layer::Upper ? index.upper_sets : index.lower_sets;
        auto& supports = layer == Layer::Upper ? index.upper_support : index.lower_support;
        std::size_t kept = 0;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (supports[i].size() < need[s]) continue;
            if (kept != i) {
                sets[kept] = std::move(sets[i]);
                supports[kept] = std::move(supports[i]);
            }
            ++kept;
        }
        sets.resize(kept);
        supports.resize(kept);
    }
    return index;
}

std::vector<ScopedCandidate> combine_level(const QualifiedLevel& level, Deadline deadline) {
    std::map<CandidatePair, SubgraphMask> merged;
    const auto& entries = level.entries;
    std::size_t polled = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            if ((++polled & 0xff) == 0) check_deadline(deadline);
            const auto& a = entries[i].pair;
            const auto& b = entries[j].pair;
            CandidatePair u;
            std::set_union(a.upper_set.begin(), a.upper_set.end(), b.upper_set.begin(),
                           b.upper_set.end(), std::back_inserter(u.upper_set));
            std::set_union(a.lower_set.begin(), a.lower_set.end(), b.lower_set.begin(),
                           b.lower_set.end(), std::back_inserter(u.lower_set));
            if (u.size() != a.size() + 1) continue;  // grow by exactly one keyword
            SubgraphMask scope =
                intersect(entries[i].community.mask, entries[j].community.mask);
            if (auto it = merged.find(u); it != merged.end())
                it->second = intersect(it->second, scope);
            else
                merged.emplace(std::move(u), std::move(scope));
        }
    }
    std::vector<ScopedCandidate> out;
    out.reserve(merged.size());
    for (auto& [pair, scope] : merged)
        out.push_back({pair, std::move(scope)});
    return out;
}

}  // namespace abcs
