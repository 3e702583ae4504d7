#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "abcs/graph.hpp"
#include "abcs/peeling.hpp"

namespace abcs {

using KeywordSet = std::vector<KeywordId>;  // always sorted, duplicate-free

// Cooperative time budget: long-running loops poll it and bail out by throwing
// DeadlineExceeded, which the query drivers turn into a timed-out result.
using Deadline = std::optional<std::chrono::steady_clock::time_point>;
struct DeadlineExceeded {};

inline void check_deadline(const Deadline& d) {
    if (d && std::chrono::steady_clock::now() > *d) throw DeadlineExceeded{};
}

// A candidate keyword pair {S_u, S_v}. Comparison is lexicographic on
// (upper_set, lower_set), the canonical order for result output and dedup.
struct CandidatePair {
    KeywordSet upper_set;
    KeywordSet lower_set;

    std::uint32_t size() const {
        return static_cast<std::uint32_t>(upper_set.size() + lower_set.size());
    }
    friend bool operator==(const CandidatePair&, const CandidatePair&) = default;
    friend auto operator<=>(const CandidatePair&, const CandidatePair&) = default;
};

// Candidate lists are enumerated by size first, then lexicographic id order.
struct SizeLexLess {
    bool operator()(const KeywordSet& a, const KeywordSet& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// All 2^|S|-1 nonempty subsets of S, in size-then-lex order. The cap bounds
// the exponential blowup; exceeding it is a hard error.
std::vector<KeywordSet> enumerate_upper_subsets(std::span<const KeywordId> s,
                                                std::size_t cap = 20);

enum class LowerScope { AllLower, NeighborsOfQ };
enum class SubsetMode { Singletons, AllSubsets };

// Union over in-scope lower vertices of their keyword singletons or of all
// nonempty subsets of their keyword sets, deduplicated, size-then-lex order.
// per_vertex_cap bounds |W_V(v)| before subset expansion (error names the
// vertex); total_cap bounds the number of distinct sets produced.
std::vector<KeywordSet> collect_lower_candidates(const AttributedBipartiteGraph& g,
                                                 LowerScope scope, SubsetMode mode,
                                                 std::optional<VertexRef> q = std::nullopt,
                                                 std::size_t per_vertex_cap = 20,
                                                 std::size_t total_cap = std::size_t{1} << 22,
                                                 Deadline deadline = std::nullopt);

// Candidate keyword sets with their support lists: for each upper candidate
// S_u the upper vertices containing it (P_i), for each lower candidate S_v the
// lower vertices containing it (Q_j). Sets stay in size-then-lex order.
struct SupportIndex {
    std::vector<KeywordSet> upper_sets;
    std::vector<std::vector<std::uint32_t>> upper_support;
    std::vector<KeywordSet> lower_sets;
    std::vector<std::vector<std::uint32_t>> lower_support;

    // nullptr if the set is not (or no longer) a candidate.
    const std::vector<std::uint32_t>* find(Layer layer, const KeywordSet& set) const;
};

SupportIndex build_support(const AttributedBipartiteGraph& g,
                           std::span<const KeywordSet> upper_cands,
                           std::span<const KeywordSet> lower_cands,
                           Deadline deadline = std::nullopt);

// Keep upper candidates with |P_i| >= beta and lower candidates with
// |Q_j| >= alpha. A community needs beta upper vertices all containing S_u
// (any lower member has beta such neighbors) and alpha lower vertices
// containing S_v (q has alpha such neighbors), so removal is lossless.
SupportIndex prune_by_support(SupportIndex index, CoreParams params);

// One level of the ascending lattice walk: qualified pairs of one size with
// their verified communities.
struct QualifiedEntry {
    CandidatePair pair;
    PeelResult community;
};
struct QualifiedLevel {
    int level{0};  // pairs in this level have size == level + 2
    std::vector<QualifiedEntry> entries;
};

// A candidate plus the mask it may be verified in (scope contains the
// candidate's community whenever one exists, so scoped peeling is exact).
struct ScopedCandidate {
    CandidatePair pair;
    SubgraphMask scope;
};

// All pairwise unions of same-level entries whose size grows by exactly one,
// deduplicated; the scope is the intersection of all contributing parents'
// community masks. Output in canonical pair order.
std::vector<ScopedCandidate> combine_level(const QualifiedLevel& level,
                                           Deadline deadline = std::nullopt);

}  // namespace abcs
