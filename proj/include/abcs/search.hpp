#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "abcs/candidates.hpp"
#include "abcs/graph.hpp"
#include "abcs/peeling.hpp"

namespace abcs {

enum class Algorithm { Basic, BasicPlus, Inc, Dec, Oracle };

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct QuerySpec {
    VertexRef q{Layer::Upper, 0};  // always an upper vertex
    CoreParams params;
    KeywordSet s;  // sorted; must be a subset of q's keyword set
    Algorithm algorithm{Algorithm::Dec};
};

struct QueryStats {
    Algorithm algorithm{Algorithm::Dec};
    std::uint64_t candidates_generated{0};
    std::uint64_t candidates_verified{0};
    std::uint64_t peels_run{0};
    std::chrono::microseconds elapsed{0};
    bool timed_out{false};
};

// One maximum-size attributed community: the qualified pair, its vertex sets,
// and the shared keyword sets recomputed from the vertices at output time.
// For maximum-size results the recomputation reproduces the pair exactly.
struct CommunityResult {
    CandidatePair pair;
    std::vector<std::uint32_t> upper_vertices;  // sorted dense indices
    std::vector<std::uint32_t> lower_vertices;
    KeywordSet shared_upper;  // intersection over members of (keywords ∩ S)
    KeywordSet shared_lower;  // intersection over members of keywords

    std::uint32_t size() const {
        return static_cast<std::uint32_t>(shared_upper.size() + shared_lower.size());
    }
};

struct PlainCommunity {
    std::vector<std::uint32_t> upper_vertices;
    std::vector<std::uint32_t> lower_vertices;
};

struct QueryResult {
    std::vector<CommunityResult> communities;  // canonical pair order
    // Diagnostic when no keyword pair qualifies: the keyword-free community of
    // q at the same alpha/beta, if that much exists.
    std::optional<PlainCommunity> plain_community;
    QueryStats stats;
};

// Qualified pairs per level of the ascending walk, for inspection.
struct IncTrace {
    std::vector<std::vector<CandidatePair>> levels;
};

// The four query drivers. All return every maximum-size community, in
// canonical pair order, and identical result sets on every input; they differ
// only in candidate generation, pruning, and verification schedule. A deadline
// turns the run into an empty result with stats.timed_out set.
QueryResult run_basic(const AttributedBipartiteGraph& g, const QuerySpec& spec,
                      Deadline deadline = std::nullopt);
QueryResult run_basic_plus(const AttributedBipartiteGraph& g, const QuerySpec& spec,
                           Deadline deadline = std::nullopt);
QueryResult run_inc(const AttributedBipartiteGraph& g, const QuerySpec& spec,
                    Deadline deadline = std::nullopt, IncTrace* trace = nullptr);
QueryResult run_dec(const AttributedBipartiteGraph& g, const QuerySpec& spec,
                    Deadline deadline = std::nullopt);

// Exhaustive reference: every nonempty (subset of S) x (subset of the lower
// layer's whole vocabulary), each verified from scratch. Guarded to desk
// scale: |S| <= 10, per-vertex lower keyword sets <= 10, lower vocabulary
// <= 16 distinct words.
std::vector<CommunityResult> run_oracle(const AttributedBipartiteGraph& g,
                                        const QuerySpec& spec);

// Dispatch on spec.algorithm (Oracle gets wrapped with basic stats).
QueryResult run_query(const AttributedBipartiteGraph& g, const QuerySpec& spec,
                      Deadline deadline = std::nullopt);

}  // namespace abcs
