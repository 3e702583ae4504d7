#include "abcs/search.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>
#include <string>

namespace abcs {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Basic: return "basic";
        case Algorithm::BasicPlus: return "basic+";
        case Algorithm::Inc: return "inc";
        case Algorithm::Dec: return "dec";
        case Algorithm::Oracle: return "oracle";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    if (name == "basic") return Algorithm::Basic;
    if (name == "basic+") return Algorithm::BasicPlus;
    if (name == "inc") return Algorithm::Inc;
    if (name == "dec") return Algorithm::Dec;
    if (name == "oracle") return Algorithm::Oracle;
    return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

void validate_spec(const AttributedBipartiteGraph& g, const QuerySpec& spec) {
    if (spec.q.layer != Layer::Upper)
        throw std::invalid_argument("query vertex must be in the upper layer");
    if (spec.q.index >= g.upper_count())
        throw std::invalid_argument("query vertex index out of range");
    if (spec.params.alpha < 1 || spec.params.beta < 1)
        throw std::invalid_argument("alpha and beta must be >= 1");
    if (spec.s.empty()) throw std::invalid_argument("query keyword set S is empty");
    if (!std::is_sorted(spec.s.begin(), spec.s.end()) ||
        std::adjacent_find(spec.s.begin(), spec.s.end()) != spec.s.end())
        throw std::invalid_argument("query keyword set S must be sorted and duplicate-free");
    for (const auto k : spec.s)
        if (!g.has_keywords(spec.q, {&k, 1}))
            throw std::invalid_argument("keyword '" + g.keyword_table().word(k) +
                                        "' is not in the query vertex's keyword set");
}

SubgraphMask support_mask(const AttributedBipartiteGraph& g,
                          const std::vector<std::uint32_t>& upper,
                          const std::vector<std::uint32_t>& lower) {
    SubgraphMask m = SubgraphMask::none(g);
    for (const auto u : upper) m.alive_upper.set(u);
    for (const auto v : lower) m.alive_lower.set(v);
    return m;
}

// Full verification: keyword filter, q's component, then peel.
PeelResult verify_full(const AttributedBipartiteGraph& g, VertexRef q, CoreParams params,
                       const KeywordSet& su, const KeywordSet& sv, QueryStats& stats,
                       const Deadline& deadline) {
    check_deadline(deadline);
    ++stats.candidates_verified;
    const SubgraphMask filtered = keyword_filtered_mask(g, su, sv);
    if (!filtered.alive(q)) return PeelResult{SubgraphMask::none(g), 0, 0, false};
    const SubgraphMask component = connected_component_of(g, filtered, q);
    ++stats.peels_run;
    return peel_community(g, component, q, params);
}

// Scoped verification: the caller guarantees every scope vertex contains the
// candidate's keywords and that the community (if any) lies inside the scope,
// which makes peeling inside it exact.
PeelResult verify_scoped(const AttributedBipartiteGraph& g, VertexRef q, CoreParams params,
                         const SubgraphMask& scope, [[maybe_unused]] const CandidatePair& pair,
                         QueryStats& stats, const Deadline& deadline) {
    check_deadline(deadline);
    ++stats.candidates_verified;
    if (!scope.alive(q)) return PeelResult{SubgraphMask::none(g), 0, 0, false};
    const SubgraphMask component = connected_component_of(g, scope, q);
    ++stats.peels_run;
    PeelResult r = peel_community(g, component, q, params);
#ifndef NDEBUG
    if (r.exists) {
        for (const Layer layer : {Layer::Upper, Layer::Lower}) {
            const auto& need = layer == Layer::Upper ? pair.upper_set : pair.lower_set;
            const auto& bits = r.mask.layer_bits(layer);
            for (auto i = bits.find_first(); i != boost::dynamic_bitset<>::npos;
                 i = bits.find_next(i))
                assert(g.has_keywords({layer, static_cast<std::uint32_t>(i)}, need));
        }
    }
#endif
    return r;
}

// Running set of maximum-size qualified pairs with their community masks.
struct BestSet {
    std::uint32_t best_size{0};
    std::vector<std::pair<CandidatePair, SubgraphMask>> entries;

    void offer(const CandidatePair& pair, const SubgraphMask& mask) {
        const auto sz = pair.size();
        if (sz < best_size) return;
        if (sz > best_size) {
            best_size = sz;
            entries.clear();
        }
        entries.emplace_back(pair, mask);
    }
};

std::vector<std::uint32_t> mask_indices(const boost::dynamic_bitset<>& bits) {
    std::vector<std::uint32_t> out;
    out.reserve(bits.count());
    for (auto i = bits.find_first(); i != boost::dynamic_bitset<>::npos; i = bits.find_next(i))
        out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

KeywordSet intersect_sets(const KeywordSet& a, std::span<const KeywordId> b) {
    KeywordSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

CommunityResult make_result(const AttributedBipartiteGraph& g, const KeywordSet& s,
                            const CandidatePair& pair, const SubgraphMask& mask) {
    CommunityResult r;
    r.pair = pair;
    r.upper_vertices = mask_indices(mask.alive_upper);
    r.lower_vertices = mask_indices(mask.alive_lower);
    bool first = true;
    for (const auto u : r.upper_vertices) {
        const auto kw = g.keywords({Layer::Upper, u});
        r.shared_upper = first ? intersect_sets(s, kw) : intersect_sets(r.shared_upper, kw);
        first = false;
    }
    first = true;
    for (const auto v : r.lower_vertices) {
        const auto kw = g.keywords({Layer::Lower, v});
        r.shared_lower = first ? KeywordSet(kw.begin(), kw.end())
                               : intersect_sets(r.shared_lower, kw);
        first = false;
    }
    // At maximum size the shared sets cannot exceed the pair (a strictly
    // larger qualified pair would exist otherwise), so they match exactly.
    assert(r.shared_upper == pair.upper_set);
    assert(r.shared_lower == pair.lower_set);
    return r;
}

QueryResult finalize(const AttributedBipartiteGraph& g, const QuerySpec& spec, BestSet&& best,
                     QueryStats stats, Clock::time_point start) {
    QueryResult out;
    std::sort(best.entries.begin(), best.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.communities.reserve(best.entries.size());
    for (const auto& [pair, mask] : best.entries)
        out.communities.push_back(make_result(g, spec.s, pair, mask));
    if (out.communities.empty() && !stats.timed_out) {
        ++stats.peels_run;
        const PeelResult plain =
            peel_community(g, SubgraphMask::all_alive(g), spec.q, spec.params);
        if (plain.exists)
            out.plain_community = PlainCommunity{mask_indices(plain.mask.alive_upper),
                                                 mask_indices(plain.mask.alive_lower)};
    }
    stats.elapsed =
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    out.stats = std::move(stats);
    return out;
}

QueryResult timed_out_result(const AttributedBipartiteGraph& g, const QuerySpec& spec,
                             QueryStats stats, Clock::time_point start) {
    stats.timed_out = true;
    BestSet none;
    return finalize(g, spec, std::move(none), std::move(stats), start);
}

}  // namespace

QueryResult run_basic(const AttributedBipartiteGraph& g, const QuerySpec& spec,
                      Deadline deadline) {
    validate_spec(g, spec);
    const auto start = Clock::now();
    QueryStats stats;
    stats.algorithm = Algorithm::Basic;
    try {
        const auto psi = enumerate_upper_subsets(spec.s);
        const auto phi = collect_lower_candidates(g, LowerScope::AllLower, SubsetMode::AllSubsets,
                                                  std::nullopt, 20, std::size_t{1} << 22,
                                                  deadline);
        stats.candidates_generated =
            static_cast<std::uint64_t>(psi.size()) * static_cast<std::uint64_t>(phi.size());
        BestSet best;
        for (const auto& su : psi) {
            for (const auto& sv : phi) {
                const PeelResult r = verify_full(g, spec.q, spec.params, su, sv, stats, deadline);
                if (r.exists) best.offer({su, sv}, r.mask);
            }
        }
        return finalize(g, spec, std::move(best), std::move(stats), start);
    } catch (const DeadlineExceeded&) {
        return timed_out_result(g, spec, std::move(stats), start);
    }
}

QueryResult run_basic_plus(const AttributedBipartiteGraph& g, const QuerySpec& spec,
                           Deadline deadline) {
    validate_spec(g, spec);
    const auto start = Clock::now();
    QueryStats stats;
    stats.algorithm = Algorithm::BasicPlus;
    try {
        const auto psi = enumerate_upper_subsets(spec.s);
        const auto phi =
            collect_lower_candidates(g, LowerScope::NeighborsOfQ, SubsetMode::AllSubsets, spec.q,
                                     20, std::size_t{1} << 22, deadline);
        const SupportIndex index =
            prune_by_support(build_support(g, psi, phi, deadline), spec.params);
        stats.candidates_generated = static_cast<std::uint64_t>(index.upper_sets.size()) *
                                     static_cast<std::uint64_t>(index.lower_sets.size());
        BestSet best;
        for (std::size_t i = 0; i < index.upper_sets.size(); ++i) {
            for (std::size_t j = 0; j < index.lower_sets.size(); ++j) {
                const CandidatePair pair{index.upper_sets[i], index.lower_sets[j]};
                const SubgraphMask scope =
                    support_mask(g, index.upper_support[i], index.lower_support[j]);
                const PeelResult r =
                    verify_scoped(g, spec.q, spec.params, scope, pair, stats, deadline);
                if (r.exists) best.offer(pair, r.mask);
            }
        }
        return finalize(g, spec, std::move(best), std::move(stats), start);
    } catch (const DeadlineExceeded&) {
        return timed_out_result(g, spec, std::move(stats), start);
    }
}

namespace {

void record_level(IncTrace* trace, const QualifiedLevel& level) {
    if (!trace) return;
    std::vector<CandidatePair> pairs;
    pairs.reserve(level.entries.size());
    for (const auto& entry : level.entries) pairs.push_back(entry.pair);
    std::sort(pairs.begin(), pairs.end());
    trace->levels.push_back(std::move(pairs));
}

}  // namespace

QueryResult run_inc(const AttributedBipartiteGraph& g, const QuerySpec& spec, Deadline deadline,
                    IncTrace* trace) {
    validate_spec(g, spec);
    const auto start = Clock::now();
    QueryStats stats;
    stats.algorithm = Algorithm::Inc;
    try {
        std::vector<KeywordSet> psi;
        for (const auto k : spec.s) psi.push_back({k});
        const auto phi = collect_lower_candidates(g, LowerScope::NeighborsOfQ,
                                                  SubsetMode::Singletons, spec.q, 20,
                                                  std::size_t{1} << 22, deadline);
        const SupportIndex index =
            prune_by_support(build_support(g, psi, phi, deadline), spec.params);

        std::set<CandidatePair> visited;
        QualifiedLevel current{0, {}};
        for (std::size_t i = 0; i < index.upper_sets.size(); ++i) {
            for (std::size_t j = 0; j < index.lower_sets.size(); ++j) {
                const CandidatePair pair{index.upper_sets[i], index.lower_sets[j]};
                visited.insert(pair);
                ++stats.candidates_generated;
                const SubgraphMask scope =
                    support_mask(g, index.upper_support[i], index.lower_support[j]);
                PeelResult r = verify_scoped(g, spec.q, spec.params, scope, pair, stats, deadline);
                if (r.exists) current.entries.push_back({pair, std::move(r)});
            }
        }

        record_level(trace, current);
        QualifiedLevel last_nonempty = current;
        while (!current.entries.empty()) {
            QualifiedLevel next{current.level + 1, {}};
            for (auto& cand : combine_level(current, deadline)) {
                if (!visited.insert(cand.pair).second) continue;
                ++stats.candidates_generated;
                PeelResult r =
                    verify_scoped(g, spec.q, spec.params, cand.scope, cand.pair, stats, deadline);
                if (r.exists) next.entries.push_back({cand.pair, std::move(r)});
            }
            if (!next.entries.empty()) {
                record_level(trace, next);
                last_nonempty = next;
            }
            current = std::move(next);
        }

        BestSet best;
        for (const auto& entry : last_nonempty.entries)
            best.offer(entry.pair, entry.community.mask);
        return finalize(g, spec, std::move(best), std::move(stats), start);
    } catch (const DeadlineExceeded&) {
        return timed_out_result(g, spec, std::move(stats), start);
    }
}

QueryResult run_dec(const AttributedBipartiteGraph& g, const QuerySpec& spec, Deadline deadline) {
    validate_spec(g, spec);
    const auto start = Clock::now();
    QueryStats stats;
    stats.algorithm = Algorithm::Dec;
    try {
        const auto psi = enumerate_upper_subsets(spec.s);
        const auto phi =
            collect_lower_candidates(g, LowerScope::NeighborsOfQ, SubsetMode::AllSubsets, spec.q,
                                     20, std::size_t{1} << 22, deadline);
        const SupportIndex index =
            prune_by_support(build_support(g, psi, phi, deadline), spec.params);
        stats.candidates_generated = static_cast<std::uint64_t>(index.upper_sets.size()) *
                                     static_cast<std::uint64_t>(index.lower_sets.size());

        // Bucket candidate indices by set size so the descending-size sweep
        // never materializes the sorted cross product.
        std::size_t max_upper = 0, max_lower = 0;
        for (const auto& s : index.upper_sets) max_upper = std::max(max_upper, s.size());
        for (const auto& s : index.lower_sets) max_lower = std::max(max_lower, s.size());
        std::vector<std::vector<std::size_t>> upper_by_size(max_upper + 1);
        std::vector<std::vector<std::size_t>> lower_by_size(max_lower + 1);
        for (std::size_t i = 0; i < index.upper_sets.size(); ++i)
            upper_by_size[index.upper_sets[i].size()].push_back(i);
        for (std::size_t j = 0; j < index.lower_sets.size(); ++j)
            lower_by_size[index.lower_sets[j].size()].push_back(j);

        BestSet best;
        for (std::size_t total = max_upper + max_lower; total >= 2; --total) {
            for (std::size_t a = std::min(max_upper, total - 1); a >= 1; --a) {
                const std::size_t b = total - a;
                if (b < 1 || b > max_lower) continue;
                for (const auto i : upper_by_size[a]) {
                    for (const auto j : lower_by_size[b]) {
                        const CandidatePair pair{index.upper_sets[i], index.lower_sets[j]};
                        const SubgraphMask scope =
                            support_mask(g, index.upper_support[i], index.lower_support[j]);
                        const PeelResult r =
                            verify_scoped(g, spec.q, spec.params, scope, pair, stats, deadline);
                        if (r.exists) best.offer(pair, r.mask);
                    }
                }
            }
            // Everything after this point is strictly smaller; the first size
            // with any qualified pair is the maximum.
            if (!best.entries.empty()) break;
        }
        return finalize(g, spec, std::move(best), std::move(stats), start);
    } catch (const DeadlineExceeded&) {
        return timed_out_result(g, spec, std::move(stats), start);
    }
}

namespace {

QueryResult run_oracle_impl(const AttributedBipartiteGraph& g, const QuerySpec& spec) {
    validate_spec(g, spec);
    const auto start = Clock::now();
    QueryStats stats;
    stats.algorithm = Algorithm::Oracle;
    if (spec.s.size() > 10)
        throw std::runtime_error("oracle scale guard: |S| > 10");
    KeywordSet vocab;
    for (std::uint32_t v = 0; v < g.lower_count(); ++v) {
        const auto kws = g.keywords({Layer::Lower, v});
        if (kws.size() > 10)
            throw std::runtime_error("oracle scale guard: lower vertex '" +
                                     g.label({Layer::Lower, v}) + "' has > 10 keywords");
        vocab.insert(vocab.end(), kws.begin(), kws.end());
    }
    std::sort(vocab.begin(), vocab.end());
    vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
    if (vocab.size() > 16)
        throw std::runtime_error("oracle scale guard: lower vocabulary > 16 distinct keywords");

    const auto psi = enumerate_upper_subsets(spec.s);
    const auto phi = vocab.empty() ? std::vector<KeywordSet>{}
                                   : enumerate_upper_subsets(vocab, 16);
    stats.candidates_generated =
        static_cast<std::uint64_t>(psi.size()) * static_cast<std::uint64_t>(phi.size());
    BestSet best;
    for (const auto& su : psi) {
        for (const auto& sv : phi) {
            const PeelResult r =
                verify_full(g, spec.q, spec.params, su, sv, stats, std::nullopt);
            if (r.exists) best.offer({su, sv}, r.mask);
        }
    }
    return finalize(g, spec, std::move(best), std::move(stats), start);
}

}  // namespace

std::vector<CommunityResult> run_oracle(const AttributedBipartiteGraph& g,
                                        const QuerySpec& spec) {
    return run_oracle_impl(g, spec).communities;
}

QueryResult run_query(const AttributedBipartiteGraph& g, const QuerySpec& spec,
                      Deadline deadline) {
    switch (spec.algorithm) {
        case Algorithm::Basic: return run_basic(g, spec, deadline);
        case Algorithm::BasicPlus: return run_basic_plus(g, spec, deadline);
        case Algorithm::Inc: return run_inc(g, spec, deadline);
        case Algorithm::Dec: return run_dec(g, spec, deadline);
        case Algorithm::Oracle: return run_oracle_impl(g, spec);
    }
    throw std::logic_error("run_query: unknown algorithm");
}

}  // namespace abcs
