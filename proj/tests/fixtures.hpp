#pragma once

// Shared test fixtures: hand-checked graphs with known cores and communities,
// seeded random-graph corpora, and small filesystem helpers. Everything is
// header-only and deterministic.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unistd.h>
#include <vector>

#include "abcs/candidates.hpp"
#include "abcs/graph.hpp"
#include "abcs/ingest.hpp"
#include "abcs/rng.hpp"
#include "abcs/search.hpp"

namespace testfx {

using namespace abcs;

// --- lookup helpers -------------------------------------------------------

inline KeywordId kw(const AttributedBipartiteGraph& g, std::string_view word) {
    const auto id = g.keyword_table().find(word);
    if (!id) throw std::runtime_error("fixture keyword missing: " + std::string(word));
    return *id;
}

inline KeywordSet kws(const AttributedBipartiteGraph& g,
                      std::initializer_list<std::string_view> words) {
    KeywordSet out;
    for (const auto w : words) out.push_back(kw(g, w));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::uint32_t vertex(const AttributedBipartiteGraph& g, Layer layer,
                            std::string_view label) {
    const auto v = g.find_label(layer, label);
    if (!v) throw std::runtime_error("fixture vertex missing: " + std::string(label));
    return v->index;
}

inline std::uint32_t uid(const AttributedBipartiteGraph& g, std::string_view label) {
    return vertex(g, Layer::Upper, label);
}

inline std::uint32_t lid(const AttributedBipartiteGraph& g, std::string_view label) {
    return vertex(g, Layer::Lower, label);
}

inline std::vector<std::uint32_t> vertices(const AttributedBipartiteGraph& g, Layer layer,
                                           std::initializer_list<std::string_view> labels) {
    std::vector<std::uint32_t> out;
    for (const auto l : labels) out.push_back(vertex(g, layer, l));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> labels_of(const AttributedBipartiteGraph& g, Layer layer,
                                          const std::vector<std::uint32_t>& idx) {
    std::vector<std::string> out;
    for (const auto i : idx) out.push_back(g.label({layer, i}));
    return out;
}

inline std::vector<std::string> words_of(const AttributedBipartiteGraph& g,
                                         const KeywordSet& set) {
    std::vector<std::string> out;
    for (const auto k : set) out.push_back(g.keyword_table().word(k));
    return out;
}

inline QuerySpec make_spec(const AttributedBipartiteGraph& g, std::string_view q_label,
                           std::uint32_t alpha, std::uint32_t beta,
                           std::initializer_list<std::string_view> s,
                           Algorithm algorithm = Algorithm::Dec) {
    QuerySpec spec;
    spec.q = {Layer::Upper, uid(g, q_label)};
    spec.params = {alpha, beta};
    spec.s = kws(g, s);
    spec.algorithm = algorithm;
    return spec;
}

// --- hand-checked graphs ---------------------------------------------------

// Small 6x5 graph with fully hand-checked structure. Facts used across suites:
//   (1,1)-core components: {A,B,C,D,E} x {F,G,H,I} and {J} x {K}
//   (2,2)-core: {A,C,D,E} x {G,H,I}, a single component
//   q=A, alpha=beta=2, S={a,b,c}:
//     qualified singleton pairs: ({b},{x}), ({b},{y}), ({c},{x}), ({c},{y})
//     unique maximum pair ({b,c},{x,y}) with community {A,C} x {G,H}
inline AttributedBipartiteGraph small_graph() {
    GraphBuilder b;
    const auto add = [&b](Layer layer, std::string_view label,
                          std::initializer_list<std::string_view> words) {
        const auto i = b.ensure_vertex(layer, label);
        for (const auto w : words) b.add_keyword({layer, i}, w);
    };
    add(Layer::Upper, "A", {"a", "b", "c"});
    add(Layer::Upper, "B", {"a"});
    add(Layer::Upper, "C", {"b", "c"});
    add(Layer::Upper, "D", {"c"});
    add(Layer::Upper, "E", {"b"});
    add(Layer::Upper, "J", {"a", "b"});
    add(Layer::Lower, "F", {"z"});
    add(Layer::Lower, "G", {"w", "x", "y"});
    add(Layer::Lower, "H", {"x", "y", "z"});
    add(Layer::Lower, "I", {"y", "z"});
    add(Layer::Lower, "K", {"w", "z"});
    for (const auto& [u, v] :
         {std::pair{"A", "G"}, {"A", "H"}, {"B", "F"}, {"B", "G"}, {"C", "G"}, {"C", "H"},
          {"D", "H"}, {"D", "I"}, {"E", "G"}, {"E", "I"}, {"J", "K"}})
        b.add_edge_labels(u, v);
    return std::move(b).build();
}

// Star around Q whose five neighbors carry overlapping keyword sets. With
// alpha=3, the lower candidate sets contained by at least three neighbors are
// exactly {x}, {y}, {z}, {x,y} (hand-counted: x,y,z and {x,y} appear three
// times each, every other subset at most twice).
inline AttributedBipartiteGraph support_prune_graph() {
    GraphBuilder b;
    const auto q = b.ensure_vertex(Layer::Upper, "Q");
    b.add_keyword({Layer::Upper, q}, "s");
    const std::vector<std::vector<std::string_view>> neighbor_sets = {
        {"x", "y"}, {"x", "y"}, {"x", "y", "z"}, {"z"}, {"w", "z"}};
    for (std::size_t i = 0; i < neighbor_sets.size(); ++i) {
        const auto v = b.ensure_vertex(Layer::Lower, "n" + std::to_string(i + 1));
        for (const auto w : neighbor_sets[i]) b.add_keyword({Layer::Lower, v}, w);
        b.add_edge(q, v);
    }
    return std::move(b).build();
}

// Complete 2x4 graph where two distinct pairs tie at the maximum size 3:
// ({a,b},{x}) with lowers {v1,v2} and ({a,b},{y}) with lowers {v3,v4}.
inline AttributedBipartiteGraph two_result_graph() {
    GraphBuilder b;
    for (const auto u : {"q", "u2"}) {
        const auto i = b.ensure_vertex(Layer::Upper, u);
        b.add_keyword({Layer::Upper, i}, "a");
        b.add_keyword({Layer::Upper, i}, "b");
    }
    for (const auto& [v, w] : {std::pair{"v1", "x"}, {"v2", "x"}, {"v3", "y"}, {"v4", "y"}}) {
        const auto j = b.ensure_vertex(Layer::Lower, v);
        b.add_keyword({Layer::Lower, j}, w);
    }
    for (std::uint32_t i = 0; i < 2; ++i)
        for (std::uint32_t j = 0; j < 4; ++j) b.add_edge(i, j);
    return std::move(b).build();
}

inline AttributedBipartiteGraph southern_women() {
    const std::string dir = ABCS_DATA_DIR;
    return load_graph(dir + "/southern-women.edges", dir + "/southern-women.attrs-u.tsv",
                      dir + "/southern-women.attrs-v.tsv");
}

// --- random corpus ----------------------------------------------------------

// Random attributed bipartite graph at oracle scale: 2..20 vertices per layer,
// uniform edge probability in [0.15, 0.35], 1..4 keywords per vertex drawn
// from a 6-word per-layer vocabulary.
inline AttributedBipartiteGraph random_graph(std::uint64_t seed) {
    std::mt19937_64 rng(mix_seed(seed, 0xC0FFEEULL));
    GraphBuilder b;
    const auto nu = static_cast<std::uint32_t>(2 + uniform_below(rng, 19));
    const auto nv = static_cast<std::uint32_t>(2 + uniform_below(rng, 19));
    const std::uint64_t p_millionths = 150000 + uniform_below(rng, 200001);
    for (std::uint32_t i = 0; i < nu; ++i) b.ensure_vertex(Layer::Upper, "u" + std::to_string(i));
    for (std::uint32_t j = 0; j < nv; ++j) b.ensure_vertex(Layer::Lower, "v" + std::to_string(j));
    for (std::uint32_t i = 0; i < nu; ++i)
        for (std::uint32_t j = 0; j < nv; ++j)
            if (uniform_below(rng, 1000000) < p_millionths) b.add_edge(i, j);
    const char* vocab[2][6] = {{"p0", "p1", "p2", "p3", "p4", "p5"},
                               {"q0", "q1", "q2", "q3", "q4", "q5"}};
    for (const Layer layer : {Layer::Upper, Layer::Lower}) {
        const int s = static_cast<int>(layer);
        for (std::uint32_t i = 0; i < b.layer_count(layer); ++i) {
            const auto count = static_cast<std::uint32_t>(1 + uniform_below(rng, 4));
            for (const auto pick : sample_indices(rng, 6, count))
                b.add_keyword({layer, i}, vocab[s][pick]);
        }
    }
    return std::move(b).build();
}

// Random query against a corpus graph: uniform upper vertex, S = its full
// keyword set, alpha and beta uniform in 1..3.
inline QuerySpec random_query(const AttributedBipartiteGraph& g, std::uint64_t seed) {
    std::mt19937_64 rng(mix_seed(seed, 0x517EULL));
    QuerySpec spec;
    spec.q = {Layer::Upper, static_cast<std::uint32_t>(uniform_below(rng, g.upper_count()))};
    const auto s = g.keywords(spec.q);
    spec.s.assign(s.begin(), s.end());
    spec.params.alpha = static_cast<std::uint32_t>(1 + uniform_below(rng, 3));
    spec.params.beta = static_cast<std::uint32_t>(1 + uniform_below(rng, 3));
    return spec;
}

// --- benchmark-scale synthetic graph ----------------------------------------

// Block-structured graph for runtime-trend checks: dense bipartite blocks plus
// sparse cross-block edges, roughly 1e5 edges total. Keyword sets follow the
// roughly-ten-per-vertex synthetic convention; each block shares a handful of theme
// words per layer so deep qualified keyword pairs exist, with the remaining
// words drawn from a layer-wide filler pool.
struct TrendConfig {
    std::uint32_t blocks{50};
    std::uint32_t block_upper{40};
    std::uint32_t block_lower{40};
    double p_in{0.7};
    std::uint64_t cross_edges{44000};
    std::uint32_t themes_per_block{6};
    // Wide pool so filler words rarely co-occur: multi-filler keyword sets
    // fall below realistic support thresholds and the qualified lattice stays
    // the planted theme cube.
    std::uint32_t filler_pool{3000};
    // Floor high enough that every query's subset space is substantial: the
    // exhaustive verifiers' cost tracks 2^|S|, and the runtime-ordering checks
    // need that cost to dominate their per-query constants.
    std::uint32_t min_keywords{11};
    std::uint32_t max_keywords{13};
    std::uint64_t seed{20240817};
};

inline AttributedBipartiteGraph trend_graph(const TrendConfig& cfg = {}) {
    std::mt19937_64 rng(mix_seed(cfg.seed, 0x7246ULL));
    GraphBuilder b;
    const std::uint32_t nu = cfg.blocks * cfg.block_upper;
    const std::uint32_t nv = cfg.blocks * cfg.block_lower;
    for (std::uint32_t i = 0; i < nu; ++i) b.ensure_vertex(Layer::Upper, "U" + std::to_string(i));
    for (std::uint32_t j = 0; j < nv; ++j) b.ensure_vertex(Layer::Lower, "V" + std::to_string(j));

    const auto p_scaled = static_cast<std::uint64_t>(std::llround(cfg.p_in * 1048576.0));
    for (std::uint32_t blk = 0; blk < cfg.blocks; ++blk)
        for (std::uint32_t i = 0; i < cfg.block_upper; ++i)
            for (std::uint32_t j = 0; j < cfg.block_lower; ++j)
                if (uniform_below(rng, 1048576) < p_scaled)
                    b.add_edge(blk * cfg.block_upper + i, blk * cfg.block_lower + j);
    for (std::uint64_t e = 0; e < cfg.cross_edges; ++e) {
        const auto u = static_cast<std::uint32_t>(uniform_below(rng, nu));
        const auto v = static_cast<std::uint32_t>(uniform_below(rng, nv));
        if (u / cfg.block_upper == v / cfg.block_lower) continue;  // stay cross-block
        b.add_edge(u, v);
    }

    const auto fill_layer = [&](Layer layer, std::uint32_t block_size, const char* theme_prefix,
                                const char* filler_prefix) {
        for (std::uint32_t i = 0; i < b.layer_count(layer); ++i) {
            const std::uint32_t blk = i / block_size;
            const auto count = cfg.min_keywords +
                               static_cast<std::uint32_t>(uniform_below(
                                   rng, cfg.max_keywords - cfg.min_keywords + 1));
            for (std::uint32_t t = 0; t < cfg.themes_per_block; ++t)
                b.add_keyword({layer, i}, theme_prefix + std::to_string(blk) + "_" +
                                              std::to_string(t));
            const std::uint32_t fillers = count - cfg.themes_per_block;
            for (const auto pick : sample_indices(rng, cfg.filler_pool, fillers))
                b.add_keyword({layer, i}, filler_prefix + std::to_string(pick));
        }
    };
    fill_layer(Layer::Upper, cfg.block_upper, "tu", "fu");
    fill_layer(Layer::Lower, cfg.block_lower, "tv", "fv");
    return std::move(b).build();
}

// --- filesystem helpers ------------------------------------------------------

class TempDir {
  public:
    TempDir() {
        static std::atomic<std::uint64_t> counter{0};
        const auto n = counter.fetch_add(1);
        dir_ = std::filesystem::temp_directory_path() /
               ("abcs-test-" + std::to_string(::getpid()) + "-" + std::to_string(n));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string path(std::string_view name) const { return (dir_ / name).string(); }

    std::string write(std::string_view name, std::string_view content) const {
        const auto p = path(name);
        std::ofstream out(p, std::ios::binary);
        out << content;
        if (!out) throw std::runtime_error("cannot write " + p);
        return p;
    }

    std::string read(std::string_view name) const {
        std::ifstream in(path(name), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

  private:
    std::filesystem::path dir_;
};

// Serialize a graph into edge/attribute files inside `dir`; returns the paths.
struct GraphFiles {
    std::string edges;
    std::string attrs_upper;
    std::string attrs_lower;
};

inline GraphFiles write_graph_files(const TempDir& dir, const AttributedBipartiteGraph& g,
                                    std::string_view stem = "graph") {
    GraphFiles files{dir.path(std::string(stem) + ".edges"),
                     dir.path(std::string(stem) + ".attrs-u.tsv"),
                     dir.path(std::string(stem) + ".attrs-v.tsv")};
    {
        std::ofstream out(files.edges, std::ios::binary);
        write_edge_list(g, out);
    }
    {
        std::ofstream out(files.attrs_upper, std::ios::binary);
        write_attributes(g, Layer::Upper, out);
    }
    {
        std::ofstream out(files.attrs_lower, std::ios::binary);
        write_attributes(g, Layer::Lower, out);
    }
    return files;
}

}  // namespace testfx
