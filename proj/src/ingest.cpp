#include "abcs/ingest.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "abcs/rng.hpp"

namespace abcs {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_error(const std::string& name, std::size_t line_no,
                              const std::string& what) {
    throw std::runtime_error(name + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

void read_edge_list(std::istream& in, GraphBuilder& builder, const std::string& name) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty() || body.front() == '%') continue;
        std::istringstream fields{std::string(body)};
        std::string u, v;
        if (!(fields >> u >> v)) parse_error(name, line_no, "expected two vertex ids");
        builder.add_edge_labels(u, v);  // further columns (weights etc.) ignored
    }
}

void read_attributes(std::istream& in, GraphBuilder& builder, Layer layer,
                     const std::string& name) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty() || trim(line).front() == '%') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) parse_error(name, line_no, "expected '<id>\\t<keywords>'");
        const auto id = trim(std::string_view(line).substr(0, tab));
        if (id.empty()) parse_error(name, line_no, "empty vertex id");
        const auto idx = builder.find_vertex(layer, id);
        if (!idx)
            parse_error(name, line_no, "vertex id '" + std::string(id) + "' not in the graph");
        std::string_view rest = std::string_view(line).substr(tab + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto word = trim(rest.substr(0, comma));
            if (!word.empty()) builder.add_keyword({layer, *idx}, word);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    }
}

AttributedBipartiteGraph load_graph(const std::string& edge_path,
                                    const std::optional<std::string>& attrs_upper_path,
                                    const std::optional<std::string>& attrs_lower_path) {
    GraphBuilder builder;
    {
        std::ifstream in(edge_path);
        if (!in) throw std::runtime_error("cannot open edge list: " + edge_path);
        read_edge_list(in, builder, edge_path);
    }
    const std::optional<std::string>* attr_paths[2] = {&attrs_upper_path, &attrs_lower_path};
    for (const Layer layer : {Layer::Upper, Layer::Lower}) {
        const auto& path = *attr_paths[static_cast<int>(layer)];
        if (!path) continue;
        std::ifstream in(*path);
        if (!in) throw std::runtime_error("cannot open attribute file: " + *path);
        read_attributes(in, builder, layer, *path);
    }
    return std::move(builder).build();
}

void write_edge_list(const AttributedBipartiteGraph& g, std::ostream& out) {
    for (std::uint32_t u = 0; u < g.upper_count(); ++u)
        for (const auto v : g.neighbors({Layer::Upper, u}))
            out << g.label({Layer::Upper, u}) << ' ' << g.label({Layer::Lower, v}) << '\n';
}

void write_attributes(const AttributedBipartiteGraph& g, Layer layer, std::ostream& out) {
    for (std::uint32_t i = 0; i < g.layer_count(layer); ++i) {
        const auto kws = g.keywords({layer, i});
        if (kws.empty()) continue;
        out << g.label({layer, i}) << '\t';
        for (std::size_t k = 0; k < kws.size(); ++k) {
            if (k) out << ',';
            out << g.keyword_table().word(kws[k]);
        }
        out << '\n';
    }
}

namespace {

// Rebuild g with different keyword sets; fill_keywords(builder, layer, index)
// attaches the new set for one vertex.
template <typename Fill>
AttributedBipartiteGraph rebuild_with_keywords(const AttributedBipartiteGraph& g, Fill fill) {
    GraphBuilder builder;
    for (const Layer layer : {Layer::Upper, Layer::Lower})
        for (std::uint32_t i = 0; i < g.layer_count(layer); ++i)
            builder.ensure_vertex(layer, g.label({layer, i}));
    for (std::uint32_t u = 0; u < g.upper_count(); ++u)
        for (const auto v : g.neighbors({Layer::Upper, u})) builder.add_edge(u, v);
    for (const Layer layer : {Layer::Upper, Layer::Lower})
        for (std::uint32_t i = 0; i < g.layer_count(layer); ++i) fill(builder, layer, i);
    return std::move(builder).build();
}

}  // namespace

AttributedBipartiteGraph generate_attributes(const AttributedBipartiteGraph& g,
                                             const SyntheticAttrConfig& cfg) {
    if (cfg.min_per_vertex > cfg.max_per_vertex)
        throw std::invalid_argument("generate_attributes: min_per_vertex > max_per_vertex");
    if (cfg.vocab_upper < cfg.max_per_vertex || cfg.vocab_lower < cfg.max_per_vertex)
        throw std::invalid_argument("generate_attributes: vocabulary smaller than max_per_vertex");
    std::mt19937_64 rng(cfg.seed);
    const std::uint32_t vocab[2] = {cfg.vocab_upper, cfg.vocab_lower};
    const char* prefix[2] = {"u", "v"};
    return rebuild_with_keywords(g, [&](GraphBuilder& b, Layer layer, std::uint32_t i) {
        const int s = static_cast<int>(layer);
        const auto k = cfg.min_per_vertex +
                       static_cast<std::uint32_t>(uniform_below(
                           rng, cfg.max_per_vertex - cfg.min_per_vertex + 1));
        for (const auto w : sample_indices(rng, vocab[s], k))
            b.add_keyword({layer, i}, prefix[s] + std::to_string(w));
    });
}

AttributedBipartiteGraph sample_subgraph(const AttributedBipartiteGraph& g, double fraction,
                                         std::uint64_t seed) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("sample_subgraph: fraction must be in (0, 1]");
    std::mt19937_64 rng(seed);
    boost::dynamic_bitset<> keep[2];
    for (const Layer layer : {Layer::Upper, Layer::Lower}) {
        const int s = static_cast<int>(layer);
        const auto n = g.layer_count(layer);
        const auto want = static_cast<std::uint32_t>(std::lround(fraction * n));
        keep[s].resize(n);
        for (const auto i : sample_indices(rng, n, want)) keep[s].set(i);
    }
    GraphBuilder builder;
    for (const Layer layer : {Layer::Upper, Layer::Lower}) {
        const int s = static_cast<int>(layer);
        for (auto i = keep[s].find_first(); i != boost::dynamic_bitset<>::npos;
             i = keep[s].find_next(i)) {
            const VertexRef v{layer, static_cast<std::uint32_t>(i)};
            const auto nv = builder.ensure_vertex(layer, g.label(v));
            for (const auto kw : g.keywords(v))
                builder.add_keyword({layer, nv}, g.keyword_table().word(kw));
        }
    }
    for (std::uint32_t u = 0; u < g.upper_count(); ++u) {
        if (!keep[0].test(u)) continue;
        for (const auto v : g.neighbors({Layer::Upper, u})) {
            if (!keep[1].test(v)) continue;
            builder.add_edge_labels(g.label({Layer::Upper, u}), g.label({Layer::Lower, v}));
        }
    }
    return std::move(builder).build();
}

AttributedBipartiteGraph sample_keywords(const AttributedBipartiteGraph& g, double fraction,
                                         std::uint64_t seed) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("sample_keywords: fraction must be in (0, 1]");
    std::mt19937_64 rng(seed);
    return rebuild_with_keywords(g, [&](GraphBuilder& b, Layer layer, std::uint32_t i) {
        const auto kws = g.keywords({layer, i});
        if (kws.empty()) return;
        const auto n = static_cast<std::uint32_t>(kws.size());
        const auto want = static_cast<std::uint32_t>(std::ceil(fraction * n));
        for (const auto pick : sample_indices(rng, n, want))
            b.add_keyword({layer, i}, g.keyword_table().word(kws[pick]));
    });
}

}  // namespace abcs
