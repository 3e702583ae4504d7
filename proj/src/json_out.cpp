#include "abcs/json_out.hpp"

#include <sstream>

namespace abcs {

namespace {

nlohmann::ordered_json keyword_array(const AttributedBipartiteGraph& g, const KeywordSet& set) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto k : set) arr.push_back(g.keyword_table().word(k));
    return arr;
}

nlohmann::ordered_json label_array(const AttributedBipartiteGraph& g, Layer layer,
                                   const std::vector<std::uint32_t>& indices) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto i : indices) arr.push_back(g.label({layer, i}));
    return arr;
}

double elapsed_ms(const QueryStats& stats) {
    return static_cast<double>(stats.elapsed.count()) / 1000.0;
}

}  // namespace

nlohmann::ordered_json result_document(const AttributedBipartiteGraph& g, const QuerySpec& spec,
                                       const QueryResult& result, bool stable_timing) {
    nlohmann::ordered_json doc;
    doc["query"] = g.label(spec.q);
    doc["alpha"] = spec.params.alpha;
    doc["beta"] = spec.params.beta;
    doc["s"] = keyword_array(g, spec.s);
    doc["algorithm"] = algorithm_name(result.stats.algorithm);
    auto results = nlohmann::ordered_json::array();
    for (const auto& c : result.communities) {
        nlohmann::ordered_json entry;
        entry["keywords_u"] = keyword_array(g, c.shared_upper);
        entry["keywords_v"] = keyword_array(g, c.shared_lower);
        entry["vertices_u"] = label_array(g, Layer::Upper, c.upper_vertices);
        entry["vertices_v"] = label_array(g, Layer::Lower, c.lower_vertices);
        entry["size"] = c.size();
        results.push_back(std::move(entry));
    }
    doc["results"] = std::move(results);
    nlohmann::ordered_json stats;
    stats["candidates_generated"] = result.stats.candidates_generated;
    stats["candidates_verified"] = result.stats.candidates_verified;
    stats["peels_run"] = result.stats.peels_run;
    stats["elapsed_ms"] = stable_timing ? 0.0 : elapsed_ms(result.stats);
    doc["stats"] = std::move(stats);
    return doc;
}

std::string render_json(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

std::string render_tsv(const AttributedBipartiteGraph& g, const QueryResult& result) {
    std::ostringstream out;
    out << "keywords_u\tkeywords_v\tvertices_u\tvertices_v\tsize\n";
    const auto join_keywords = [&](const KeywordSet& set) {
        std::string s;
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (i) s += ',';
            s += g.keyword_table().word(set[i]);
        }
        return s;
    };
    const auto join_labels = [&](Layer layer, const std::vector<std::uint32_t>& indices) {
        std::string s;
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (i) s += ',';
            s += g.label({layer, indices[i]});
        }
        return s;
    };
    for (const auto& c : result.communities) {
        out << join_keywords(c.shared_upper) << '\t' << join_keywords(c.shared_lower) << '\t'
            << join_labels(Layer::Upper, c.upper_vertices) << '\t'
            << join_labels(Layer::Lower, c.lower_vertices) << '\t' << c.size() << '\n';
    }
    return out.str();
}

}  // namespace abcs
