#include "abcs/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "abcs/bench.hpp"
#include "abcs/ingest.hpp"
#include "abcs/json_out.hpp"
#include "abcs/peeling.hpp"
#include "abcs/search.hpp"

namespace abcs {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

Algorithm parse_algo_or_throw(const std::string& name) {
    const auto algo = parse_algorithm(name);
    if (!algo)
        throw std::invalid_argument("unknown algorithm '" + name +
                                    "' (expected basic, basic+, inc, dec, or oracle)");
    return *algo;
}

struct GraphArgs {
    std::string edges;
    std::string attrs_upper;
    std::string attrs_lower;

    void attach(CLI::App& cmd, bool attrs_too = true) {
        cmd.add_option("--graph", edges, "edge list file ('%' comments, 'u v' per line)")
            ->required();
        if (attrs_too) {
            cmd.add_option("--attrs-u", attrs_upper, "upper-layer attribute file");
            cmd.add_option("--attrs-v", attrs_lower, "lower-layer attribute file");
        }
    }

    AttributedBipartiteGraph load() const {
        return load_graph(edges,
                          attrs_upper.empty() ? std::nullopt : std::make_optional(attrs_upper),
                          attrs_lower.empty() ? std::nullopt : std::make_optional(attrs_lower));
    }
};

int cmd_query(const GraphArgs& graph_args, const std::string& q_label, std::uint32_t alpha,
              std::uint32_t beta, const std::string& keywords, const std::string& algo_name,
              const std::string& output, bool stable, std::int64_t time_limit_ms,
              std::ostream& out, std::ostream& err) {
    const AttributedBipartiteGraph g = graph_args.load();
    const auto q = g.find_label(Layer::Upper, q_label);
    if (!q) throw std::invalid_argument("unknown upper vertex label '" + q_label + "'");

    QuerySpec spec;
    spec.q = *q;
    spec.params = {alpha, beta};
    spec.algorithm = parse_algo_or_throw(algo_name);
    if (keywords == "all") {
        const auto own = g.keywords(*q);
        spec.s.assign(own.begin(), own.end());
        if (spec.s.empty())
            throw std::invalid_argument("--keywords all: query vertex has no keywords");
    } else {
        for (const auto& word : split(keywords, ',')) {
            if (word.empty()) continue;
            const auto id = g.keyword_table().find(word);
            if (!id) throw std::invalid_argument("unknown keyword '" + word + "'");
            spec.s.push_back(*id);
        }
        std::sort(spec.s.begin(), spec.s.end());
        spec.s.erase(std::unique(spec.s.begin(), spec.s.end()), spec.s.end());
    }

    Deadline deadline;
    if (time_limit_ms > 0)
        deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(time_limit_ms);
    const QueryResult result = run_query(g, spec, deadline);

    if (output == "tsv")
        out << render_tsv(g, result);
    else
        out << render_json(result_document(g, spec, result, stable));

    if (result.stats.timed_out) {
        err << "query timed out after " << time_limit_ms << " ms\n";
    } else if (result.communities.empty()) {
        if (result.plain_community) {
            err << "no keyword pair qualifies; the plain (" << alpha << "," << beta
                << ")-community of " << q_label << " has "
                << result.plain_community->upper_vertices.size() << " upper and "
                << result.plain_community->lower_vertices.size() << " lower vertices\n";
        } else {
            err << "no (" << alpha << "," << beta << ")-community contains " << q_label << "\n";
        }
    }
    return 0;
}

int cmd_core(const GraphArgs& graph_args, std::uint32_t alpha, std::uint32_t beta,
             std::ostream& out) {
    const AttributedBipartiteGraph g = graph_args.load();
    const auto components = core_decompose(g, {alpha, beta});
    out << "components: " << components.size() << "\n";
    for (std::size_t i = 0; i < components.size(); ++i)
        out << i << ": upper=" << components[i].alive_upper.count()
            << " lower=" << components[i].alive_lower.count() << "\n";
    return 0;
}

int cmd_bench(const std::vector<std::string>& dataset_args, const std::string& alphas,
              const std::string& betas, std::uint32_t baseline_alpha,
              std::uint32_t baseline_beta, const std::string& vfracs, const std::string& kfracs,
              const std::string& sfracs, std::uint32_t queries, const std::string& algos,
              std::uint64_t seed, std::int64_t time_limit_ms, unsigned threads,
              const std::string& records_path, const std::string& summary_path,
              std::ostream& err) {
    BenchPlan plan;
    const auto parse_ints = [](const std::string& csv) {
        std::vector<std::uint32_t> out;
        for (const auto& tok : split(csv, ','))
            out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        if (out.empty()) throw std::invalid_argument("empty integer list");
        return out;
    };
    const auto parse_fracs = [](const std::string& csv) {
        std::vector<double> out;
        for (const auto& tok : split(csv, ',')) {
            const double f = std::stod(tok);
            if (!(f > 0.0) || f > 1.0)
                throw std::invalid_argument("fraction '" + tok + "' outside (0, 1]");
            out.push_back(f);
        }
        if (out.empty()) throw std::invalid_argument("empty fraction list");
        return out;
    };
    if (!alphas.empty()) plan.alpha_range = parse_ints(alphas);
    if (!betas.empty()) plan.beta_range = parse_ints(betas);
    plan.baseline_alpha = baseline_alpha;
    plan.baseline_beta = baseline_beta;
    if (!vfracs.empty()) plan.vertex_fractions = parse_fracs(vfracs);
    if (!kfracs.empty()) plan.keyword_fractions = parse_fracs(kfracs);
    if (!sfracs.empty()) plan.s_fractions = parse_fracs(sfracs);
    plan.queries_per_cell = queries;
    if (!algos.empty()) {
        plan.algorithms.clear();
        for (const auto& name : split(algos, ',')) plan.algorithms.push_back(parse_algo_or_throw(name));
    }
    plan.seed = seed;
    if (time_limit_ms > 0) plan.time_limit = std::chrono::milliseconds(time_limit_ms);
    plan.threads = threads;

    std::vector<BenchDataset> datasets;
    for (const auto& arg : dataset_args) {
        // <edges>[:<attrs_u>:<attrs_v>]; the dataset name is the edge file stem.
        const auto parts = split(arg, ':');
        BenchDataset ds;
        ds.edges = parts[0];
        if (parts.size() > 1 && !parts[1].empty()) ds.attrs_upper = parts[1];
        if (parts.size() > 2 && !parts[2].empty()) ds.attrs_lower = parts[2];
        std::string stem = ds.edges;
        if (const auto slash = stem.find_last_of('/'); slash != std::string::npos)
            stem = stem.substr(slash + 1);
        if (const auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0)
            stem = stem.substr(0, dot);
        ds.name = stem;
        datasets.push_back(std::move(ds));
    }

    std::ofstream records(records_path);
    if (!records) throw std::runtime_error("cannot open for writing: " + records_path);
    std::ofstream summary(summary_path);
    if (!summary) throw std::runtime_error("cannot open for writing: " + summary_path);
    run_bench(datasets, plan, records, summary, err);
    return 0;
}

int cmd_gen_attrs(const GraphArgs& graph_args, std::uint32_t min_kw, std::uint32_t max_kw,
                  std::uint32_t vocab_u, std::uint32_t vocab_v, std::uint64_t seed,
                  const std::string& out_upper, const std::string& out_lower) {
    const AttributedBipartiteGraph g = graph_args.load();
    SyntheticAttrConfig cfg;
    cfg.min_per_vertex = min_kw;
    cfg.max_per_vertex = max_kw;
    cfg.vocab_upper = vocab_u;
    cfg.vocab_lower = vocab_v;
    cfg.seed = seed;
    const AttributedBipartiteGraph attributed = generate_attributes(g, cfg);
    std::ofstream up(out_upper);
    if (!up) throw std::runtime_error("cannot open for writing: " + out_upper);
    write_attributes(attributed, Layer::Upper, up);
    std::ofstream low(out_lower);
    if (!low) throw std::runtime_error("cannot open for writing: " + out_lower);
    write_attributes(attributed, Layer::Lower, low);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"attributed (alpha,beta)-community search over bipartite graphs"};
    app.require_subcommand(1);

    // query
    auto* query = app.add_subcommand("query", "run one community query");
    GraphArgs query_graph;
    query_graph.attach(*query);
    std::string q_label, keywords, algo_name = "dec", output = "json";
    std::uint32_t alpha = 1, beta = 1;
    bool stable = false;
    std::int64_t time_limit_ms = 0;
    query->add_option("--q", q_label, "query vertex label (upper layer)")->required();
    query->add_option("--alpha", alpha, "minimum degree for upper vertices")->required();
    query->add_option("--beta", beta, "minimum degree for lower vertices")->required();
    query->add_option("--keywords", keywords, "comma-separated keywords, or 'all' for W_U(q)")
        ->required();
    query->add_option("--algo", algo_name, "basic | basic+ | inc | dec | oracle");
    query->add_option("--output", output, "json | tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    query->add_flag("--stable", stable, "pin elapsed_ms to 0 for byte-stable output");
    query->add_option("--time-limit-ms", time_limit_ms, "per-query time limit (0 = none)");

    // core
    auto* core = app.add_subcommand("core", "decompose the (alpha,beta)-core into components");
    GraphArgs core_graph;
    core_graph.attach(*core);
    std::uint32_t core_alpha = 1, core_beta = 1;
    core->add_option("--alpha", core_alpha)->required();
    core->add_option("--beta", core_beta)->required();

    // bench
    auto* bench = app.add_subcommand("bench", "parameter-sweep benchmark over datasets");
    std::vector<std::string> bench_datasets;
    std::string alphas, betas, vfracs, kfracs, sfracs, algos;
    std::uint32_t baseline_alpha = 3, baseline_beta = 3, queries = 300;
    std::uint64_t seed = 1;
    std::int64_t bench_limit_ms = 60000;
    unsigned threads = 0;
    std::string records_path, summary_path;
    bench
        ->add_option("--dataset", bench_datasets,
                     "edge list with optional attribute files: edges[:attrs_u[:attrs_v]]")
        ->required()
        ->take_all();
    bench->add_option("--alphas", alphas, "alpha sweep values (default 2,3,4,5,6)");
    bench->add_option("--betas", betas, "beta sweep values (default 2,3,4,5,6)");
    bench->add_option("--baseline-alpha", baseline_alpha, "alpha used by non-alpha sweeps");
    bench->add_option("--baseline-beta", baseline_beta, "beta used by non-beta sweeps");
    bench->add_option("--vfracs", vfracs, "vertex-sampling sweep (default 0.2..1.0)");
    bench->add_option("--kfracs", kfracs, "keyword-sampling sweep (default 0.2..1.0)");
    bench->add_option("--sfracs", sfracs, "query keyword-set sweep (default 0.2..1.0)");
    bench->add_option("--queries", queries, "queries per cell (default 300)");
    bench->add_option("--algos", algos, "algorithms to run (default basic+,inc,dec)");
    bench->add_option("--seed", seed, "sweep seed");
    bench->add_option("--time-limit-ms", bench_limit_ms, "per-query limit (default 60000)");
    bench->add_option("--threads", threads, "worker threads (default: ABCS_THREADS or cores)");
    bench->add_option("--records", records_path, "per-query CSV output path")->required();
    bench->add_option("--summary", summary_path, "per-cell summary CSV output path")->required();

    // gen-attrs
    auto* gen = app.add_subcommand("gen-attrs", "generate synthetic attribute files");
    GraphArgs gen_graph;
    gen_graph.attach(*gen, /*attrs_too=*/false);
    std::uint32_t min_kw = 8, max_kw = 13, vocab_u = 0, vocab_v = 0;
    std::uint64_t gen_seed = 1;
    std::string out_upper, out_lower;
    gen->add_option("--min", min_kw, "minimum keywords per vertex (default 8)");
    gen->add_option("--max", max_kw, "maximum keywords per vertex (default 13)");
    gen->add_option("--vocab-u", vocab_u, "upper-layer vocabulary size")->required();
    gen->add_option("--vocab-v", vocab_v, "lower-layer vocabulary size")->required();
    gen->add_option("--seed", gen_seed, "generation seed");
    gen->add_option("--out-u", out_upper, "upper attribute file to write")->required();
    gen->add_option("--out-v", out_lower, "lower attribute file to write")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (query->parsed())
            return cmd_query(query_graph, q_label, alpha, beta, keywords, algo_name, output,
                             stable, time_limit_ms, out, err);
        if (core->parsed()) return cmd_core(core_graph, core_alpha, core_beta, out);
        if (bench->parsed())
            return cmd_bench(bench_datasets, alphas, betas, baseline_alpha, baseline_beta,
                             vfracs, kfracs, sfracs, queries, algos, seed, bench_limit_ms,
                             threads, records_path, summary_path, err);
        if (gen->parsed())
            return cmd_gen_attrs(gen_graph, min_kw, max_kw, vocab_u, vocab_v, gen_seed,
                                 out_upper, out_lower);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace abcs
