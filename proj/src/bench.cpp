#include "abcs/bench.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "abcs/ingest.hpp"
#include "abcs/peeling.hpp"
#include "abcs/rng.hpp"

namespace abcs {

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t cell_hash(const BenchCell& c) {
    std::uint64_t h = mix_seed(c.alpha, c.beta);
    h = mix_seed(h, std::bit_cast<std::uint64_t>(c.vfrac));
    h = mix_seed(h, std::bit_cast<std::uint64_t>(c.kfrac));
    return mix_seed(h, std::bit_cast<std::uint64_t>(c.sfrac));
}

std::string format_frac(double f) {
    std::ostringstream s;
    s << f;
    return s.str();
}

std::string format_ms(double ms) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(3);
    s << ms;
    return s.str();
}

}  // namespace

std::vector<BenchCell> plan_cells(const BenchPlan& plan) {
    std::vector<BenchCell> cells;
    const auto add = [&](BenchCell c) {
        for (const auto& seen : cells)
            if (seen == c) return;
        cells.push_back(c);
    };
    const BenchCell base{plan.baseline_alpha, plan.baseline_beta, 1.0, 1.0, 1.0};
    add(base);
    for (const auto a : plan.alpha_range) add({a, base.beta, 1.0, 1.0, 1.0});
    for (const auto b : plan.beta_range) add({base.alpha, b, 1.0, 1.0, 1.0});
    for (const auto v : plan.vertex_fractions) add({base.alpha, base.beta, v, 1.0, 1.0});
    for (const auto k : plan.keyword_fractions) add({base.alpha, base.beta, 1.0, k, 1.0});
    for (const auto s : plan.s_fractions) add({base.alpha, base.beta, 1.0, 1.0, s});
    return cells;
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ABCS_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace {

struct BenchTask {
    const AttributedBipartiteGraph* graph;
    QuerySpec spec;
    std::size_t record_index;
};

// Queries for one cell: upper vertices surviving the cell's core with
// nonempty keyword sets; S is a per-query sample of the vertex's keywords.
std::vector<QuerySpec> cell_queries(const AttributedBipartiteGraph& g, const BenchPlan& plan,
                                    const BenchCell& cell) {
    const SubgraphMask core =
        peel_to_core(g, SubgraphMask::all_alive(g), {cell.alpha, cell.beta});
    std::vector<std::uint32_t> eligible;
    for (auto i = core.alive_upper.find_first(); i != boost::dynamic_bitset<>::npos;
         i = core.alive_upper.find_next(i)) {
        const auto u = static_cast<std::uint32_t>(i);
        if (!g.keywords({Layer::Upper, u}).empty()) eligible.push_back(u);
    }
    const auto want =
        std::min<std::uint32_t>(plan.queries_per_cell,
                                static_cast<std::uint32_t>(eligible.size()));
    std::mt19937_64 pick_rng(mix_seed(plan.seed, cell_hash(cell), 0x71));
    std::vector<QuerySpec> specs;
    specs.reserve(want);
    for (const auto pos :
         sample_indices(pick_rng, static_cast<std::uint32_t>(eligible.size()), want)) {
        const std::uint32_t u = eligible[pos];
        const auto kws = g.keywords({Layer::Upper, u});
        // S is reproducible from (seed, cell, query label) alone.
        std::mt19937_64 s_rng(
            mix_seed(plan.seed, cell_hash(cell), fnv1a(g.label({Layer::Upper, u}))));
        const auto take = static_cast<std::uint32_t>(
            std::ceil(cell.sfrac * static_cast<double>(kws.size())));
        QuerySpec spec;
        spec.q = {Layer::Upper, u};
        spec.params = {cell.alpha, cell.beta};
        for (const auto i2 : sample_indices(s_rng, static_cast<std::uint32_t>(kws.size()), take))
            spec.s.push_back(kws[i2]);
        specs.push_back(std::move(spec));
    }
    return specs;
}

}  // namespace

std::vector<BenchRecord> run_bench_on_graph(const AttributedBipartiteGraph& g,
                                            const std::string& dataset_name,
                                            const BenchPlan& plan, std::ostream& log) {
    const auto cells = plan_cells(plan);

    // Sampled variants are shared between cells with the same fractions.
    std::map<std::pair<double, double>, std::shared_ptr<const AttributedBipartiteGraph>>
        sampled;
    const auto graph_for = [&](const BenchCell& cell) {
        const std::pair<double, double> key{cell.vfrac, cell.kfrac};
        if (const auto it = sampled.find(key); it != sampled.end()) return it->second;
        std::shared_ptr<const AttributedBipartiteGraph> out;
        if (cell.vfrac >= 1.0 && cell.kfrac >= 1.0) {
            out = std::shared_ptr<const AttributedBipartiteGraph>(&g, [](const auto*) {});
        } else {
            AttributedBipartiteGraph pruned =
                cell.vfrac < 1.0
                    ? sample_subgraph(g, cell.vfrac,
                                      mix_seed(plan.seed, std::bit_cast<std::uint64_t>(cell.vfrac),
                                               0x5a))
                    : g;
            if (cell.kfrac < 1.0)
                pruned = sample_keywords(
                    pruned, cell.kfrac,
                    mix_seed(plan.seed, std::bit_cast<std::uint64_t>(cell.kfrac), 0x6b));
            out = std::make_shared<AttributedBipartiteGraph>(std::move(pruned));
        }
        sampled.emplace(key, out);
        return out;
    };

    std::vector<BenchTask> tasks;
    std::vector<BenchRecord> records;
    for (const auto& cell : cells) {
        const auto graph = graph_for(cell);
        const auto specs = cell_queries(*graph, plan, cell);
        for (const auto& spec : specs) {
            for (const auto algo : plan.algorithms) {
                BenchRecord rec;
                rec.dataset = dataset_name;
                rec.algorithm = algo;
                rec.cell = cell;
                rec.query = graph->label(spec.q);
                records.push_back(std::move(rec));
                QuerySpec task_spec = spec;
                task_spec.algorithm = algo;
                tasks.push_back({graph.get(), std::move(task_spec), records.size() - 1});
            }
        }
    }

    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    const auto worker = [&]() {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            const BenchTask& task = tasks[t];
            BenchRecord& rec = records[task.record_index];
            const auto deadline = std::chrono::steady_clock::now() + plan.time_limit;
            try {
                const QueryResult result = run_query(*task.graph, task.spec, deadline);
                rec.elapsed_ms = static_cast<double>(result.stats.elapsed.count()) / 1000.0;
                rec.generated = result.stats.candidates_generated;
                rec.verified = result.stats.candidates_verified;
                rec.timeout = result.stats.timed_out;
                if (!result.communities.empty())
                    rec.result_size = result.communities.front().size();
            } catch (const std::exception& e) {
                // Infeasible at this scale (e.g. candidate overflow): record
                // as a timeout row, the INF convention.
                rec.timeout = true;
                const std::lock_guard<std::mutex> hold(log_mutex);
                log << "query " << rec.query << " (" << algorithm_name(rec.algorithm)
                    << "): " << e.what() << " -> recorded as timeout\n";
            }
        }
    };
    const unsigned thread_count = resolve_threads(plan.threads);
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (unsigned i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return records;
}

void run_bench(const std::vector<BenchDataset>& datasets, const BenchPlan& plan,
               std::ostream& records_csv, std::ostream& summary_csv, std::ostream& log) {
    std::vector<BenchRecord> all;
    for (const auto& ds : datasets) {
        try {
            const AttributedBipartiteGraph g =
                load_graph(ds.edges, ds.attrs_upper, ds.attrs_lower);
            auto records = run_bench_on_graph(g, ds.name, plan, log);
            all.insert(all.end(), std::make_move_iterator(records.begin()),
                       std::make_move_iterator(records.end()));
        } catch (const std::exception& e) {
            log << "skipping dataset " << ds.name << ": " << e.what() << "\n";
        }
    }
    write_records_csv(all, records_csv);
    write_summary_csv(all, summary_csv);
}

void write_records_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
    out << "dataset,algorithm,alpha,beta,vfrac,kfrac,sfrac,query,elapsed_ms,result_size,"
           "generated,verified,timeout\n";
    for (const auto& r : records) {
        out << r.dataset << ',' << algorithm_name(r.algorithm) << ',' << r.cell.alpha << ','
            << r.cell.beta << ',' << format_frac(r.cell.vfrac) << ','
            << format_frac(r.cell.kfrac) << ',' << format_frac(r.cell.sfrac) << ',' << r.query
            << ',' << format_ms(r.elapsed_ms) << ',' << r.result_size << ',' << r.generated
            << ',' << r.verified << ',' << (r.timeout ? 1 : 0) << '\n';
    }
}

void write_summary_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
    struct Agg {
        std::uint64_t total{0};
        std::uint64_t timeouts{0};
        double elapsed_sum{0.0};
    };
    std::map<std::string, Agg> groups;  // key preserves column order
    for (const auto& r : records) {
        std::string key = r.dataset;
        key += ',';
        key += algorithm_name(r.algorithm);
        key += ',' + std::to_string(r.cell.alpha) + ',' + std::to_string(r.cell.beta) + ',' +
               format_frac(r.cell.vfrac) + ',' + format_frac(r.cell.kfrac) + ',' +
               format_frac(r.cell.sfrac);
        auto& agg = groups[key];
        ++agg.total;
        if (r.timeout)
            ++agg.timeouts;
        else
            agg.elapsed_sum += r.elapsed_ms;
    }
    out << "dataset,algorithm,alpha,beta,vfrac,kfrac,sfrac,queries,completed,timeouts,"
           "mean_elapsed_ms\n";
    for (const auto& [key, agg] : groups) {
        const auto completed = agg.total - agg.timeouts;
        out << key << ',' << agg.total << ',' << completed << ',' << agg.timeouts << ','
            << (completed > 0 ? format_ms(agg.elapsed_sum / static_cast<double>(completed))
                              : std::string("inf"))
            << '\n';
    }
}

}  // namespace abcs
