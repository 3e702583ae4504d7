#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "abcs/graph.hpp"
#include "abcs/search.hpp"

namespace abcs {

struct BenchDataset {
    std::string name;
    std::string edges;
    std::optional<std::string> attrs_upper;
    std::optional<std::string> attrs_lower;
};

// Sweep configuration. Cells are one-knob-at-a-time sweeps around the
// baseline (alpha sweep at beta=baseline and full fractions, beta sweep,
// then one sweep per fraction knob), deduplicated — a full Cartesian product
// of the defaults would be astronomically large.
struct BenchPlan {
    std::vector<std::uint32_t> alpha_range{2, 3, 4, 5, 6};
    std::vector<std::uint32_t> beta_range{2, 3, 4, 5, 6};
    std::uint32_t baseline_alpha{3};
    std::uint32_t baseline_beta{3};
    std::vector<double> vertex_fractions{0.2, 0.4, 0.6, 0.8, 1.0};
    std::vector<double> keyword_fractions{0.2, 0.4, 0.6, 0.8, 1.0};
    std::vector<double> s_fractions{0.2, 0.4, 0.6, 0.8, 1.0};
    std::uint32_t queries_per_cell{300};
    std::vector<Algorithm> algorithms{Algorithm::BasicPlus, Algorithm::Inc, Algorithm::Dec};
    std::uint64_t seed{1};
    std::chrono::milliseconds time_limit{60000};
    unsigned threads{0};  // 0 = ABCS_THREADS env var, else hardware concurrency
};

struct BenchCell {
    std::uint32_t alpha{3};
    std::uint32_t beta{3};
    double vfrac{1.0};
    double kfrac{1.0};
    double sfrac{1.0};

    friend bool operator==(const BenchCell&, const BenchCell&) = default;
};

struct BenchRecord {
    std::string dataset;
    Algorithm algorithm{Algorithm::Dec};
    BenchCell cell;
    std::string query;
    double elapsed_ms{0.0};
    std::uint32_t result_size{0};
    std::uint64_t generated{0};
    std::uint64_t verified{0};
    bool timeout{false};
};

std::vector<BenchCell> plan_cells(const BenchPlan& plan);

unsigned resolve_threads(unsigned requested);

// Run the plan's cells against one loaded graph. Queries per cell are upper
// vertices alive in the (alpha,beta)-core of the sampled graph with nonempty
// keyword sets; every algorithm sees the same queries. Record order is
// deterministic regardless of the worker count.
std::vector<BenchRecord> run_bench_on_graph(const AttributedBipartiteGraph& g,
                                            const std::string& dataset_name,
                                            const BenchPlan& plan, std::ostream& log);

// Multi-dataset driver: loads each dataset (a failure skips that dataset with
// a log line), runs the plan, and writes both CSVs.
void run_bench(const std::vector<BenchDataset>& datasets, const BenchPlan& plan,
               std::ostream& records_csv, std::ostream& summary_csv, std::ostream& log);

void write_records_csv(const std::vector<BenchRecord>& records, std::ostream& out);

// Per-(dataset, algorithm, cell) mean elapsed over completed rows; timed-out
// rows are excluded from the mean and reported as a count.
void write_summary_csv(const std::vector<BenchRecord>& records, std::ostream& out);

}  // namespace abcs
