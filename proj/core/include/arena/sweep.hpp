#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "arena/metrics.hpp"
#include "arena/params.hpp"

namespace arena {

// Parameter grid: the cross product alphas x ns x cs, each cell run once per
// seed.
struct SweepGrid {
    std::vector<double> alphas;
    std::vector<int> ns;
    std::vector<double> cs;
    int iterations = 10000;
    int burn_in = 100;
    std::vector<std::uint64_t> seeds;

    void validate() const;
};

// Parses a grid from a JSON document. Seeds may be given either as an
// explicit "seeds" array or as {"base_seed": b, "seed_count": k}, which
// expands to b, b+1, ..., b+k-1. Throws std::invalid_argument naming the
// offending field.
SweepGrid parse_grid(const std::string& json_text);

struct MetricStat {
    std::optional<double> mean;
    std::optional<double> stddev;  // sample standard deviation
};

// One point on a figure curve: seed-aggregated metrics for a (alpha, n, c)
// cell.
struct AggregateRow {
    int n = 0;
    double c = 0.0;
    double alpha = 0.0;
    int seed_count = 0;
    MetricStat slope;
    MetricStat lifecycle;
    MetricStat turnover;
    MetricStat peak_height;
    MetricStat gini;
};

// Runs every cell across every seed and aggregates. Output is ordered
// lexicographically by (n, c, alpha) and independent of thread count.
// threads = 0 means hardware concurrency.
std::vector<AggregateRow> run_sweep(const SweepGrid& grid,
                                    unsigned threads = 0);

// Long-format CSV `n,c,alpha,metric,mean,std,seeds`; absent stats leave the
// mean/std fields empty.
void write_aggregate_csv(const std::vector<AggregateRow>& rows,
                         std::ostream& out);

}  // namespace arena
