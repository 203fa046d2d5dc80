#include "arena/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "arena/trace_io.hpp"

namespace arena {

void SweepGrid::validate() const {
    if (alphas.empty()) throw std::invalid_argument("alphas must be non-empty");
    if (ns.empty()) throw std::invalid_argument("ns must be non-empty");
    if (cs.empty()) throw std::invalid_argument("cs must be non-empty");
    if (seeds.empty()) throw std::invalid_argument("seeds must be non-empty");
    for (double a : alphas)
        if (!(a >= 0.0)) throw std::invalid_argument("alphas entries must be >= 0");
    for (int n : ns)
        if (n < 2) throw std::invalid_argument("ns entries must be >= 2");
    for (double c : cs)
        if (!(c > 0.0)) throw std::invalid_argument("cs entries must be > 0");
    if (iterations <= burn_in || burn_in < 0 || iterations < 2)
        throw std::invalid_argument("iterations must exceed burn_in (>= 0)");
    std::set<std::uint64_t> distinct(seeds.begin(), seeds.end());
    if (distinct.size() != seeds.size())
        throw std::invalid_argument("seeds must be pairwise distinct");
}

SweepGrid parse_grid(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("grid JSON parse error: ") +
                                    e.what());
    }
    SweepGrid grid;
    auto require = [&](const char* field) -> const nlohmann::json& {
        if (!j.contains(field))
            throw std::invalid_argument(std::string("grid missing field: ") +
                                        field);
        return j.at(field);
    };
    try {
        require("alphas").get_to(grid.alphas);
        require("ns").get_to(grid.ns);
        require("cs").get_to(grid.cs);
        if (j.contains("iterations")) j.at("iterations").get_to(grid.iterations);
        if (j.contains("burn_in")) j.at("burn_in").get_to(grid.burn_in);
        if (j.contains("seeds")) {
            j.at("seeds").get_to(grid.seeds);
        } else if (j.contains("base_seed") && j.contains("seed_count")) {
            std::uint64_t base = j.at("base_seed").get<std::uint64_t>();
            int count = j.at("seed_count").get<int>();
            if (count < 1)
                throw std::invalid_argument("seed_count must be >= 1");
            for (int k = 0; k < count; ++k) grid.seeds.push_back(base + k);
        } else {
            throw std::invalid_argument(
                "grid needs either seeds or base_seed + seed_count");
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("grid field type error: ") +
                                    e.what());
    }
    grid.validate();
    return grid;
}

namespace {

struct Cell {
    int n;
    double c;
    double alpha;
};

MetricStat aggregate(const std::vector<std::optional<double>>& values) {
    double total = 0.0;
    long count = 0;
    for (const auto& v : values)
        if (v) {
            total += *v;
            ++count;
        }
    if (count == 0) return {};
    const double mean = total / count;
    double ss = 0.0;
    for (const auto& v : values)
        if (v) ss += (*v - mean) * (*v - mean);
    const double stddev = count > 1 ? std::sqrt(ss / (count - 1)) : 0.0;
    return {mean, stddev};
}

}  // namespace

std::vector<AggregateRow> run_sweep(const SweepGrid& grid, unsigned threads) {
    grid.validate();

    std::vector<Cell> cells;
    for (int n : grid.ns)
        for (double c : grid.cs)
            for (double alpha : grid.alphas) cells.push_back({n, c, alpha});
    std::stable_sort(cells.begin(), cells.end(),
                     [](const Cell& a, const Cell& b) {
                         if (a.n != b.n) return a.n < b.n;
                         if (a.c != b.c) return a.c < b.c;
                         return a.alpha < b.alpha;
                     });

    const std::size_t seeds = grid.seeds.size();
    std::vector<MetricsSummary> summaries(cells.size() * seeds);

    struct Job {
        std::size_t cell;
        std::size_t seed;
    };
    std::vector<Job> jobs;
    jobs.reserve(summaries.size());
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
        for (std::size_t si = 0; si < seeds; ++si) jobs.push_back({ci, si});

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, jobs.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= jobs.size()) return;
            const Job& job = jobs[idx];
            const Cell& cell = cells[job.cell];
            ModelParams params;
            params.alpha = cell.alpha;
            params.n = cell.n;
            params.c = cell.c;
            params.iterations = grid.iterations;
            params.burn_in = grid.burn_in;
            params.seed = grid.seeds[job.seed];
            summaries[job.cell * seeds + job.seed] = summarize(run(params));
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    // Reduce in fixed (cell, seed) order regardless of how jobs were
    // scheduled.
    std::vector<AggregateRow> rows;
    rows.reserve(cells.size());
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        AggregateRow row;
        row.n = cells[ci].n;
        row.c = cells[ci].c;
        row.alpha = cells[ci].alpha;
        row.seed_count = static_cast<int>(seeds);
        std::vector<std::optional<double>> slope, lifecycle, turnover, peak,
            gini_vals;
        for (std::size_t si = 0; si < seeds; ++si) {
            const MetricsSummary& s = summaries[ci * seeds + si];
            slope.push_back(s.mean_slope);
            lifecycle.push_back(s.mean_lifecycle);
            turnover.push_back(s.turnover_ratio);
            peak.push_back(s.mean_peak_height);
            gini_vals.push_back(s.mean_gini);
        }
        row.slope = aggregate(slope);
        row.lifecycle = aggregate(lifecycle);
        row.turnover = aggregate(turnover);
        row.peak_height = aggregate(peak);
        row.gini = aggregate(gini_vals);
        rows.push_back(row);
    }
    return rows;
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows,
                         std::ostream& out) {
    out << "n,c,alpha,metric,mean,std,seeds\n";
    auto emit = [&](const AggregateRow& row, const char* metric,
                    const MetricStat& stat) {
        out << row.n << ',' << format_real(row.c) << ','
            << format_real(row.alpha) << ',' << metric << ',';
        if (stat.mean) out << format_real(*stat.mean);
        out << ',';
        if (stat.stddev) out << format_real(*stat.stddev);
        out << ',' << row.seed_count << '\n';
    };
    for (const AggregateRow& row : rows) {
        emit(row, "mean_slope", row.slope);
        emit(row, "mean_lifecycle", row.lifecycle);
        emit(row, "turnover_ratio", row.turnover);
        emit(row, "mean_peak_height", row.peak_height);
        emit(row, "mean_gini", row.gini);
    }
}

}  // namespace arena
