#include "arena/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace arena {

std::vector<LifecycleRecord> segment_lifecycles(const RunTrace& trace) {
    std::vector<LifecycleRecord> records;
    const int n = trace.params.n;
    const int rows = trace.rows();
    for (int slot = 0; slot < n; ++slot) {
        LifecycleRecord rec;
        rec.slot = slot;
        rec.item_id = trace.identity[0][slot];
        rec.birth_t = 1;
        rec.peak_height = trace.visibility[0][slot];
        rec.peak_t = 1;
        for (int r = 1; r < rows; ++r) {
            const int t = r + 1;
            if (trace.identity[r][slot] != rec.item_id) {
                rec.death_t = t;
                records.push_back(rec);
                rec = LifecycleRecord{};
                rec.slot = slot;
                rec.item_id = trace.identity[r][slot];
                rec.birth_t = t;
                rec.peak_height = trace.visibility[r][slot];
                rec.peak_t = t;
            } else if (trace.visibility[r][slot] > rec.peak_height) {
                rec.peak_height = trace.visibility[r][slot];
                rec.peak_t = t;
            }
        }
        records.push_back(rec);  // censored tail
    }
    return records;
}

double mean_slope(const RunTrace& trace, int burn_in) {
    const int rows = trace.rows();
    if (rows <= burn_in + 1)
        throw std::invalid_argument("mean_slope: trace too short for burn_in");
    const int n = trace.params.n;
    const int first_t = std::max(2, burn_in + 1);  // pair (t-1, t), t > burn_in
    double total = 0.0;
    long count = 0;
    for (int t = first_t; t <= rows; ++t) {
        const auto& cur = trace.visibility[t - 1];
        const auto& prev = trace.visibility[t - 2];
        for (int i = 0; i < n; ++i) total += std::abs(cur[i] - prev[i]);
        count += n;
    }
    return total / static_cast<double>(count);
}

double turnover_ratio(const RunTrace& trace, int burn_in) {
    const int rows = trace.rows();
    if (rows <= burn_in + 1)
        throw std::invalid_argument("turnover_ratio: trace too short for burn_in");
    long events = 0;
    for (const ReplacementEvent& ev : trace.events)
        if (ev.t > burn_in) ++events;
    const double denom =
        static_cast<double>(trace.params.n) * (rows - burn_in);
    return static_cast<double>(events) / denom;
}

std::optional<double> mean_lifecycle(const std::vector<LifecycleRecord>& records,
                                     int burn_in) {
    double total = 0.0;
    long count = 0;
    for (const LifecycleRecord& rec : records) {
        if (rec.death_t && rec.birth_t > burn_in) {
            total += *rec.death_t - rec.birth_t;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return total / count;
}

std::optional<double> mean_peak_height(
    const std::vector<LifecycleRecord>& records, int burn_in) {
    double total = 0.0;
    long count = 0;
    for (const LifecycleRecord& rec : records) {
        if (rec.death_t && rec.birth_t > burn_in) {
            total += rec.peak_height;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return total / count;
}

double gini(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    for (double x : sorted)
        if (x < 0.0) throw std::invalid_argument("gini: negative entry");
    const double sum = std::accumulate(sorted.begin(), sorted.end(), 0.0);
    if (sum == 0.0) return 0.0;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double ranked = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        ranked += static_cast<double>(i + 1) * sorted[i];
    return 2.0 * ranked / (n * sum) - (n + 1.0) / n;
}

MetricsSummary summarize(const RunTrace& trace) {
    const int burn_in = trace.params.burn_in;
    MetricsSummary s;
    s.mean_slope = mean_slope(trace, burn_in);
    s.turnover_ratio = turnover_ratio(trace, burn_in);

    auto records = segment_lifecycles(trace);
    s.mean_lifecycle = mean_lifecycle(records, burn_in);
    s.mean_peak_height = mean_peak_height(records, burn_in);
    long completed = 0;
    for (const LifecycleRecord& rec : records)
        if (rec.death_t && rec.birth_t > burn_in) ++completed;
    s.completed_lifecycles = completed;

    double gini_total = 0.0;
    long gini_count = 0;
    for (int t = burn_in + 1; t <= trace.rows(); ++t) {
        gini_total += gini(trace.visibility[t - 1]);
        ++gini_count;
    }
    s.mean_gini = gini_total / static_cast<double>(gini_count);
    return s;
}

std::string summary_to_json(const MetricsSummary& summary,
                            const ModelParams& params) {
    nlohmann::ordered_json j;
    j["params"] = {{"alpha", params.alpha},   {"n", params.n},
                   {"c", params.c},           {"iterations", params.iterations},
                   {"seed", params.seed},     {"burn_in", params.burn_in}};
    j["mean_slope"] = summary.mean_slope;
    if (summary.mean_lifecycle)
        j["mean_lifecycle"] = *summary.mean_lifecycle;
    else
        j["mean_lifecycle"] = nullptr;
    j["turnover_ratio"] = summary.turnover_ratio;
    if (summary.mean_peak_height)
        j["mean_peak_height"] = *summary.mean_peak_height;
    else
        j["mean_peak_height"] = nullptr;
    j["mean_gini"] = summary.mean_gini;
    j["completed_lifecycles"] = summary.completed_lifecycles;
    return j.dump(2) + "\n";
}

}  // namespace arena
