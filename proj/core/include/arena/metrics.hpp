#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arena/model.hpp"

namespace arena {

// One item's stay in the arena. death_t is absent for items still alive at
// trace end (censored). peak is the maximum visibility over the item's
// presence, ties broken toward the earliest iteration.
struct LifecycleRecord {
    std::uint64_t item_id = 0;
    int slot = 0;
    int birth_t = 1;
    std::optional<int> death_t;
    double peak_height = 0.0;
    int peak_t = 1;
};

// The five aggregate statistics of one run. Lifecycle and peak means are
// absent when no completed lifecycle survives the burn-in filter.
struct MetricsSummary {
    double mean_slope = 0.0;
    std::optional<double> mean_lifecycle;
    double turnover_ratio = 0.0;
    std::optional<double> mean_peak_height;
    double mean_gini = 0.0;
    long completed_lifecycles = 0;
};

// Splits the identity matrix into per-item lifecycles. Initial items have
// birth_t = 1; replacement-born items have birth_t = the event iteration.
std::vector<LifecycleRecord> segment_lifecycles(const RunTrace& trace);

// Mean |pi_i^t - pi_i^{t-1}| over all slots and all pairs with t > burn_in,
// including zero-visibility entries and replacement drops.
// Throws std::invalid_argument when the trace has <= burn_in + 1 rows.
double mean_slope(const RunTrace& trace, int burn_in);

// Replacement events with t > burn_in per slot per counted iteration.
double turnover_ratio(const RunTrace& trace, int burn_in);

// Mean completed lifecycle length (death_t - birth_t) over records with
// birth_t > burn_in; absent when none qualify.
std::optional<double> mean_lifecycle(const std::vector<LifecycleRecord>& records,
                                     int burn_in);

std::optional<double> mean_peak_height(
    const std::vector<LifecycleRecord>& records, int burn_in);

// Standard Gini index via the sorted-rank formula; 0 for a zero-sum vector.
// Throws std::invalid_argument on negative entries.
double gini(std::span<const double> values);

// All five statistics of one run, using trace.params.burn_in.
MetricsSummary summarize(const RunTrace& trace);

// Flat JSON object with the six summary fields plus the generating params;
// absent values serialize as null.
std::string summary_to_json(const MetricsSummary& summary,
                            const ModelParams& params);

}  // namespace arena
