#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "arena/metrics.hpp"
#include "arena/model.hpp"

using namespace arena;

namespace {

// Independent O(n^2) oracle: mean pairwise absolute difference over twice
// the mean.
double gini_pairwise(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double sum = std::accumulate(v.begin(), v.end(), 0.0);
    if (sum == 0.0) return 0.0;
    double diff = 0.0;
    for (double a : v)
        for (double b : v) diff += std::abs(a - b);
    return diff / (2.0 * n * n * (sum / n));
}

RunTrace make_trace(int n, std::vector<std::vector<double>> visibility,
                    std::vector<std::vector<std::uint64_t>> identity,
                    std::vector<ReplacementEvent> events, int burn_in = 0) {
    RunTrace trace;
    trace.params.n = n;
    trace.params.iterations = static_cast<int>(visibility.size());
    trace.params.burn_in = burn_in;
    trace.visibility = std::move(visibility);
    trace.identity = std::move(identity);
    trace.events = std::move(events);
    return trace;
}

}  // namespace

TEST_CASE("gini: exact trivial values") {
    CHECK(gini(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == 0.0);
    CHECK(gini(std::vector<double>{0.0, 0.0, 1.0, 0.0}) == 0.75);
    CHECK(gini(std::vector<double>{0.0, 0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(gini(std::vector<double>{1.0, -0.1}),
                    std::invalid_argument);
}

TEST_CASE("gini: [1,2,3,4] matches the pairwise oracle value 0.25") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(gini_pairwise(v) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(gini(v) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("gini: sorted formula equals pairwise oracle on random vectors") {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> uniform(0.0, 10.0);
    std::uniform_int_distribution<int> length(2, 200);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> v(static_cast<std::size_t>(length(rng)));
        for (double& x : v) x = uniform(rng);
        if (trial % 7 == 0) v[0] = 0.0;
        const double fast = gini(v);
        const double slow = gini_pairwise(v);
        CHECK(std::abs(fast - slow) <= 1e-12);
        CHECK(fast >= 0.0);
        CHECK(fast <= (static_cast<double>(v.size()) - 1.0) / v.size());
    }
}

TEST_CASE("gini: exact scale invariance") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> v(40);
    for (double& x : v) x = uniform(rng);
    for (double k : {2.0, 0.5, 1024.0}) {
        std::vector<double> scaled = v;
        for (double& x : scaled) x *= k;
        CHECK(gini(scaled) == gini(v));  // powers of two scale exactly
    }
}

TEST_CASE("mean_slope: constant trace gives zero") {
    auto trace = make_trace(
        2, {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}},
        {{0, 1}, {0, 1}, {0, 1}}, {});
    CHECK(mean_slope(trace, 0) == 0.0);
}

TEST_CASE("mean_slope: alternating one-hot trace gives one") {
    std::vector<std::vector<double>> vis;
    std::vector<std::vector<std::uint64_t>> ids;
    for (int t = 0; t < 10; ++t) {
        vis.push_back(t % 2 == 0 ? std::vector<double>{1.0, 0.0}
                                 : std::vector<double>{0.0, 1.0});
        ids.push_back({0, 1});
    }
    auto trace = make_trace(2, vis, ids, {});
    CHECK(mean_slope(trace, 0) == 1.0);
    CHECK(mean_slope(trace, 4) == 1.0);
}

TEST_CASE("mean_slope: too few rows for the burn-in is an error") {
    auto trace = make_trace(2, {{0.5, 0.5}, {0.5, 0.5}},
                            {{0, 1}, {0, 1}}, {});
    CHECK_THROWS_AS(mean_slope(trace, 1), std::invalid_argument);
    CHECK_THROWS_AS(turnover_ratio(trace, 1), std::invalid_argument);
}

TEST_CASE("turnover_ratio: zero events and the saturation bound") {
    auto quiet = make_trace(2, {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}},
                            {{0, 1}, {0, 1}, {0, 1}}, {});
    CHECK(turnover_ratio(quiet, 0) == 0.0);

    // Synthetic: both slots replaced at every counted iteration.
    std::vector<ReplacementEvent> events;
    for (int t = 1; t <= 4; ++t)
        for (int slot = 0; slot < 2; ++slot)
            events.push_back({t, slot, 0, 1});
    auto busy = make_trace(
        2,
        {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}},
        {{0, 1}, {0, 1}, {0, 1}, {0, 1}}, events);
    CHECK(turnover_ratio(busy, 0) == 1.0);
}

TEST_CASE("segment_lifecycles: zero events gives n censored records") {
    auto trace = make_trace(3,
                            {{0.3, 0.3, 0.4}, {0.2, 0.4, 0.4}, {0.1, 0.5, 0.4}},
                            {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, {});
    auto records = segment_lifecycles(trace);
    REQUIRE(records.size() == 3);
    for (const auto& rec : records) {
        CHECK(rec.birth_t == 1);
        CHECK_FALSE(rec.death_t.has_value());
    }
    CHECK_FALSE(mean_lifecycle(records, 0).has_value());
    CHECK_FALSE(mean_peak_height(records, 0).has_value());
}

TEST_CASE("segment_lifecycles: the hand-stepped replacement example") {
    // Rows replay the clamp-and-replace step example: slot 0 dies at t=3.
    auto trace = make_trace(
        2, {{0.3, 0.7}, {0.1, 0.9}, {0.0, 1.0}},
        {{0, 1}, {0, 1}, {2, 1}}, {{3, 0, 0, 2}});
    auto records = segment_lifecycles(trace);
    REQUIRE(records.size() == 3);
    // slot 0, item 0: born at 1, replaced at 3, peaked at its first row.
    CHECK(records[0].item_id == 0);
    CHECK(records[0].birth_t == 1);
    REQUIRE(records[0].death_t.has_value());
    CHECK(*records[0].death_t == 3);
    CHECK(records[0].peak_height == 0.3);
    CHECK(records[0].peak_t == 1);
    // slot 0, item 2: born at the event, censored.
    CHECK(records[1].item_id == 2);
    CHECK(records[1].birth_t == 3);
    CHECK_FALSE(records[1].death_t.has_value());
    // slot 1 survives throughout, peak tie broken to the earliest t.
    CHECK(records[2].item_id == 1);
    CHECK(records[2].peak_height == 1.0);
    CHECK(records[2].peak_t == 3);

    const auto lifecycle = mean_lifecycle(records, 0);
    REQUIRE(lifecycle.has_value());
    CHECK(*lifecycle == 2.0);
    const auto peak = mean_peak_height(records, 0);
    REQUIRE(peak.has_value());
    CHECK(*peak == 0.3);
    // burn_in past the only completed birth: absent again.
    CHECK_FALSE(mean_lifecycle(records, 1).has_value());
}

TEST_CASE("mean_lifecycle: definitional example") {
    std::vector<LifecycleRecord> records;
    LifecycleRecord rec;
    rec.birth_t = 10;
    rec.death_t = 50;
    records.push_back(rec);
    auto value = mean_lifecycle(records, 0);
    REQUIRE(value.has_value());
    CHECK(*value == 40.0);
}

TEST_CASE("lifecycle partition: intervals tile the trace per slot") {
    auto trace = run([] {
        ModelParams p;
        p.alpha = 3.0;
        p.n = 10;
        p.c = 4.0;
        p.iterations = 2000;
        p.seed = 17;
        p.burn_in = 0;
        return p;
    }());
    auto records = segment_lifecycles(trace);
    for (int slot = 0; slot < trace.params.n; ++slot) {
        std::vector<const LifecycleRecord*> mine;
        for (const auto& rec : records)
            if (rec.slot == slot) mine.push_back(&rec);
        REQUIRE_FALSE(mine.empty());
        CHECK(mine.front()->birth_t == 1);
        for (std::size_t k = 0; k + 1 < mine.size(); ++k) {
            REQUIRE(mine[k]->death_t.has_value());
            CHECK(*mine[k]->death_t == mine[k + 1]->birth_t);
        }
        CHECK_FALSE(mine.back()->death_t.has_value());
        for (const auto* rec : mine) {
            CHECK(rec->birth_t <= rec->peak_t);
            const int last = rec->death_t ? *rec->death_t : trace.rows();
            CHECK(rec->peak_t <= last);
            CHECK(rec->peak_height >= 0.0);
            CHECK(rec->peak_height <= 1.0);
        }
    }
}

TEST_CASE("summarize: hand-computed scripted trace") {
    // 3 slots, 6 iterations, one replacement. Metrics recomputed here by
    // direct enumeration, independent of the library path.
    std::vector<std::vector<double>> vis{
        {0.2, 0.3, 0.5}, {0.1, 0.4, 0.5}, {0.0, 0.5, 0.5},
        {0.1, 0.4, 0.5}, {0.2, 0.4, 0.4}, {0.2, 0.5, 0.3}};
    std::vector<std::vector<std::uint64_t>> ids{
        {0, 1, 2}, {0, 1, 2}, {3, 1, 2},
        {3, 1, 2}, {3, 1, 2}, {3, 1, 2}};
    auto trace = make_trace(3, vis, ids, {{3, 0, 0, 3}});
    auto summary = summarize(trace);

    double slope_total = 0.0;
    for (std::size_t r = 1; r < vis.size(); ++r)
        for (int i = 0; i < 3; ++i)
            slope_total += std::abs(vis[r][i] - vis[r - 1][i]);
    CHECK(summary.mean_slope ==
          doctest::Approx(slope_total / (5.0 * 3.0)).epsilon(1e-14));

    CHECK(summary.turnover_ratio == doctest::Approx(1.0 / 18.0));
    REQUIRE(summary.mean_lifecycle.has_value());
    CHECK(*summary.mean_lifecycle == 2.0);  // item 0: born 1, dead 3
    REQUIRE(summary.mean_peak_height.has_value());
    CHECK(*summary.mean_peak_height == 0.2);
    CHECK(summary.completed_lifecycles == 1);

    double gini_total = 0.0;
    for (const auto& row : vis) gini_total += gini_pairwise(row);
    CHECK(summary.mean_gini ==
          doctest::Approx(gini_total / 6.0).epsilon(1e-12));
}

TEST_CASE("summarize: fields in range and recomputation is identical") {
    ModelParams p;
    p.alpha = 2.0;
    p.n = 20;
    p.c = 12.0;
    p.iterations = 1500;
    p.seed = 77;
    auto trace = run(p);
    auto a = summarize(trace);
    auto b = summarize(trace);
    CHECK(a.mean_slope == b.mean_slope);
    CHECK(a.mean_gini == b.mean_gini);
    CHECK(a.mean_lifecycle == b.mean_lifecycle);
    CHECK(a.mean_peak_height == b.mean_peak_height);
    CHECK(a.turnover_ratio == b.turnover_ratio);

    CHECK(a.mean_slope >= 0.0);
    CHECK(a.turnover_ratio >= 0.0);
    CHECK(a.turnover_ratio <= 1.0);
    CHECK(a.mean_gini >= 0.0);
    CHECK(a.mean_gini <= 1.0);
    if (a.mean_peak_height) {
        CHECK(*a.mean_peak_height >= 0.0);
        CHECK(*a.mean_peak_height <= 1.0);
    }
}

TEST_CASE("summary_to_json: absent values serialize as null") {
    MetricsSummary s;
    s.mean_slope = 0.25;
    s.turnover_ratio = 0.0;
    s.mean_gini = 0.5;
    ModelParams p;
    const std::string json = summary_to_json(s, p);
    CHECK(json.find("\"mean_lifecycle\": null") != std::string::npos);
    CHECK(json.find("\"mean_peak_height\": null") != std::string::npos);
    CHECK(json.find("\"mean_slope\": 0.25") != std::string::npos);
    CHECK(json.find("\"completed_lifecycles\": 0") != std::string::npos);
}
