#include "arena/model.hpp"

#include <algorithm>
#include <numeric>

namespace arena {

namespace {

void normalize(std::vector<double>& v) {
    double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= total;
}

std::vector<double> draw_row1(const ModelParams& params,
                              std::mt19937_64& rng) {
    std::vector<double> row(params.n);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (double& x : row) x = uniform(rng);
    normalize(row);
    return row;
}

// Step 2 of initialization: add one noise realization per item, clamp at
// zero, renormalize.
InitOutcome finish_init(const ModelParams& params, std::vector<double> row1,
                        std::span<const double> noise) {
    const int n = params.n;
    InitOutcome out;
    out.row1 = std::move(row1);
    out.row2.resize(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        out.row2[i] = std::max(0.0, out.row1[i] + noise[i]);
        total += out.row2[i];
    }
    if (total == 0.0) {
        std::fill(out.row2.begin(), out.row2.end(), 1.0 / n);
        out.degenerate_reset = true;
    } else {
        for (double& x : out.row2) x /= total;
    }
    out.state.t = 2;
    out.state.previous = out.row1;
    out.state.current = out.row2;
    out.state.identities.resize(n);
    std::iota(out.state.identities.begin(), out.state.identities.end(),
              std::uint64_t{0});
    out.state.next_id = static_cast<std::uint64_t>(n);
    return out;
}

}  // namespace

InitOutcome init_arena(const ModelParams& params, std::mt19937_64& rng,
                       std::span<const double> noise) {
    params.validate();
    return finish_init(params, draw_row1(params, rng), noise);
}

InitOutcome init_arena(const ModelParams& params, std::mt19937_64& rng) {
    params.validate();
    // Fixed draw order: the n uniforms first, then the n step-2 noises.
    std::vector<double> row1 = draw_row1(params, rng);
    std::normal_distribution<double> gauss(0.0, noise_sigma(params));
    std::vector<double> noise(params.n);
    for (double& x : noise) x = gauss(rng);
    return finish_init(params, std::move(row1), noise);
}

StepOutcome step(ArenaState& state, const ModelParams& params,
                 std::span<const double> noise) {
    const int n = params.n;
    StepOutcome out;
    const int next_t = state.t + 1;

    std::vector<double> potential(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cur = state.current[i];
        potential[i] = cur + params.alpha * (cur - state.previous[i]) + noise[i];
        total += std::max(0.0, potential[i]);
    }

    if (total == 0.0) {
        // Normalization undefined: reset to the uniform vector, keep
        // identities.
        state.previous = state.current;
        std::fill(state.current.begin(), state.current.end(), 1.0 / n);
        state.t = next_t;
        out.degenerate_reset = true;
        return out;
    }

    std::vector<double> next(n);
    std::vector<double> next_previous = state.current;
    for (int i = 0; i < n; ++i) {
        if (potential[i] <= 0.0) {
            next[i] = 0.0;
            if (state.current[i] > 0.0) {
                // Death: fresh identity, history reset so the newborn
                // carries no momentum.
                out.events.push_back(
                    {next_t, i, state.identities[i], state.next_id});
                state.identities[i] = state.next_id++;
                next_previous[i] = 0.0;
            }
        } else {
            next[i] = potential[i] / total;
        }
    }

    state.previous = std::move(next_previous);
    state.current = std::move(next);
    state.t = next_t;
    return out;
}

RunTrace run(const ModelParams& params) {
    params.validate();
    const int n = params.n;

    RunTrace trace;
    trace.params = params;
    trace.visibility.reserve(params.iterations);
    trace.identity.reserve(params.iterations);

    std::mt19937_64 rng(params.seed);
    InitOutcome init = init_arena(params, rng);
    trace.visibility.push_back(init.row1);
    trace.visibility.push_back(init.row2);
    trace.identity.push_back(init.state.identities);
    trace.identity.push_back(init.state.identities);
    if (init.degenerate_reset) trace.degenerate_resets.push_back(2);

    ArenaState state = std::move(init.state);
    std::normal_distribution<double> gauss(0.0, noise_sigma(params));
    std::vector<double> noise(n);
    for (int t = 3; t <= params.iterations; ++t) {
        for (int i = 0; i < n; ++i) noise[i] = gauss(rng);
        StepOutcome outcome = step(state, params, noise);
        trace.visibility.push_back(state.current);
        trace.identity.push_back(state.identities);
        for (const ReplacementEvent& ev : outcome.events)
            trace.events.push_back(ev);
        if (outcome.degenerate_reset) trace.degenerate_resets.push_back(t);
    }
    return trace;
}

}  // namespace arena
