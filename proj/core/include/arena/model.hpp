#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "arena/params.hpp"

namespace arena {

// A slot whose potential visibility fell to zero or below was retired and a
// fresh item entered at iteration t.
struct ReplacementEvent {
    int t = 0;
    int slot = 0;
    std::uint64_t old_id = 0;
    std::uint64_t new_id = 0;
};

// Visibility shares of the arena at iteration t (current = pi^t) together
// with the previous step (previous = pi^{t-1}) needed by the trend term.
// Item identities are monotonically increasing counters; a replacement
// assigns the next unused id.
struct ArenaState {
    int t = 0;
    std::vector<double> current;
    std::vector<double> previous;
    std::vector<std::uint64_t> identities;
    std::uint64_t next_id = 0;
};

// Full record of one run: per-iteration visibility and identity matrices
// (row index r holds iteration t = r + 1), the replacement events, and the
// iterations where the all-zero normalization fallback fired.
struct RunTrace {
    ModelParams params;
    std::vector<std::vector<double>> visibility;
    std::vector<std::vector<std::uint64_t>> identity;
    std::vector<ReplacementEvent> events;
    std::vector<int> degenerate_resets;

    int rows() const { return static_cast<int>(visibility.size()); }
};

struct InitOutcome {
    ArenaState state;
    std::vector<double> row1;
    std::vector<double> row2;
    bool degenerate_reset = false;
};

struct StepOutcome {
    std::vector<ReplacementEvent> events;
    bool degenerate_reset = false;
};

// Initialization: row 1 is a normalized uniform draw, row 2 adds one noise
// realization per item and runs the clamp + normalize pipeline. Leaves the
// state at t = 2 with previous = row 1, current = row 2.
InitOutcome init_arena(const ModelParams& params, std::mt19937_64& rng);

// Same, but with an injected step-2 noise vector (length n); the rng is used
// for the uniform draws only.
InitOutcome init_arena(const ModelParams& params, std::mt19937_64& rng,
                       std::span<const double> noise);

// One iteration of the dynamic with an injected noise vector (length n).
// Advances the state from t to t+1 and reports replacements.
StepOutcome step(ArenaState& state, const ModelParams& params,
                 std::span<const double> noise);

// Executes init_arena plus (iterations - 2) steps with freshly drawn noise.
// Pure function of params: identical params give identical traces.
RunTrace run(const ModelParams& params);

}  // namespace arena
