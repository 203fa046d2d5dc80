#pragma once

#include <ostream>

#include "arena/model.hpp"

namespace arena {

// Canonical trace serialization: `t,slot,item_id,visibility`, rows ordered
// by (t, slot), visibility printed with 17 significant digits.
void write_trace_csv(const RunTrace& trace, std::ostream& out);

// Events as `t,slot,old_id,new_id` in occurrence order.
void write_events_csv(const RunTrace& trace, std::ostream& out);

// Long-format rows (t, item_id, visibility) for t <= max_t, for stacked-area
// plots. Throws std::out_of_range if max_t is not in [1, rows].
void write_stackplot_csv(const RunTrace& trace, int max_t, std::ostream& out);

// 17-significant-digit rendering shared by all CSV writers.
std::string format_real(double x);

}  // namespace arena
