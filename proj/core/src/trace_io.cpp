#include "arena/trace_io.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

namespace arena {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
    out << "t,slot,item_id,visibility\n";
    const int n = trace.params.n;
    for (int r = 0; r < trace.rows(); ++r) {
        for (int i = 0; i < n; ++i) {
            out << (r + 1) << ',' << i << ',' << trace.identity[r][i] << ','
                << format_real(trace.visibility[r][i]) << '\n';
        }
    }
}

void write_events_csv(const RunTrace& trace, std::ostream& out) {
    out << "t,slot,old_id,new_id\n";
    for (const ReplacementEvent& ev : trace.events) {
        out << ev.t << ',' << ev.slot << ',' << ev.old_id << ',' << ev.new_id
            << '\n';
    }
}

void write_stackplot_csv(const RunTrace& trace, int max_t, std::ostream& out) {
    if (max_t < 1 || max_t > trace.rows())
        throw std::out_of_range("max_t must be in [1, trace rows]");
    out << "t,item_id,visibility\n";
    const int n = trace.params.n;
    for (int r = 0; r < max_t; ++r) {
        for (int i = 0; i < n; ++i) {
            out << (r + 1) << ',' << trace.identity[r][i] << ','
                << format_real(trace.visibility[r][i]) << '\n';
        }
    }
}

}  // namespace arena
