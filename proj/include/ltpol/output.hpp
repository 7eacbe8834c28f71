#pragma once

#include <iosfwd>
#include <string>

#include <ltpol/s0_engine.hpp>

namespace ltpol
{

struct s0_summary {
    // Number of n with s0[n] = -1.
    std::size_t unresolved = 0;
    // Largest n* with s0 finite on {0 .. n*}; -1 if s0[0] = -1.
    long finite_prefix = -1;
};

s0_summary summarize(const s0_result &);

// CSV with header n,w_q,s0,s0_minus_n; s0_minus_n is empty where s0 = -1.
void write_csv(const s0_result &, std::ostream &);

// Two columns "n s0_minus_n" for the resolved degrees, followed by a
// '#'-prefixed list of the degrees with s0 = -1.
void write_plot_data(const s0_result &, std::ostream &);

// One-line human summary (counts, finite prefix, wall time).
std::string summary_line(const s0_result &);

} // namespace ltpol
