#include <ltpol/output.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

namespace ltpol
{

s0_summary summarize(const s0_result &r)
{
    s0_summary s;
    bool prefix_open = true;
    for (std::size_t n = 0; n < r.s0.size(); ++n) {
        if (r.s0[n] == -1) {
            ++s.unresolved;
            prefix_open = false;
        } else if (prefix_open) {
            s.finite_prefix = static_cast<long>(n);
        }
    }
    return s;
}

void write_csv(const s0_result &r, std::ostream &os)
{
    os << "n,w_q,s0,s0_minus_n\n";
    for (std::size_t n = 0; n < r.s0.size(); ++n) {
        os << n << ',' << r.w[n] << ',' << r.s0[n] << ',';
        if (r.s0[n] != -1) {
            os << r.s0[n] - static_cast<long>(n);
        }
        os << '\n';
    }
}

void write_plot_data(const s0_result &r, std::ostream &os)
{
    os << "# n s0_minus_n (p=" << r.p << ", N=" << r.n_max << ")\n";
    for (std::size_t n = 0; n < r.s0.size(); ++n) {
        if (r.s0[n] != -1) {
            os << n << ' ' << r.s0[n] - static_cast<long>(n) << '\n';
        }
    }
    os << "# s0 = -1 at:\n";
    for (std::size_t n = 0; n < r.s0.size(); ++n) {
        if (r.s0[n] == -1) {
            os << "# " << n << '\n';
        }
    }
}

std::string summary_line(const s0_result &r)
{
    const auto s = summarize(r);
    std::ostringstream os;
    os << "p=" << r.p << " N=" << r.n_max << " backend=" << to_string(r.backend);
    if (r.backend == backend_kind::capped) {
        os << " M=" << r.precision;
    }
    os << " unresolved=" << s.unresolved << " finite_prefix=" << s.finite_prefix << " time=" << std::fixed
       << std::setprecision(2) << r.seconds << "s";
    return os.str();
}

} // namespace ltpol
