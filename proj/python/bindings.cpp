#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <ltpol/lubin_tate.hpp>
#include <ltpol/output.hpp>
#include <ltpol/psi_kernel.hpp>
#include <ltpol/s0_engine.hpp>
#include <ltpol/selftest.hpp>

namespace py = pybind11;
using namespace ltpol;

namespace
{

arithmetic_context make_ctx(long p, int n_max, const std::string &backend, std::optional<val_t> precision)
{
    const auto kind = parse_backend(backend);
    return arithmetic_context::make(p, n_max, kind, precision.value_or(default_precision(p, n_max)));
}

// (valuation or None, value string) per coefficient h_0 .. h_N.
template <padic_scalar S>
std::vector<std::pair<std::optional<val_t>, std::string>> log_coeffs_impl(const arithmetic_context &ctx)
{
    std::vector<std::pair<std::optional<val_t>, std::string>> out;
    for (const auto &h : log_coefficients<S>(ctx)) {
        if (h.is_exact_zero()) {
            out.emplace_back(std::nullopt, "0");
        } else {
            out.emplace_back(h.valuation(), h.to_string());
        }
    }
    return out;
}

py::dict result_dict(const s0_result &r)
{
    py::dict d;
    d["p"] = r.p;
    d["n_max"] = r.n_max;
    d["backend"] = to_string(r.backend);
    d["precision"] = r.precision == kInfinity ? py::object(py::none()) : py::object(py::int_(r.precision));
    d["s0"] = r.s0;
    d["w"] = r.w;
    std::vector<std::optional<val_t>> pivots;
    for (val_t v : r.final_pivot_valuations) {
        pivots.push_back(v == kInfinity ? std::nullopt : std::optional<val_t>(v));
    }
    d["pivot_valuations"] = pivots;
    d["worst_precision"] = r.worst_precision == kInfinity ? py::object(py::none()) : py::object(py::int_(r.worst_precision));
    d["fuzzy_discards"] = r.fuzzy_discards;
    const auto sum = summarize(r);
    d["unresolved"] = sum.unresolved;
    d["finite_prefix"] = sum.finite_prefix;
    d["seconds"] = r.seconds;
    std::ostringstream csv;
    write_csv(r, csv);
    d["csv"] = csv.str();
    d["summary"] = summary_line(r);
    return d;
}

} // namespace

PYBIND11_MODULE(_ltpol, m)
{
    m.doc() = "s0(n) for the Lubin-Tate group of Q_{p^2} with [p](X) = pX + X^q";

    py::register_exception<precision_error>(m, "PrecisionError", PyExc_ArithmeticError);
    py::register_exception<invariant_violation>(m, "InvariantViolation", PyExc_RuntimeError);
    py::register_exception<arithmetic_error>(m, "ArithmeticError", PyExc_ValueError);

    m.def("wq", &wq, py::arg("n"), py::arg("q"));
    m.def("default_precision", &default_precision, py::arg("p"), py::arg("n_max"));
    m.def("is_prime", &is_prime, py::arg("n"));
    m.def("generator_count", &psi_kernel_generator_count, py::arg("q"), py::arg("n_max"));

    m.def(
        "log_coefficients",
        [](long p, int n_max, const std::string &backend, std::optional<val_t> precision) {
            const auto ctx = make_ctx(p, n_max, backend, precision);
            py::gil_scoped_release release;
            return ctx.backend == backend_kind::exact ? log_coeffs_impl<exact_scalar>(ctx)
                                                      : log_coeffs_impl<capped_scalar>(ctx);
        },
        py::arg("p"), py::arg("n_max"), py::arg("backend") = "exact", py::arg("precision") = py::none());

    m.def(
        "s0_scan",
        [](long p, int n_max, const std::string &backend, std::optional<val_t> precision, int threads,
           std::optional<std::uint64_t> shuffle_seed) {
            const auto ctx = make_ctx(p, n_max, backend, precision);
            scan_options opts;
            opts.threads = threads;
            opts.shuffle_seed = shuffle_seed;
            s0_result res;
            {
                py::gil_scoped_release release;
                res = run_s0_scan(ctx, opts);
            }
            return result_dict(res);
        },
        py::arg("p"), py::arg("n_max"), py::arg("backend") = "capped", py::arg("precision") = py::none(),
        py::arg("threads") = 1, py::arg("shuffle_seed") = py::none());

    m.def(
        "selftest",
        [](long p, int n_max, val_t precision, std::uint64_t seed, int threads) {
            selftest_config cfg{p, n_max, precision, seed, threads};
            arithmetic_context::make(p, n_max, backend_kind::exact, 0);
            std::vector<check_result> out;
            {
                py::gil_scoped_release release;
                out = run_selftest(cfg);
            }
            py::list rows;
            for (const auto &c : out) {
                py::dict d;
                d["name"] = c.name;
                d["passed"] = c.passed;
                d["detail"] = c.detail;
                d["seconds"] = c.seconds;
                rows.append(d);
            }
            return rows;
        },
        py::arg("p") = 2, py::arg("n_max") = 24, py::arg("precision") = 0, py::arg("seed") = 1,
        py::arg("threads") = 1);
}
