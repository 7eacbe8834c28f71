// One PASS/FAIL line per acceptance criterion. Criterion 6 runs only with
// --full-scale; otherwise it reports DEFERRED with measured partial-N runs.
#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <ltpol/carleman.hpp>
#include <ltpol/lubin_tate.hpp>
#include <ltpol/output.hpp>
#include <ltpol/psi_kernel.hpp>
#include <ltpol/s0_engine.hpp>

using namespace ltpol;

namespace
{

using poly = series<exact_scalar>;

struct verdict {
    bool passed = true;
    std::ostringstream note;
    void require(bool ok, const std::string &what)
    {
        if (!ok && passed) {
            note << "failed: " << what << "; ";
        }
        passed = passed && ok;
    }
};

arithmetic_context exact_ctx(long p, int n) { return arithmetic_context::make(p, n, backend_kind::exact, 0); }

arithmetic_context capped_ctx(long p, int n, val_t m = 0)
{
    return arithmetic_context::make(p, n, backend_kind::capped, m > 0 ? m : default_precision(p, n));
}

std::string csv_of(const s0_result &r)
{
    std::ostringstream os;
    write_csv(r, os);
    return os.str();
}

void structural_identities(verdict &v)
{
    for (long p : {2L, 3L}) {
        const auto ctx = exact_ctx(p, 24);
        const padic_ring &r = ctx.scalars();
        const std::string at = " (p=" + std::to_string(p) + ")";
        const auto log = log_series<exact_scalar>(ctx);
        v.require((phi(log) - exact_scalar::from_integer(p, r) * log).is_exact_zero(), "functional equation" + at);
        const auto exp = exp_series(log);
        const auto x = poly::monomial(scalar_one<exact_scalar>(r), 1, r, 24);
        v.require((series_compose(exp, log) - x).is_exact_zero(), "exp o log" + at);

        const auto d = carleman_matrix(log);
        const auto dinv = invert_unitriangular(d);
        const std::size_t n = d.dim();
        for (std::size_t i = 0; i < n; ++i) {
            v.require((d(i, i) - scalar_one<exact_scalar>(r)).is_exact_zero(), "unit diagonal" + at);
            for (std::size_t j = 0; j < i; ++j) {
                v.require(d(i, j).is_exact_zero(), "upper triangular" + at);
            }
        }
        // (D C)[i][j] = sum_k D[i][k] c_{k,j}(T) = T^i D[i][j]
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<int_polynomial<exact_scalar>> col;
            for (std::size_t k = 0; k <= j; ++k) {
                col.push_back(c_entry(d, dinv, k, j));
            }
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t t = 0; t <= j; ++t) {
                    exact_scalar acc = scalar_zero<exact_scalar>(r);
                    for (std::size_t k = i; k <= j; ++k) {
                        acc += d(i, k) * col[k].coeffs()[t];
                    }
                    const auto expected = (t == i && i <= j) ? d(i, j) : scalar_zero<exact_scalar>(r);
                    v.require((acc - expected).is_exact_zero(), "D C = diag(T^i) D" + at);
                }
            }
        }
        std::size_t count = 0;
        for (const auto &g : psi_kernel_generators<exact_scalar>(ctx)) {
            v.require(psi(g).is_exact_zero(), "psi(generator) = 0" + at);
            ++count;
        }
        v.note << "p=" << p << ": " << count << " generators; ";
    }
}

void oracle_equivalence(verdict &v)
{
    const auto ctx = exact_ctx(2, 16);
    const padic_ring &r = ctx.scalars();
    const auto log = log_series<exact_scalar>(ctx);
    const auto exp = exp_series(log);
    const auto d = carleman_matrix(log);
    const auto dinv = invert_unitriangular(d);
    int compared = 0;
    for (long a = 0; a <= 7; ++a) {
        const auto as = exact_scalar::from_integer(a, r);
        for (unsigned i = 0; i <= 8; ++i) {
            const auto row = direct_c_row(as, i, log, exp);
            for (std::size_t j = 0; j <= 16; ++j) {
                const auto direct = j < row.size() ? row[j] : scalar_zero<exact_scalar>(r);
                v.require((c_entry(d, dinv, i, j).evaluate(as) - direct).is_exact_zero(),
                          "c_{" + std::to_string(i) + "," + std::to_string(j) + "}(" + std::to_string(a) + ")");
                ++compared;
            }
        }
    }
    v.note << compared << " entries compared; ";
}

void mahler_valuations(verdict &v)
{
    for (auto [p, n] : {std::pair{2L, 20}, std::pair{3L, 81}}) {
        const auto ctx = exact_ctx(p, n);
        const auto d = carleman_matrix(log_series<exact_scalar>(ctx));
        const auto dinv = invert_unitriangular(d);
        long k = 1;
        for (long qk = ctx.q; qk <= n; qk *= ctx.q, ++k) {
            const auto c = c_entry(d, dinv, 1, static_cast<std::size_t>(qk));
            const val_t got = c.leading().valuation();
            const val_t expected = -(qk - 1) / (ctx.q - 1);
            v.require(c.degree() == qk && got == expected,
                      "p=" + std::to_string(p) + " k=" + std::to_string(k));
            v.note << "p=" << p << " k=" << k << ": v=" << got << "; ";
        }
    }
}

void backend_equivalence(verdict &v)
{
    for (auto [p, n] : {std::pair{2L, 40}, std::pair{3L, 24}}) {
        const auto re = run_s0_scan(exact_ctx(p, n));
        const auto rc = run_s0_scan(capped_ctx(p, n));
        v.require(re.s0 == rc.s0 && re.final_pivot_valuations == rc.final_pivot_valuations,
                  "s0 result p=" + std::to_string(p));
        v.require(csv_of(re) == csv_of(rc), "csv bytes p=" + std::to_string(p));
        v.note << "p=" << p << " N=" << n << " exact " << std::fixed << std::setprecision(1) << re.seconds
               << "s capped " << rc.seconds << "s; ";
    }
}

void desk_scale(verdict &v)
{
    const auto big = run_s0_scan(capped_ctx(2, 120));
    const auto small = run_s0_scan(capped_ctx(2, 80));
    for (std::size_t n = 0; n < big.s0.size(); ++n) {
        if (big.s0[n] != -1) {
            v.require(big.s0[n] >= static_cast<int>(n), "s0[n] >= n at n=" + std::to_string(n));
        }
        v.require(big.final_pivot_valuations[n] >= -big.w[n], "floor at n=" + std::to_string(n));
    }
    for (std::size_t n = 0; n < small.s0.size(); ++n) {
        if (big.s0[n] != -1 && big.s0[n] <= 80) {
            v.require(small.s0[n] == big.s0[n], "N-stability at n=" + std::to_string(n));
        }
        if (small.s0[n] != -1) {
            v.require(big.s0[n] == small.s0[n], "N-stability at n=" + std::to_string(n));
        }
    }
    v.note << summary_line(big) << " worst_precision=" << big.worst_precision << "; ";
}

void full_scale(verdict &v, int n, val_t m)
{
    for (auto [p, expected] : {std::pair{2L, 206L}, std::pair{3L, 226L}}) {
        const auto res = run_s0_scan(capped_ctx(p, n, m));
        const auto sum = summarize(res);
        v.note << summary_line(res) << "; ";
        if (n == 800) {
            v.require(sum.finite_prefix == expected, "finite prefix p=" + std::to_string(p) + " expected "
                                                         + std::to_string(expected));
        }
    }
}

} // namespace

int main(int argc, char **argv)
{
    bool full = false;
    for (int i = 1; i < argc; ++i) {
        full = full || std::strcmp(argv[i], "--full-scale") == 0;
    }
    const std::vector<std::pair<std::string, std::function<void(verdict &)>>> criteria = {
        {"structural identities (exact, p in {2,3}, N=24)", structural_identities},
        {"oracle equivalence (exact, p=2, N=16)", oracle_equivalence},
        {"mahler valuations (p=2 N=20, p=3 N=81)", mahler_valuations},
        {"backend equivalence ((2,40), (3,24))", backend_equivalence},
        {"desk-scale s0 (capped, p=2, N=120 vs N=80)", desk_scale},
    };
    int failed = 0;
    int index = 1;
    for (const auto &[name, run] : criteria) {
        verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            run(v);
        } catch (const std::exception &e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !v.passed;
        std::cout << (v.passed ? "PASS" : "FAIL") << " criterion " << index++ << ": " << name << " [" << std::fixed
                  << std::setprecision(1) << secs << "s] " << v.note.str() << std::endl;
    }

    verdict v6;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        full_scale(v6, full ? 800 : 200, 6000);
    } catch (const std::exception &e) {
        v6.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const char *status = !v6.passed ? "FAIL" : (full ? "PASS" : "DEFERRED");
    failed += full && !v6.passed;
    std::cout << status << " criterion 6: full scale (M=6000, N=" << (full ? 800 : 200)
              << (full ? ")" : ", partial; full run with --full-scale)") << " [" << std::fixed
              << std::setprecision(1) << secs << "s] " << v6.note.str() << std::endl;
    return failed == 0 ? 0 : 1;
}
