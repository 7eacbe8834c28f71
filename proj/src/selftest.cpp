#include <ltpol/selftest.hpp>

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include <ltpol/carleman.hpp>
#include <ltpol/lubin_tate.hpp>
#include <ltpol/output.hpp>
#include <ltpol/psi_kernel.hpp>
#include <ltpol/s0_engine.hpp>

namespace ltpol
{
namespace
{

using poly = series<exact_scalar>;

// Sizes for the exact-arithmetic checks, kept small so the suite stays fast
// at any configured N.
constexpr int kStructuralN = 32;
constexpr int kOracleN = 16;
constexpr int kMahlerN = 256;
constexpr int kBackendN = 24;

struct outcome {
    bool passed = true;
    std::ostringstream detail;
    void fail(const std::string &what)
    {
        if (passed) {
            detail << what;
        }
        passed = false;
    }
};

exact_scalar rational(long num, long den, const padic_ring &r) { return exact_scalar::from_rational(num, den, r); }

poly random_polynomial(std::mt19937_64 &rng, std::size_t degree, const padic_ring &r)
{
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 50);
    std::vector<exact_scalar> c;
    for (std::size_t k = 0; k <= degree; ++k) {
        c.push_back(rational(num(rng), den(rng), r));
    }
    return poly::polynomial(std::move(c), r);
}

outcome check_functional_equation(const arithmetic_context &ctx)
{
    outcome o;
    const auto log = log_series<exact_scalar>(ctx);
    if (!(phi(log) - exact_scalar::from_integer(ctx.p, ctx.scalars()) * log).is_exact_zero()) {
        o.fail("log(pX + X^q) != p log(X)");
    }
    for (int n = 1; n <= ctx.n_max; ++n) {
        if ((n - 1) % (ctx.q - 1) != 0 && !log.coeff(n).is_exact_zero()) {
            o.fail("h_" + std::to_string(n) + " outside the support");
        }
    }
    o.detail << "N=" << ctx.n_max;
    return o;
}

outcome check_exp_log(const arithmetic_context &ctx)
{
    outcome o;
    const auto log = log_series<exact_scalar>(ctx);
    const auto exp = exp_series(log);
    const auto x = poly::monomial(scalar_one<exact_scalar>(ctx.scalars()), 1, ctx.scalars(), ctx.n_max);
    if (!(series_compose(exp, log) - x).is_exact_zero()) {
        o.fail("exp(log(X)) != X");
    }
    if (!(series_compose(log, exp) - x).is_exact_zero()) {
        o.fail("log(exp(X)) != X");
    }
    o.detail << "N=" << ctx.n_max;
    return o;
}

outcome check_psi_generators(const arithmetic_context &ctx)
{
    outcome o;
    const auto gens = psi_kernel_generators<exact_scalar>(ctx);
    if (gens.size() != psi_kernel_generator_count(ctx.q, ctx.n_max)) {
        o.fail("generator count");
    }
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (!psi(gens[g]).is_exact_zero()) {
            o.fail("psi(generator " + std::to_string(g) + ") != 0");
        }
    }
    o.detail << gens.size() << " generators, N=" << ctx.n_max;
    return o;
}

outcome check_psi_linearity(const arithmetic_context &ctx, std::mt19937_64 &rng)
{
    outcome o;
    const padic_ring &r = ctx.scalars();
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_polynomial(rng, 1 + rng() % 4, r);
        const auto f = random_polynomial(rng, 1 + rng() % (2 * ctx.q), r);
        if (!(psi(series_mul(phi(g), f)) - series_mul(g, psi(f))).is_exact_zero()) {
            o.fail("psi(phi(g) f) != g psi(f) at trial " + std::to_string(trial));
        }
    }
    o.detail << "20 random pairs";
    return o;
}

outcome check_carleman_identity(const arithmetic_context &ctx)
{
    outcome o;
    const padic_ring &r = ctx.scalars();
    const auto d = carleman_matrix(log_series<exact_scalar>(ctx));
    const auto dinv = invert_unitriangular(d);
    const std::size_t n = d.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(d(i, i) - scalar_one<exact_scalar>(r)).is_exact_zero()) {
            o.fail("D not unit-diagonal");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!d(i, j).is_exact_zero()) {
                o.fail("D not upper triangular");
            }
        }
    }
    std::vector<int_polynomial<exact_scalar>> col(n);
    for (std::size_t j = 0; j < n && o.passed; ++j) {
        for (std::size_t k = 0; k <= j; ++k) {
            col[k] = c_entry(d, dinv, k, j);
        }
        // (D C)[i][j] = sum_k D[i][k] c_{k,j}(T) must equal T^i D[i][j].
        for (std::size_t i = 0; i <= j; ++i) {
            std::vector<exact_scalar> acc(j + 1, scalar_zero<exact_scalar>(r));
            for (std::size_t k = i; k <= j; ++k) {
                for (std::size_t t = 0; t <= j; ++t) {
                    if (!col[k].coeffs()[t].is_exact_zero()) {
                        acc[t] += d(i, k) * col[k].coeffs()[t];
                    }
                }
            }
            for (std::size_t t = 0; t <= j; ++t) {
                const auto expected = t == i ? d(i, j) : scalar_zero<exact_scalar>(r);
                if (!(acc[t] - expected).is_exact_zero()) {
                    o.fail("(D C)[" + std::to_string(i) + "][" + std::to_string(j) + "] mismatch");
                }
            }
        }
    }
    o.detail << "N=" << ctx.n_max;
    return o;
}

outcome check_oracle(const arithmetic_context &ctx, std::mt19937_64 &rng)
{
    outcome o;
    const padic_ring &r = ctx.scalars();
    const auto log = log_series<exact_scalar>(ctx);
    const auto exp = exp_series(log);
    const auto d = carleman_matrix(log);
    const auto dinv = invert_unitriangular(d);
    std::vector<long> points = {0, 1, 2, 3, 4, 5, 6, 7};
    std::uniform_int_distribution<long> extra(-1000, 1000);
    for (int k = 0; k < 4; ++k) {
        points.push_back(extra(rng));
    }
    const unsigned imax = static_cast<unsigned>(std::min(8, ctx.n_max));
    for (long a : points) {
        const auto as = exact_scalar::from_integer(a, r);
        for (unsigned i = 0; i <= imax; ++i) {
            const auto row = direct_c_row(as, i, log, exp);
            for (std::size_t j = 0; j <= static_cast<std::size_t>(ctx.n_max); ++j) {
                const auto direct = j < row.size() ? row[j] : scalar_zero<exact_scalar>(r);
                if (!(c_entry(d, dinv, i, j).evaluate(as) - direct).is_exact_zero()) {
                    o.fail("c_{" + std::to_string(i) + "," + std::to_string(j) + "}(" + std::to_string(a) + ")");
                }
            }
        }
    }
    o.detail << points.size() << " points, i<=" << imax << ", N=" << ctx.n_max;
    return o;
}

outcome check_mahler(const arithmetic_context &ctx)
{
    outcome o;
    const auto dinv = invert_unitriangular(carleman_matrix(log_series<exact_scalar>(ctx)));
    // lc(c_{1,q^k}) = Dinv[1][q^k]
    long k = 1;
    for (long qk = ctx.q; qk <= ctx.n_max; qk *= ctx.q, ++k) {
        const val_t v = dinv(1, static_cast<std::size_t>(qk)).valuation();
        const val_t expected = -(qk - 1) / (ctx.q - 1);
        o.detail << (k > 1 ? ", " : "") << "k=" << k << ":" << v;
        if (v != expected || expected != -wq(qk, ctx.q)) {
            o.fail(" expected " + std::to_string(expected) + " at k=" + std::to_string(k));
        }
    }
    if (k == 1) {
        o.detail << "no q^k <= N";
    }
    return o;
}

outcome check_integer_valued(const arithmetic_context &ctx, std::mt19937_64 &rng)
{
    outcome o;
    const padic_ring &r = ctx.scalars();
    const auto d = carleman_matrix(log_series<exact_scalar>(ctx));
    const auto dinv = invert_unitriangular(d);
    std::uniform_int_distribution<long> point(-100000, 100000);
    std::vector<exact_scalar> points;
    for (int k = 0; k < 6; ++k) {
        points.push_back(exact_scalar::from_integer(point(rng), r));
    }
    for (std::size_t i = 0; i < d.dim(); ++i) {
        for (std::size_t j = i; j < d.dim(); ++j) {
            const auto c = c_entry(d, dinv, i, j);
            const long deg = c.degree();
            if (deg >= 0 && c.leading().valuation() < -wq(deg, ctx.q)) {
                o.fail("lc(c_{" + std::to_string(i) + "," + std::to_string(j) + "}) below -w_q");
            }
            for (const auto &a : points) {
                const auto v = c.evaluate(a);
                if (!v.is_exact_zero() && v.valuation() < 0) {
                    o.fail("c_{" + std::to_string(i) + "," + std::to_string(j) + "} not integral");
                }
            }
        }
    }
    o.detail << "N=" << ctx.n_max;
    return o;
}

outcome check_scalar_backends(long p, std::mt19937_64 &rng)
{
    outcome o;
    const padic_ring re(p, 0), rc(p, 64);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        long n0 = num(rng), d0 = den(rng);
        auto e = exact_scalar::from_rational(n0, d0, re);
        auto c = capped_scalar::from_rational(n0, d0, rc);
        const int depth = static_cast<int>(rng() % 51);
        for (int k = 0; k < depth; ++k) {
            const long n1 = num(rng), d1 = den(rng);
            const auto e1 = exact_scalar::from_rational(n1, d1, re);
            const auto c1 = capped_scalar::from_rational(n1, d1, rc);
            switch (rng() % 4) {
            case 0: e += e1, c += c1; break;
            case 1: e -= e1, c -= c1; break;
            case 2: e *= e1, c *= c1; break;
            default:
                if (!e1.is_exact_zero()) {
                    e /= e1, c /= c1;
                }
            }
        }
        if (e.is_exact_zero() || c.is_precision_zero()) {
            if (!c.is_zero() || (!e.is_exact_zero() && e.valuation() < c.abs_precision())) {
                o.fail("zero mismatch at trial " + std::to_string(trial));
            }
            continue;
        }
        ++compared;
        const val_t digits = c.rel_precision();
        if (c.valuation() != e.valuation() || c.unit_residue(digits) != e.unit_residue(digits)) {
            o.fail("value mismatch at trial " + std::to_string(trial));
        }
    }
    o.detail << compared << " random expressions";
    return o;
}

std::string csv_of(const s0_result &r)
{
    std::ostringstream os;
    write_csv(r, os);
    return os.str();
}

outcome check_backend_equivalence(long p, int n, val_t precision, int threads)
{
    outcome o;
    const auto ce = arithmetic_context::make(p, n, backend_kind::exact, 0);
    const auto cc = arithmetic_context::make(p, n, backend_kind::capped, precision);
    scan_options opts;
    opts.threads = threads;
    const auto re = run_s0_scan(ce, opts);
    const auto rc = run_s0_scan(cc, opts);
    if (re.s0 != rc.s0) {
        o.fail("s0 differs");
    }
    if (re.final_pivot_valuations != rc.final_pivot_valuations) {
        o.fail("pivot valuations differ");
    }
    if (csv_of(re) != csv_of(rc)) {
        o.fail("csv differs");
    }
    o.detail << "N=" << n << ", M=" << precision;
    return o;
}

outcome check_capped_scan(long p, int n, val_t precision, int threads, std::uint64_t seed)
{
    outcome o;
    const auto ctx = arithmetic_context::make(p, n, backend_kind::capped, precision);
    scan_options opts;
    opts.threads = threads;
    const auto res = run_s0_scan(ctx, opts);
    for (std::size_t k = 0; k < res.s0.size(); ++k) {
        if (res.s0[k] != -1 && res.s0[k] < static_cast<int>(k)) {
            o.fail("s0[" + std::to_string(k) + "] < " + std::to_string(k));
        }
        if (res.final_pivot_valuations[k] < -res.w[k]) {
            o.fail("pivot below the floor at " + std::to_string(k));
        }
    }
    opts.shuffle_seed = seed;
    const int nshuffle = std::min(n, 40);
    const auto small = arithmetic_context::make(p, nshuffle, backend_kind::capped, precision);
    const auto plain = run_s0_scan(small, {});
    if (run_s0_scan(small, opts).s0 != plain.s0) {
        o.fail("s0 depends on generator order");
    }
    for (std::size_t k = 0; k < plain.s0.size(); ++k) {
        if (plain.s0[k] != -1 && plain.s0[k] != res.s0[k]) {
            o.fail("N-stability fails at " + std::to_string(k));
        }
    }
    const auto sum = summarize(res);
    o.detail << "N=" << n << ", M=" << precision << ", finite prefix " << sum.finite_prefix << ", " << sum.unresolved
             << " unresolved, worst precision " << res.worst_precision;
    return o;
}

} // namespace

std::vector<check_result> run_selftest(const selftest_config &cfg,
                                       const std::function<void(const check_result &)> &on_check)
{
    std::mt19937_64 rng(cfg.seed);
    const int ns = std::min(cfg.n_max, kStructuralN);
    const int no = std::min(cfg.n_max, kOracleN);
    const int nb = std::min(cfg.n_max, kBackendN);
    int nm = 1;
    for (long qk = cfg.p * cfg.p; qk <= std::min(cfg.n_max, kMahlerN); qk *= cfg.p * cfg.p) {
        nm = static_cast<int>(qk);
    }
    const auto exact = [&](int n) { return arithmetic_context::make(cfg.p, n, backend_kind::exact, 0); };
    const auto prec = [&](int n) { return cfg.precision > 0 ? cfg.precision : default_precision(cfg.p, n); };

    const std::vector<std::pair<std::string, std::function<outcome()>>> checks = {
        {"scalar backends agree", [&] { return check_scalar_backends(cfg.p, rng); }},
        {"log functional equation", [&] { return check_functional_equation(exact(ns)); }},
        {"exp and log are inverse", [&] { return check_exp_log(exact(ns)); }},
        {"psi vanishes on generators", [&] { return check_psi_generators(exact(ns)); }},
        {"psi twisted linearity", [&] { return check_psi_linearity(exact(ns), rng); }},
        {"carleman identity D C = diag(T^i) D", [&] { return check_carleman_identity(exact(ns)); }},
        {"c polynomials match direct powering", [&] { return check_oracle(exact(no), rng); }},
        {"mahler valuations", [&] { return check_mahler(exact(nm)); }},
        {"c polynomials integer valued", [&] { return check_integer_valued(exact(ns), rng); }},
        {"backend equivalence", [&] { return check_backend_equivalence(cfg.p, nb, prec(nb), cfg.threads); }},
        {"capped scan invariants",
         [&] { return check_capped_scan(cfg.p, cfg.n_max, prec(cfg.n_max), cfg.threads, cfg.seed); }},
    };

    std::vector<check_result> out;
    for (const auto &[name, run] : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        check_result cr;
        cr.name = name;
        try {
            auto o = run();
            cr.passed = o.passed;
            cr.detail = o.detail.str();
        } catch (const precision_error &) {
            throw;
        } catch (const std::exception &e) {
            cr.passed = false;
            cr.detail = e.what();
        }
        cr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (on_check) {
            on_check(cr);
        }
        out.push_back(std::move(cr));
    }
    return out;
}

} // namespace ltpol
