#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <ltpol/lubin_tate.hpp>
#include <ltpol/output.hpp>
#include <ltpol/s0_engine.hpp>
#include <ltpol/selftest.hpp>

namespace
{

enum exit_code : int { ok = 0, usage = 1, precision_insufficient = 2, selftest_failed = 3 };

struct run_config {
    long p = 2;
    int n_max = 24;
    std::optional<ltpol::val_t> precision;
    std::optional<std::string> backend;
    std::string out;
    std::string plot_data;
    std::uint64_t seed = 1;
    int threads = 1;
};

ltpol::val_t resolved_precision(const run_config &cfg)
{
    return cfg.precision ? *cfg.precision : ltpol::default_precision(cfg.p, cfg.n_max);
}

int cmd_s0(const run_config &cfg)
{
    const auto backend = ltpol::parse_backend(cfg.backend.value_or("capped"));
    const ltpol::val_t m = resolved_precision(cfg);
    if (backend == ltpol::backend_kind::capped && m < 64) {
        throw ltpol::arithmetic_error("precision must be at least 64 for the capped backend");
    }
    const auto ctx = ltpol::arithmetic_context::make(cfg.p, cfg.n_max, backend, m);
    ltpol::scan_options opts;
    opts.threads = cfg.threads;
    const auto res = ltpol::run_s0_scan(ctx, opts);
    if (cfg.out.empty() || cfg.out == "-") {
        ltpol::write_csv(res, std::cout);
    } else {
        std::ofstream os(cfg.out, std::ios::binary);
        if (!os) {
            throw std::invalid_argument("cannot open " + cfg.out);
        }
        ltpol::write_csv(res, os);
    }
    if (!cfg.plot_data.empty()) {
        std::ofstream os(cfg.plot_data, std::ios::binary);
        if (!os) {
            throw std::invalid_argument("cannot open " + cfg.plot_data);
        }
        ltpol::write_plot_data(res, os);
    }
    std::cerr << ltpol::summary_line(res) << "\n";
    return ok;
}

int cmd_selftest(const run_config &cfg)
{
    ltpol::selftest_config sc;
    sc.p = cfg.p;
    sc.n_max = cfg.n_max;
    sc.precision = cfg.precision.value_or(0);
    sc.seed = cfg.seed;
    sc.threads = cfg.threads;
    // Validates p and N before any work.
    ltpol::arithmetic_context::make(cfg.p, cfg.n_max, ltpol::backend_kind::exact, 0);
    int failures = 0;
    ltpol::run_selftest(sc, [&](const ltpol::check_result &r) {
        failures += !r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ") " << std::fixed
                  << std::setprecision(2) << r.seconds << "s" << std::endl;
    });
    std::cout << (failures == 0 ? "selftest passed" : "selftest failed: " + std::to_string(failures) + " checks")
              << "\n";
    return failures == 0 ? ok : selftest_failed;
}

template <ltpol::padic_scalar S>
void print_log_coeffs(const ltpol::arithmetic_context &ctx)
{
    const auto h = ltpol::log_coefficients<S>(ctx);
    for (int n = 1; n <= ctx.n_max; ++n) {
        const S &c = h[static_cast<std::size_t>(n)];
        std::cout << n << " ";
        if (c.is_exact_zero()) {
            std::cout << "inf 0\n";
        } else {
            std::cout << c.valuation() << " " << c.to_string() << "\n";
        }
    }
}

int cmd_log_coeffs(const run_config &cfg)
{
    const auto backend = ltpol::parse_backend(cfg.backend.value_or("exact"));
    const auto ctx = ltpol::arithmetic_context::make(cfg.p, cfg.n_max, backend, resolved_precision(cfg));
    if (backend == ltpol::backend_kind::exact) {
        print_log_coeffs<ltpol::exact_scalar>(ctx);
    } else {
        print_log_coeffs<ltpol::capped_scalar>(ctx);
    }
    return ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"s0(n) for the Lubin-Tate group of F = Q_{p^2} with [p](X) = pX + X^q"};
    app.require_subcommand(1);
    run_config cfg;

    const auto add_common = [&cfg](CLI::App *sub, const std::string &default_backend) {
        sub->add_option("--p", cfg.p, "Residue characteristic (prime)")->capture_default_str();
        sub->add_option("--n-max", cfg.n_max, "Truncation degree N")->capture_default_str();
        sub->add_option("--precision", cfg.precision, "Capped p-adic precision M (default 8*ceil(N/(q-1))+64)");
        sub->add_option("--backend", cfg.backend, "exact or capped (default " + default_backend + ")")
            ->check(CLI::IsMember({"exact", "capped"}));
        sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "Seed for randomized checks");
    };

    auto *s0 = app.add_subcommand("s0", "Compute s0(n) for n <= N");
    add_common(s0, "capped");
    s0->add_option("--out", cfg.out, "CSV output path (stdout if omitted)");
    s0->add_option("--plot-data", cfg.plot_data, "Two-column plot data path");

    auto *selftest = app.add_subcommand("selftest", "Run the property suite");
    add_common(selftest, "capped");

    auto *logc = app.add_subcommand("log-coeffs", "Print n, v_p(h_n), h_n");
    add_common(logc, "exact");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (s0->parsed()) {
            return cmd_s0(cfg);
        }
        if (selftest->parsed()) {
            return cmd_selftest(cfg);
        }
        return cmd_log_coeffs(cfg);
    } catch (const ltpol::precision_error &e) {
        std::cerr << "precision insufficient: " << e.what() << "\n";
        return precision_insufficient;
    } catch (const ltpol::invariant_violation &e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return precision_insufficient;
    } catch (const ltpol::arithmetic_error &e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return usage;
    }
}
