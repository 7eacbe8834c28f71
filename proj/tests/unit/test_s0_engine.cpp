#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <ltpol/output.hpp>
#include <ltpol/s0_engine.hpp>

#include "helpers.hpp"

using namespace ltpol;
using ltpol::test::capped_ctx;
using ltpol::test::exact_ctx;
using ltpol::test::q;

namespace
{

// Frozen from tests/oracle/lt_oracle.py (batch elimination over Q).
const std::vector<int> kP2N24 = {0, 1,  2,  6,  4,  8,  12, 16, 8,  12, 10, 14, -1,
                                 -1, -1, -1, 16, 20, 24, -1, -1, -1, -1, -1, -1};
const std::vector<int> kP3N16 = {0, 1, 2, 3, 4, 5, 6, 7, 16, 9, 10, -1, 12, 13, -1, 15, -1};
const std::vector<int> kP2N12 = {0, 1, 2, 6, 4, 8, 12, -1, 8, 12, 10, -1, -1};
const std::vector<int> kP3N10 = {0, 1, 2, 3, 4, 5, 6, 7, -1, 9, 10};
// Engine results, identical on both backends.
const std::vector<int> kP2N40 = {0,  1,  2,  6,  4,  8,  12, 16, 8,  12, 10, 14, 30, 34,
                                 35, -1, 16, 20, 24, 28, -1, -1, -1, -1, -1, -1, -1, -1,
                                 -1, -1, -1, -1, 32, 36, 34, 38, -1, -1, -1, -1, 40};
const std::vector<int> kP3N24 = {0,  1,  2,  3,  4,  5, 6,  7,  16, 9,  10, 19, 12,
                                 13, 22, 15, 24, -1, 18, -1, -1, 21, -1, -1, -1};

} // namespace

TEST_CASE("wq")
{
    CHECK(wq(0, 4) == 0);
    CHECK(wq(3, 4) == 0);
    CHECK(wq(4, 4) == 1);
    CHECK(wq(16, 4) == 5);
    CHECK(wq(20, 9) == 2);
    CHECK(wq(81, 9) == 10);
    CHECK(wq(800, 4) == 200 + 50 + 12 + 3);
}

TEST_CASE("echelon insert_row")
{
    const padic_ring r(2, 0);
    echelon_state<exact_scalar> st(3, 4);
    CHECK(st.insert_row({q(r, 0), q(r, 1)}) == insert_outcome::new_pivot);
    CHECK(st.pivot_valuation(1) == 0);
    CHECK(st.insert_row({q(r, 1), q(r, 2)}) == insert_outcome::new_pivot);
    CHECK(st.pivot_valuation(0) == 0);
    CHECK(st.insert_row({q(r, 3)}) == insert_outcome::reduced_to_zero);
    CHECK(st.rank() == 2);
    // degree-3 pivot 2T^3, then T^3 + T swaps in
    CHECK(st.insert_row({q(r, 0), q(r, 0), q(r, 0), q(r, 2)}) == insert_outcome::new_pivot);
    CHECK(st.insert_row({q(r, 0), q(r, 1), q(r, 0), q(r, 1)}) == insert_outcome::swapped);
    CHECK(st.pivot_valuation(3) == 0);
    CHECK(st.pivot_row(3)[1] == q(r, 1));
    CHECK(!st.has_pivot(2));
    // floor: T / 2 at degree 1 is below -w_4(1) = 0
    CHECK_THROWS_AS(st.insert_row({q(r, 0), q(r, 1, 2)}), invariant_violation);
    echelon_state<exact_scalar> loose(3, 4, false);
    CHECK(loose.insert_row({q(r, 0), q(r, 1, 2)}) == insert_outcome::new_pivot);
    CHECK(loose.pivot_valuation(1) == -1);
    CHECK_THROWS_AS(loose.insert_row({q(r, 0), q(r, 0), q(r, 0), q(r, 0), q(r, 1)}), arithmetic_error);
}

TEST_CASE("echelon precision handling")
{
    const padic_ring r(2, 20);
    echelon_state<capped_scalar> st(2, 4);
    const auto pz = capped_scalar::precision_zero(15, r);
    const auto one = capped_scalar::from_integer(1, r);
    const auto zero = capped_scalar::zero(r);
    CHECK(st.insert_row({pz, zero, pz}) == insert_outcome::reduced_to_zero);
    CHECK(st.fuzzy_discards() == 1);
    CHECK(st.worst_discard_precision() == 15);
    CHECK_THROWS_AS(st.insert_row({one, zero, pz}), precision_error);
}

TEST_CASE("frozen s0 values, exact backend")
{
    CHECK(s0_scan<exact_scalar>(exact_ctx(2, 12)).s0 == kP2N12);
    CHECK(s0_scan<exact_scalar>(exact_ctx(3, 10)).s0 == kP3N10);
    CHECK(s0_scan<exact_scalar>(exact_ctx(2, 24)).s0 == kP2N24);
    CHECK(s0_scan<exact_scalar>(exact_ctx(3, 16)).s0 == kP3N16);
}

TEST_CASE("frozen s0 values, capped backend")
{
    CHECK(s0_scan<capped_scalar>(capped_ctx(2, 24)).s0 == kP2N24);
    CHECK(s0_scan<capped_scalar>(capped_ctx(3, 16)).s0 == kP3N16);
    const auto r40 = s0_scan<capped_scalar>(capped_ctx(2, 40));
    CHECK(r40.s0 == kP2N40);
    CHECK(s0_scan<capped_scalar>(capped_ctx(3, 24)).s0 == kP3N24);
}

TEST_CASE("backend equivalence and result bookkeeping")
{
    const auto e = s0_scan<exact_scalar>(exact_ctx(3, 24));
    const auto c = run_s0_scan(capped_ctx(3, 24));
    CHECK(e.s0 == c.s0);
    CHECK(e.final_pivot_valuations == c.final_pivot_valuations);
    CHECK(e.s0 == kP3N24);
    CHECK(c.backend == backend_kind::capped);
    CHECK(e.worst_precision == kInfinity);
    CHECK(c.worst_precision < kInfinity);
    for (std::size_t n = 0; n < e.s0.size(); ++n) {
        CHECK(e.final_pivot_valuations[n] >= -e.w[n]);
        if (e.s0[n] >= 0) {
            CHECK(e.s0[n] >= static_cast<int>(n));
        }
    }
}

TEST_CASE("property: s0 values are stable in N")
{
    const auto small = s0_scan<exact_scalar>(exact_ctx(2, 12)).s0;
    for (std::size_t n = 0; n < small.size(); ++n) {
        if (small[n] >= 0) {
            CHECK(kP2N40[n] == small[n]);
        } else {
            CHECK((kP2N40[n] == -1 || kP2N40[n] > 12));
        }
    }
}

TEST_CASE("property: s0 is independent of generator order and thread count")
{
    scan_options opts;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        opts.shuffle_seed = seed;
        CHECK(s0_scan<exact_scalar>(exact_ctx(2, 24), opts).s0 == kP2N24);
        CHECK(s0_scan<capped_scalar>(capped_ctx(3, 24), opts).s0 == kP3N24);
    }
    scan_options threaded;
    threaded.threads = 3;
    CHECK(s0_scan<capped_scalar>(capped_ctx(2, 40), threaded).s0 == kP2N40);
}

TEST_CASE("stage callback sees monotone pivots")
{
    scan_options opts;
    std::vector<val_t> last;
    int stages = 0;
    opts.on_stage = [&](int, std::span<const val_t> pv) {
        if (!last.empty()) {
            for (std::size_t n = 0; n < pv.size(); ++n) {
                CHECK(pv[n] <= last[n]);
            }
        }
        last.assign(pv.begin(), pv.end());
        ++stages;
    };
    s0_scan<exact_scalar>(exact_ctx(2, 12), opts);
    CHECK(stages == 13);
}

TEST_CASE("low precision is reported, not silently wrong")
{
    const auto ctx = arithmetic_context::make(2, 40, backend_kind::capped, 8);
    bool raised = false;
    try {
        const auto res = s0_scan<capped_scalar>(ctx);
        CHECK(res.s0 == kP2N40);
    } catch (const precision_error &) {
        raised = true;
    } catch (const invariant_violation &) {
        raised = true;
    }
    CHECK(raised);
}

TEST_CASE("csv and plot output")
{
    s0_result res;
    res.p = 2;
    res.n_max = 3;
    res.s0 = {0, 1, -1, 6};
    res.w = {0, 0, 0, 0};
    std::ostringstream csv;
    write_csv(res, csv);
    CHECK(csv.str() == "n,w_q,s0,s0_minus_n\n0,0,0,0\n1,0,1,0\n2,0,-1,\n3,0,6,3\n");
    std::ostringstream plot;
    write_plot_data(res, plot);
    CHECK(plot.str().find("0 0\n1 0\n3 3\n") != std::string::npos);
    CHECK(plot.str().find("# 2\n") != std::string::npos);
    const auto sum = summarize(res);
    CHECK(sum.unresolved == 1);
    CHECK(sum.finite_prefix == 1);
}
