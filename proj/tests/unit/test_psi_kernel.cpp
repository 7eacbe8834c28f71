#include <doctest.h>

#include <vector>

#include <ltpol/psi_kernel.hpp>

#include "helpers.hpp"

using namespace ltpol;
using ltpol::test::exact_ctx;
using ltpol::test::q;

TEST_CASE("generator count")
{
    CHECK(psi_kernel_generator_count(4, 4) == 12);
    CHECK(psi_kernel_generators<exact_scalar>(exact_ctx(2, 4)).size() == 12);
    CHECK(psi_kernel_generator_count(9, 3) == 4 + 3 + 2 + 1);
    CHECK(psi_kernel_generators<exact_scalar>(exact_ctx(3, 3)).size() == 10);
    CHECK(psi_kernel_generator_count(9, 20) == 21 + 20 + 19 + 18 + 17 + 16 + 15 + 14);
}

TEST_CASE("basis at p = 2, N = 4")
{
    const auto ctx = exact_ctx(2, 4);
    const padic_ring &r = ctx.scalars();
    const auto basis = psi_kernel_basis<exact_scalar>(ctx);
    // oracle rows b_0 .. b_4, X-degrees 0 .. 4
    const long expected[5][5] = {{3, 0, 0, 2, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 2, 0}, {0, 0, 0, 0, 7}};
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK_MESSAGE(basis.rows(i, k) == q(r, expected[i][k]), "b_" << i << "[" << k << "]");
        }
    }
}

TEST_CASE("property: every generator has psi = 0")
{
    for (long p : {2L, 3L}) {
        const auto ctx = exact_ctx(p, 12);
        for (const auto &g : psi_kernel_generators<exact_scalar>(ctx)) {
            CHECK(psi(g).is_exact_zero());
        }
    }
}

TEST_CASE("property: basis spans the truncated generators and is triangular")
{
    for (long p : {2L, 3L}) {
        const auto ctx = exact_ctx(p, 16);
        basis_options opts;
        opts.track_transform = true;
        const auto basis = psi_kernel_basis<exact_scalar>(ctx, opts);
        const std::size_t dim = 17;
        for (std::size_t i = 0; i < dim; ++i) {
            CHECK(!basis.rows(i, i).is_exact_zero());
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(basis.rows(i, k).is_exact_zero());
            }
        }
        for (const auto &g : basis.generators) {
            std::vector<exact_scalar> v;
            for (std::size_t k = 0; k < dim; ++k) {
                v.push_back(g.coeff(k));
            }
            CHECK(in_basis_span(basis.rows, v));
        }
        // b_i = sum_g transform[i][g] * generator_g mod X^{N+1}, integrally
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t k = 0; k < dim; ++k) {
                exact_scalar acc = q(ctx.scalars(), 0);
                for (std::size_t g = 0; g < basis.generators.size(); ++g) {
                    acc += basis.transform[i][g] * basis.generators[g].coeff(k);
                }
                CHECK(acc == basis.rows(i, k));
            }
            for (const auto &t : basis.transform[i]) {
                CHECK((t.is_exact_zero() || t.valuation() >= 0));
            }
        }
    }
}

TEST_CASE("shuffled generators span the same module")
{
    const auto ctx = exact_ctx(3, 12);
    const auto plain = psi_kernel_basis<exact_scalar>(ctx);
    basis_options opts;
    opts.shuffle_seed = 5;
    const auto shuffled = psi_kernel_basis<exact_scalar>(ctx, opts);
    for (std::size_t i = 0; i <= 12; ++i) {
        CHECK(plain.rows(i, i).valuation() == shuffled.rows(i, i).valuation());
        std::vector<exact_scalar> v;
        for (std::size_t k = 0; k <= 12; ++k) {
            v.push_back(shuffled.rows(i, k));
        }
        CHECK(in_basis_span(plain.rows, v));
    }
}

TEST_CASE("capped basis agrees with the exact basis")
{
    const auto be = psi_kernel_basis<exact_scalar>(exact_ctx(2, 24));
    const auto bc = psi_kernel_basis<capped_scalar>(test::capped_ctx(2, 24));
    for (std::size_t i = 0; i <= 24; ++i) {
        for (std::size_t k = i; k <= 24; ++k) {
            const auto &e = be.rows(i, k);
            const auto &c = bc.rows(i, k);
            if (e.is_exact_zero()) {
                CHECK(c.is_zero());
                continue;
            }
            REQUIRE(!c.is_precision_zero());
            CHECK(c.valuation() == e.valuation());
            CHECK(c.unit_residue(c.rel_precision()) == e.unit_residue(c.rel_precision()));
        }
    }
}
