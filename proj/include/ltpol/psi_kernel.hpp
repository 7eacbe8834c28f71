#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <ltpol/carleman.hpp>
#include <ltpol/errors.hpp>
#include <ltpol/lubin_tate.hpp>
#include <ltpol/padic.hpp>
#include <ltpol/series.hpp>

namespace ltpol
{

// Generators of o[[X]]^{psi=0} as exact polynomials, in this order:
//   (pX^{q-1} + (q-1)) phi(X)^j        for j = 0 .. N
//   X^i phi(X)^j                        for i = 1 .. min(q-2, N), j = 0 .. N-i
template <padic_scalar S>
std::vector<series<S>> psi_kernel_generators(const arithmetic_context &ctx)
{
    const padic_ring &r = ctx.scalars();
    const int n = ctx.n_max;
    const auto q = static_cast<std::size_t>(ctx.q);
    const auto phi_x = frobenius_polynomial<S>(r);

    std::vector<S> first_coeffs(q, scalar_zero<S>(r));
    first_coeffs[0] = S::from_integer(ctx.q - 1, r);
    first_coeffs[q - 1] = S::from_integer(ctx.p, r);
    const auto first = series<S>::polynomial(std::move(first_coeffs), r);

    std::vector<series<S>> out;
    auto power = series<S>::polynomial({scalar_one<S>(r)}, r);
    for (int j = 0; j <= n; ++j) {
        out.push_back(series_mul(first, power));
        power = series_mul(power, phi_x);
    }
    const int imax = std::min<int>(static_cast<int>(q) - 2, n);
    for (int i = 1; i <= imax; ++i) {
        const auto xi = series<S>::monomial(scalar_one<S>(r), static_cast<std::size_t>(i), r);
        power = series<S>::polynomial({scalar_one<S>(r)}, r);
        for (int j = 0; j <= n - i; ++j) {
            out.push_back(series_mul(xi, power));
            power = series_mul(power, phi_x);
        }
    }
    return out;
}

inline std::size_t psi_kernel_generator_count(long q, int n)
{
    std::size_t count = static_cast<std::size_t>(n) + 1;
    for (long i = 1; i <= std::min<long>(q - 2, n); ++i) {
        count += static_cast<std::size_t>(n + 1 - i);
    }
    return count;
}

struct basis_options {
    // Shuffle the generator list before elimination.
    std::optional<std::uint64_t> shuffle_seed;
    // Record each b_i as a combination of the (ordered) truncated generators.
    bool track_transform = false;
};

template <padic_scalar S>
struct psi_zero_basis {
    // Row i holds b_i mod X^{N+1}; B[i][k] = 0 for k < i.
    matrix<S> rows;
    // Untruncated generators, in the order used for elimination.
    std::vector<series<S>> generators;
    // transform[i][g] = coefficient of generator g in b_i (when tracked).
    std::vector<std::vector<S>> transform;
};

namespace detail
{

// Index of the remaining row with minimal valuation in column c (ties: first
// in list order), or nullopt if the column is zero. Precision-zero entries
// are only tolerated when they are certified above the chosen minimum.
template <padic_scalar S>
std::optional<std::size_t> min_valuation_row(const std::vector<std::vector<S>> &rows,
                                             const std::vector<std::size_t> &active, std::size_t c)
{
    std::optional<std::size_t> best;
    val_t best_val = kInfinity;
    val_t fuzz = kInfinity;
    for (std::size_t idx : active) {
        const S &e = rows[idx][c];
        if (e.is_exact_zero()) {
            continue;
        }
        if (e.is_precision_zero()) {
            fuzz = std::min(fuzz, e.abs_precision());
            continue;
        }
        const val_t v = e.valuation();
        if (v < best_val) {
            best_val = v;
            best = idx;
        }
    }
    if (fuzz != kInfinity && fuzz <= best_val) {
        throw precision_error("uncertifiable pivot in psi=0 elimination at X-degree " + std::to_string(c)
                              + ": an entry is only known to be zero modulo p^" + std::to_string(fuzz));
    }
    return best;
}

} // namespace detail

// Valuation-pivoted elimination of the truncated generators: columns in
// increasing X-degree, pivot = remaining row of minimal valuation, other
// remaining rows cleared with integral multipliers, pivots not rescaled.
template <padic_scalar S>
psi_zero_basis<S> psi_kernel_basis(const arithmetic_context &ctx, const basis_options &opts = {})
{
    const padic_ring &r = ctx.scalars();
    const std::size_t dim = static_cast<std::size_t>(ctx.n_max) + 1;

    psi_zero_basis<S> out;
    out.generators = psi_kernel_generators<S>(ctx);
    if (opts.shuffle_seed) {
        std::mt19937_64 rng(*opts.shuffle_seed);
        std::shuffle(out.generators.begin(), out.generators.end(), rng);
    }
    const std::size_t ngen = out.generators.size();

    std::vector<std::vector<S>> rows(ngen);
    std::vector<std::vector<S>> track;
    for (std::size_t g = 0; g < ngen; ++g) {
        rows[g].reserve(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            rows[g].push_back(out.generators[g].coeff(k));
        }
        if (opts.track_transform) {
            std::vector<S> t(ngen, scalar_zero<S>(r));
            t[g] = scalar_one<S>(r);
            track.push_back(std::move(t));
        }
    }

    std::vector<std::size_t> active(ngen);
    std::iota(active.begin(), active.end(), std::size_t{0});
    out.rows = matrix<S>(dim, r);

    for (std::size_t c = 0; c < dim; ++c) {
        const auto pivot = detail::min_valuation_row(rows, active, c);
        if (!pivot) {
            throw invariant_violation("rank deficiency: no generator reaches X-degree " + std::to_string(c)
                                      + " (expected " + std::to_string(dim) + " basis elements)");
        }
        active.erase(std::find(active.begin(), active.end(), *pivot));
        const auto &prow = rows[*pivot];
        const S inv = scalar_one<S>(r) / prow[c];
        for (std::size_t idx : active) {
            auto &row = rows[idx];
            if (row[c].is_exact_zero()) {
                continue;
            }
            const S m = row[c] * inv;
            for (std::size_t k = c + 1; k < dim; ++k) {
                row[k].sub_mul(m, prow[k]);
            }
            row[c] = scalar_zero<S>(r);
            if (opts.track_transform) {
                for (std::size_t g = 0; g < ngen; ++g) {
                    track[idx][g].sub_mul(m, track[*pivot][g]);
                }
            }
        }
        for (std::size_t k = 0; k < dim; ++k) {
            out.rows(c, k) = k < c ? scalar_zero<S>(r) : prow[k];
        }
        if (opts.track_transform) {
            out.transform.push_back(track[*pivot]);
        }
    }
    return out;
}

// Whether v (length N+1) lies in the o-span of the basis rows: reduce by
// columns with the X-graded pivots and check every multiplier is integral and
// the residue vanishes (to precision).
template <padic_scalar S>
bool in_basis_span(const matrix<S> &basis, std::vector<S> v)
{
    const std::size_t dim = basis.dim();
    for (std::size_t c = 0; c < dim; ++c) {
        if (v[c].is_zero()) {
            continue;
        }
        const S m = v[c] / basis(c, c);
        if (m.valuation() < 0) {
            return false;
        }
        for (std::size_t k = c; k < dim; ++k) {
            v[k].sub_mul(m, basis(c, k));
        }
    }
    return std::all_of(v.begin(), v.end(), [](const S &x) { return x.is_zero(); });
}

} // namespace ltpol
