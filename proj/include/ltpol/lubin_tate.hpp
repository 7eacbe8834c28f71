#pragma once

// Lubin-Tate operators for the formal group over Q_{p^2} with uniformizer p
// and coordinate chosen so that [p](X) = pX + X^q, q = p^2.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include <ltpol/padic.hpp>
#include <ltpol/series.hpp>

namespace ltpol
{

// Pascal triangle rows 0..n, columns 0..min(row, width).
std::vector<std::vector<mpz_class>> pascal_rows(int n, int width);

// Coefficients h_0 .. h_N of log_LT(X) = sum h_k X^k, h_0 = 0, h_1 = 1, from
//   (p - p^n) h_n = sum_{i=1}^{floor(n/q)} h_j binom(j, i) p^(j-i),  j = n - i(q-1).
template <padic_scalar S>
std::vector<S> log_coefficients(const arithmetic_context &ctx)
{
    const padic_ring &r = ctx.scalars();
    const int n_max = ctx.n_max;
    const long q = ctx.q;
    std::vector<S> h(static_cast<std::size_t>(n_max) + 1, scalar_zero<S>(r));
    h[1] = scalar_one<S>(r);
    const auto binom = pascal_rows(n_max, static_cast<int>(n_max / q));
    for (int n = 2; n <= n_max; ++n) {
        S sum = scalar_zero<S>(r);
        for (long i = 1; i <= n / q; ++i) {
            const long j = n - i * (q - 1);
            if (h[j].is_exact_zero()) {
                continue;
            }
            sum += h[j] * S::from_integer(binom[j][i], r) * S::prime_power(j - i, r);
        }
        if (sum.is_exact_zero()) {
            continue;
        }
        mpz_class pn;
        mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(ctx.p), static_cast<unsigned long>(n));
        h[n] = sum / S::from_integer(mpz_class(ctx.p) - pn, r);
    }
    return h;
}

template <padic_scalar S>
series<S> log_series(const arithmetic_context &ctx)
{
    return series<S>::truncated(log_coefficients<S>(ctx), ctx.n_max, ctx.scalars());
}

// Compositional inverse of a truncated series X + O(X^2), by Newton
// iteration with doubling truncation.
template <padic_scalar S>
series<S> exp_series(const series<S> &log)
{
    const auto n = log.truncation();
    if (!n) {
        throw arithmetic_error("exp_series expects a truncated series");
    }
    const padic_ring &r = log.ring();
    if (!log.coeff(0).is_exact_zero() || log.coeff(1).is_zero()
        || !(log.coeff(1) - scalar_one<S>(r)).is_zero()) {
        throw arithmetic_error("exp_series expects a series of the form X + O(X^2)");
    }
    auto widen = [&r](const series<S> &f, int m) {
        return series<S>::truncated(std::vector<S>(f.coeffs().begin(), f.coeffs().end()), m, r);
    };
    auto x_at = [&r](int m) { return series<S>::monomial(scalar_one<S>(r), 1, r, m); };
    series<S> g = x_at(std::min(*n, 1));
    for (int m = 1; m < *n;) {
        m = std::min(2 * m, *n);
        const series<S> gm = widen(g, m);
        const series<S> lm = log.truncate(m);
        const series<S> residual = series_compose(lm, gm) - x_at(m);
        // residual = O(X^2), so the top coefficient of the slope is not needed.
        const series<S> slope = widen(series_compose(lm.derivative(), gm.truncate(m - 1)), m);
        g = gm - residual * slope.reciprocal();
    }
    return g.truncate(*n);
}

// [a](X) = exp(a * log(X)) mod X^{N+1}.
template <padic_scalar S>
series<S> mult_by(const S &a, const series<S> &log, const series<S> &exp)
{
    return series_compose(exp, a * log);
}

template <padic_scalar S>
series<S> mult_by(const S &a, const arithmetic_context &ctx)
{
    const auto log = log_series<S>(ctx);
    return mult_by(a, log, exp_series(log));
}

// pX + X^q as an exact polynomial.
template <padic_scalar S>
series<S> frobenius_polynomial(const padic_ring &r)
{
    const long p = r.prime();
    std::vector<S> v(static_cast<std::size_t>(p * p) + 1, scalar_zero<S>(r));
    v[1] = S::from_integer(p, r);
    v[static_cast<std::size_t>(p * p)] = scalar_one<S>(r);
    return series<S>::polynomial(std::move(v), r);
}

// phi(f)(X) = f(pX + X^q); truncation follows f.
template <padic_scalar S>
series<S> phi(const series<S> &f)
{
    return series_compose(f, frobenius_polynomial<S>(f.ring()));
}

// psi(X^i) for i = 0 .. d as exact polynomials:
//   psi(1) = q/p, psi(X^i) = 0 (1 <= i <= q-2), psi(X^{q-1}) = 1 - q,
//   psi(X^i) = X psi(X^{i-q}) - p psi(X^{i-q+1})   (i >= q).
template <padic_scalar S>
std::vector<series<S>> psi_monomials(std::size_t d, const padic_ring &r)
{
    const long p = r.prime();
    const std::size_t q = static_cast<std::size_t>(p * p);
    std::vector<series<S>> out;
    out.reserve(d + 1);
    const S p_scalar = S::from_integer(p, r);
    for (std::size_t i = 0; i <= d; ++i) {
        if (i == 0) {
            out.push_back(series<S>::polynomial({S::from_integer(p, r)}, r));
        } else if (i < q - 1) {
            out.push_back(series<S>::polynomial({}, r));
        } else if (i == q - 1) {
            out.push_back(series<S>::polynomial({S::from_integer(1 - static_cast<long>(q), r)}, r));
        } else {
            const auto &lo = out[i - q];
            std::vector<S> shifted(lo.size() + 1, scalar_zero<S>(r));
            std::copy(lo.coeffs().begin(), lo.coeffs().end(), shifted.begin() + 1);
            out.push_back(series<S>::polynomial(std::move(shifted), r) - p_scalar * out[i - q + 1]);
        }
    }
    return out;
}

// psi on an exact polynomial, extended linearly from psi_monomials.
template <padic_scalar S>
series<S> psi(const series<S> &f)
{
    if (!f.is_polynomial()) {
        // Tail monomials X^{k(q-1)} with k large still feed the constant
        // term, so a truncated input determines no X-adic prefix of psi(f).
        throw arithmetic_error("psi is only defined here on exact polynomials");
    }
    const padic_ring &r = f.ring();
    if (f.size() == 0) {
        return f;
    }
    const auto table = psi_monomials<S>(f.size() - 1, r);
    series<S> out = series<S>::polynomial({}, r);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f.coeffs()[i].is_exact_zero() && table[i].size() != 0) {
            out += f.coeffs()[i] * table[i];
        }
    }
    return out;
}

} // namespace ltpol
