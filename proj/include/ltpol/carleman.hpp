#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <ltpol/errors.hpp>
#include <ltpol/lubin_tate.hpp>
#include <ltpol/padic.hpp>
#include <ltpol/parallel.hpp>
#include <ltpol/series.hpp>

namespace ltpol
{

// Dense square matrix, row major.
template <padic_scalar S>
class matrix
{
public:
    matrix() = default;
    matrix(std::size_t n, const padic_ring &r) : m_n(n), m_data(n * n, scalar_zero<S>(r)) {}

    std::size_t dim() const noexcept { return m_n; }
    S &operator()(std::size_t i, std::size_t j) { return m_data[i * m_n + j]; }
    const S &operator()(std::size_t i, std::size_t j) const { return m_data[i * m_n + j]; }

private:
    std::size_t m_n = 0;
    std::vector<S> m_data;
};

// Polynomial in T, coefficient k of T^k. Stands for an integer-valued
// polynomial on o_F such as c_{i,j}(T) or c_{b,m}(T).
template <padic_scalar S>
class int_polynomial
{
public:
    int_polynomial() = default;
    explicit int_polynomial(std::vector<S> coeffs) : m_coeffs(std::move(coeffs)) {}

    std::vector<S> &coeffs() noexcept { return m_coeffs; }
    const std::vector<S> &coeffs() const noexcept { return m_coeffs; }

    // Largest index with a nonzero coefficient, -1 for zero. Throws
    // precision_error if the topmost inexact coefficient is precision-zero.
    long degree() const
    {
        for (std::size_t k = m_coeffs.size(); k-- > 0;) {
            const S &c = m_coeffs[k];
            if (c.is_exact_zero()) {
                continue;
            }
            if (c.is_precision_zero()) {
                throw precision_error("degree undecidable: coefficient of T^" + std::to_string(k)
                                      + " is zero only to its precision");
            }
            return static_cast<long>(k);
        }
        return -1;
    }

    const S &leading() const
    {
        const long d = degree();
        if (d < 0) {
            throw arithmetic_error("leading coefficient of the zero polynomial");
        }
        return m_coeffs[static_cast<std::size_t>(d)];
    }

    S evaluate(const S &t) const
    {
        S acc = scalar_zero<S>(t.ring());
        for (std::size_t k = m_coeffs.size(); k-- > 0;) {
            acc *= t;
            acc += m_coeffs[k];
        }
        return acc;
    }

private:
    std::vector<S> m_coeffs;
};

// D[j][k] = coefficient of X^k in f(X)^j, 0 <= j, k <= N, for f = X + O(X^2)
// truncated at N.
template <padic_scalar S>
matrix<S> carleman_matrix(const series<S> &f)
{
    const auto n = f.truncation();
    if (!n) {
        throw arithmetic_error("carleman_matrix expects a truncated series");
    }
    const padic_ring &r = f.ring();
    if (!f.coeff(0).is_exact_zero() || !(f.coeff(1) - scalar_one<S>(r)).is_zero()) {
        throw arithmetic_error("carleman_matrix expects a series of the form X + O(X^2)");
    }
    const std::size_t dim = static_cast<std::size_t>(*n) + 1;
    matrix<S> d(dim, r);
    auto power = series<S>::monomial(scalar_one<S>(r), 0, r, *n);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = j; k < dim; ++k) {
            d(j, k) = power.coeff(k);
        }
        if (j + 1 < dim) {
            power = series_mul(power, f);
        }
    }
    return d;
}

// Inverse of an upper unitriangular matrix by back-substitution, row by row:
//   V[i][j] = -sum_{k=i}^{j-1} V[i][k] U[k][j].
template <padic_scalar S>
matrix<S> invert_unitriangular(const matrix<S> &u, int threads = 1)
{
    const std::size_t n = u.dim();
    if (n == 0) {
        return u;
    }
    const padic_ring &r = u(0, 0).ring();
    const S one = scalar_one<S>(r);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(u(i, i) - one).is_zero()) {
            throw arithmetic_error("matrix is not unit-diagonal");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!u(i, j).is_exact_zero()) {
                throw arithmetic_error("matrix is not upper triangular");
            }
        }
    }
    matrix<S> v(n, r);
    parallel_for(n, threads, [&](std::size_t i) {
        v(i, i) = one;
        for (std::size_t j = i + 1; j < n; ++j) {
            S acc = scalar_zero<S>(r);
            for (std::size_t k = i; k < j; ++k) {
                acc.sub_mul(v(i, k), u(k, j));
            }
            v(i, j) = std::move(acc);
        }
    });
    return v;
}

// c_{i,j}(T) = sum_{k=i}^{j} Dinv[i][k] D[k][j] T^k, the coefficient of X^j
// in [T](X)^i.
template <padic_scalar S>
int_polynomial<S> c_entry(const matrix<S> &d, const matrix<S> &dinv, std::size_t i, std::size_t j)
{
    const padic_ring &r = d(0, 0).ring();
    std::vector<S> coeffs(j + 1, scalar_zero<S>(r));
    for (std::size_t k = i; k <= j; ++k) {
        if (!dinv(i, k).is_exact_zero() && !d(k, j).is_exact_zero()) {
            coeffs[k] = dinv(i, k) * d(k, j);
        }
    }
    return int_polynomial<S>(std::move(coeffs));
}

// All c_{i,j}, i, j <= N. Quadratic memory in N; meant for small N.
template <padic_scalar S>
std::vector<std::vector<int_polynomial<S>>> c_matrix(const matrix<S> &d, const matrix<S> &dinv)
{
    const std::size_t n = d.dim();
    std::vector<std::vector<int_polynomial<S>>> c(n, std::vector<int_polynomial<S>>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            c[i][j] = j < i ? int_polynomial<S>(std::vector<S>(j + 1, scalar_zero<S>(d(0, 0).ring())))
                            : c_entry(d, dinv, i, j);
        }
    }
    return c;
}

// Coefficients of [a](X)^i mod X^{N+1}, by direct series powering.
template <padic_scalar S>
std::vector<S> direct_c_row(const S &a, unsigned i, const series<S> &log, const series<S> &exp)
{
    if (!a.is_zero() && a.valuation() < 0) {
        throw arithmetic_error("direct_c_row needs v(a) >= 0");
    }
    const auto f = mult_by(a, log, exp).pow(i);
    return std::vector<S>(f.coeffs().begin(), f.coeffs().end());
}

template <padic_scalar S>
std::vector<S> direct_c_row(const S &a, unsigned i, const arithmetic_context &ctx)
{
    const auto log = log_series<S>(ctx);
    return direct_c_row(a, i, log, exp_series(log));
}

} // namespace ltpol
