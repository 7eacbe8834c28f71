#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <ltpol/errors.hpp>
#include <ltpol/padic.hpp>

namespace ltpol
{

// Power series in X over a p-adic scalar type. Either truncated (known
// modulo X^{N+1}, coefficient vector of length N+1) or an exact polynomial
// of any degree (trailing exact zeros trimmed).
template <padic_scalar S>
class series
{
public:
    series() = default;

    static series truncated(std::vector<S> coeffs, int n, const padic_ring &ring)
    {
        series s(ring);
        s.m_trunc = n;
        s.m_coeffs = std::move(coeffs);
        s.m_coeffs.resize(static_cast<std::size_t>(n) + 1, scalar_zero<S>(ring));
        return s;
    }

    static series polynomial(std::vector<S> coeffs, const padic_ring &ring)
    {
        series s(ring);
        s.m_coeffs = std::move(coeffs);
        s.trim();
        return s;
    }

    // c * X^k; truncated at n when n is given.
    static series monomial(S c, std::size_t k, const padic_ring &ring, std::optional<int> n = std::nullopt)
    {
        std::vector<S> v(k + 1, scalar_zero<S>(ring));
        v[k] = std::move(c);
        return n ? truncated(std::move(v), *n, ring) : polynomial(std::move(v), ring);
    }

    const padic_ring &ring() const { return *m_ring; }
    bool is_polynomial() const noexcept { return !m_trunc.has_value(); }
    // N for a series known mod X^{N+1}; empty for exact polynomials.
    std::optional<int> truncation() const noexcept { return m_trunc; }

    std::size_t size() const noexcept { return m_coeffs.size(); }
    std::span<const S> coeffs() const noexcept { return m_coeffs; }
    // Degree of the stored coefficient vector (-1 for the zero polynomial).
    long degree_bound() const noexcept { return static_cast<long>(m_coeffs.size()) - 1; }

    // Coefficient of X^k, zero beyond the stored range.
    S coeff(std::size_t k) const { return k < m_coeffs.size() ? m_coeffs[k] : scalar_zero<S>(*m_ring); }

    bool is_exact_zero() const
    {
        return std::all_of(m_coeffs.begin(), m_coeffs.end(), [](const S &c) { return c.is_exact_zero(); });
    }
    // Zero to the known precision (exact or precision-zero coefficients only).
    bool is_zero() const
    {
        return std::all_of(m_coeffs.begin(), m_coeffs.end(), [](const S &c) { return c.is_zero(); });
    }

    series truncate(int n) const
    {
        std::vector<S> v(m_coeffs.begin(), m_coeffs.begin() + std::min<std::size_t>(m_coeffs.size(), n + 1));
        return truncated(std::move(v), m_trunc ? std::min(*m_trunc, n) : n, *m_ring);
    }

    series &operator+=(const series &o)
    {
        combine(o, false);
        return *this;
    }
    series &operator-=(const series &o)
    {
        combine(o, true);
        return *this;
    }
    friend series operator+(series a, const series &b) { return a += b; }
    friend series operator-(series a, const series &b) { return a -= b; }

    friend series operator*(const S &c, series f)
    {
        for (auto &x : f.m_coeffs) {
            if (!x.is_exact_zero()) {
                x *= c;
            }
        }
        if (f.is_polynomial()) {
            f.trim();
        }
        return f;
    }

    friend series operator*(const series &f, const series &g) { return series_mul(f, g); }

    friend series series_mul(const series &f, const series &g)
    {
        const auto bound = joint_truncation(f.m_trunc, g.m_trunc);
        if (f.m_coeffs.empty() || g.m_coeffs.empty()) {
            return bound ? truncated({}, *bound, f.ring()) : polynomial({}, f.ring());
        }
        std::size_t len = f.m_coeffs.size() + g.m_coeffs.size() - 1;
        if (bound) {
            len = std::min(len, static_cast<std::size_t>(*bound) + 1);
        }
        std::vector<S> out(len, scalar_zero<S>(f.ring()));
        for (std::size_t i = 0; i < f.m_coeffs.size() && i < len; ++i) {
            const S &a = f.m_coeffs[i];
            if (a.is_exact_zero()) {
                continue;
            }
            const std::size_t jmax = std::min(g.m_coeffs.size(), len - i);
            for (std::size_t j = 0; j < jmax; ++j) {
                const S &b = g.m_coeffs[j];
                if (!b.is_exact_zero()) {
                    out[i + j] += a * b;
                }
            }
        }
        return bound ? truncated(std::move(out), *bound, f.ring()) : polynomial(std::move(out), f.ring());
    }

    // f(g) by Horner's rule; g must have zero constant term.
    friend series series_compose(const series &f, const series &g)
    {
        if (!g.coeff(0).is_exact_zero()) {
            throw arithmetic_error("composition with a series whose constant term is not zero");
        }
        const auto bound = joint_truncation(f.m_trunc, g.m_trunc);
        const padic_ring &r = f.ring();
        series acc = bound ? truncated({}, *bound, r) : polynomial({}, r);
        for (std::size_t i = f.m_coeffs.size(); i-- > 0;) {
            acc = series_mul(acc, g);
            if (!f.m_coeffs[i].is_exact_zero()) {
                if (acc.m_coeffs.empty()) {
                    acc.m_coeffs.push_back(f.m_coeffs[i]);
                } else {
                    acc.m_coeffs[0] += f.m_coeffs[i];
                }
            }
        }
        if (acc.is_polynomial()) {
            acc.trim();
        }
        return acc;
    }

    // f^k (k >= 0).
    series pow(unsigned k) const
    {
        series acc = m_trunc ? truncated({scalar_one<S>(*m_ring)}, *m_trunc, *m_ring)
                             : polynomial({scalar_one<S>(*m_ring)}, *m_ring);
        for (unsigned i = 0; i < k; ++i) {
            acc = series_mul(acc, *this);
        }
        return acc;
    }

    series derivative() const
    {
        std::vector<S> v;
        for (std::size_t k = 1; k < m_coeffs.size(); ++k) {
            v.push_back(m_coeffs[k] * S::from_integer(static_cast<unsigned long>(k), *m_ring));
        }
        if (m_trunc) {
            return truncated(std::move(v), std::max(*m_trunc - 1, 0), *m_ring);
        }
        return polynomial(std::move(v), *m_ring);
    }

    // 1/f for a truncated series with invertible constant term.
    series reciprocal() const
    {
        if (!m_trunc) {
            throw arithmetic_error("reciprocal of an exact polynomial is not a polynomial");
        }
        const int n = *m_trunc;
        const S &c0 = m_coeffs[0];
        if (c0.is_zero()) {
            throw arithmetic_error("reciprocal of a series without constant term");
        }
        std::vector<S> g(static_cast<std::size_t>(n) + 1, scalar_zero<S>(*m_ring));
        g[0] = scalar_one<S>(*m_ring) / c0;
        for (int k = 1; k <= n; ++k) {
            S acc = scalar_zero<S>(*m_ring);
            for (int j = 1; j <= k; ++j) {
                if (!m_coeffs[j].is_exact_zero() && !g[k - j].is_exact_zero()) {
                    acc += m_coeffs[j] * g[k - j];
                }
            }
            g[k] = -(acc / c0);
        }
        return truncated(std::move(g), n, *m_ring);
    }

private:
    explicit series(const padic_ring &ring) : m_ring(&ring) {}

    static std::optional<int> joint_truncation(std::optional<int> a, std::optional<int> b)
    {
        if (a && b) {
            return std::min(*a, *b);
        }
        return a ? a : b;
    }

    void combine(const series &o, bool negate)
    {
        const auto bound = joint_truncation(m_trunc, o.m_trunc);
        std::size_t len = std::max(m_coeffs.size(), o.m_coeffs.size());
        if (bound) {
            len = static_cast<std::size_t>(*bound) + 1;
        }
        m_coeffs.resize(len, scalar_zero<S>(*m_ring));
        for (std::size_t k = 0; k < std::min(len, o.m_coeffs.size()); ++k) {
            negate ? m_coeffs[k] -= o.m_coeffs[k] : m_coeffs[k] += o.m_coeffs[k];
        }
        m_trunc = bound;
        if (!m_trunc) {
            trim();
        }
    }

    void trim()
    {
        while (!m_coeffs.empty() && m_coeffs.back().is_exact_zero()) {
            m_coeffs.pop_back();
        }
    }

    const padic_ring *m_ring = nullptr;
    std::optional<int> m_trunc;
    std::vector<S> m_coeffs;
};

} // namespace ltpol
