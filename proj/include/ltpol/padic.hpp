#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <ltpol/errors.hpp>

namespace ltpol
{

// p-adic valuations and precisions. kInfinity stands for the valuation of
// zero and for the precision of an exact value.
using val_t = std::int64_t;
inline constexpr val_t kInfinity = std::numeric_limits<val_t>::max();

enum class backend_kind { exact, capped };

std::string to_string(backend_kind);
backend_kind parse_backend(const std::string &);

bool is_prime(long n);

// v_p of a nonzero integer.
val_t integer_valuation(const mpz_class &n, long p);

// Immutable prime data shared by every scalar of a computation: p, the
// relative precision cap and a table of powers p^0 .. p^cap.
class padic_ring
{
public:
    padic_ring(long p, val_t cap);

    long prime() const noexcept { return m_p; }
    val_t cap() const noexcept { return m_cap; }
    // p^k for 0 <= k <= cap.
    const mpz_class &power(val_t k) const;

    // Reduce x modulo p^k into [0, p^k).
    void reduce(mpz_class &x, val_t k) const;
    // Strip all factors of p from a nonzero x, returning how many were removed.
    val_t remove_p(mpz_class &x) const;

private:
    long m_p;
    val_t m_cap;
    mpz_class m_pz;
    std::vector<mpz_class> m_powers;
};

// Scalar with an exact rational value. Valuations are exact and precision is
// always infinite.
class exact_scalar
{
public:
    static constexpr backend_kind backend = backend_kind::exact;

    exact_scalar() = default;
    exact_scalar(const padic_ring &ring, mpq_class v) : m_ring(&ring), m_value(std::move(v))
    {
        m_value.canonicalize();
    }

    static exact_scalar from_rational(const mpz_class &num, const mpz_class &den, const padic_ring &ring);
    static exact_scalar from_integer(const mpz_class &n, const padic_ring &ring)
    {
        return exact_scalar(ring, mpq_class(n));
    }
    // p^k, k may be negative.
    static exact_scalar prime_power(val_t k, const padic_ring &ring);

    const padic_ring &ring() const { return *m_ring; }
    const mpq_class &value() const noexcept { return m_value; }

    bool is_exact_zero() const noexcept { return sgn(m_value) == 0; }
    bool is_precision_zero() const noexcept { return false; }
    bool is_zero() const noexcept { return is_exact_zero(); }

    val_t valuation() const;
    val_t abs_precision() const noexcept { return kInfinity; }
    // The unit part x / p^v reduced modulo p^k.
    mpz_class unit_residue(val_t k) const;

    std::string to_string() const { return m_value.get_str(); }

    exact_scalar operator-() const { return exact_scalar(*m_ring, -m_value); }
    exact_scalar &operator+=(const exact_scalar &o)
    {
        m_value += o.m_value;
        return *this;
    }
    exact_scalar &operator-=(const exact_scalar &o)
    {
        m_value -= o.m_value;
        return *this;
    }
    exact_scalar &operator*=(const exact_scalar &o)
    {
        m_value *= o.m_value;
        return *this;
    }
    exact_scalar &operator/=(const exact_scalar &o);

    // this -= a * b
    void sub_mul(const exact_scalar &a, const exact_scalar &b);

    friend exact_scalar operator+(exact_scalar a, const exact_scalar &b) { return a += b; }
    friend exact_scalar operator-(exact_scalar a, const exact_scalar &b) { return a -= b; }
    friend exact_scalar operator*(exact_scalar a, const exact_scalar &b) { return a *= b; }
    friend exact_scalar operator/(exact_scalar a, const exact_scalar &b) { return a /= b; }

    friend bool operator==(const exact_scalar &a, const exact_scalar &b) { return a.m_value == b.m_value; }

private:
    const padic_ring *m_ring = nullptr;
    mpq_class m_value;
};

// Scalar of Q_p stored as unit * p^val + O(p^abs_prec), with the unit kept
// modulo p^(abs_prec - val) and that relative precision capped at ring.cap().
//
// Three states:
//   exact zero      val = abs = kInfinity
//   precision-zero  val = kInfinity, abs finite (zero modulo p^abs, nothing more known)
//   nonzero         val < abs, unit prime to p
//
// Precision follows the ultrametric contract: sums take the minimum absolute
// precision, products keep the minimum relative precision.
class capped_scalar
{
public:
    static constexpr backend_kind backend = backend_kind::capped;

    capped_scalar() = default;

    static capped_scalar from_rational(const mpz_class &num, const mpz_class &den, const padic_ring &ring);
    static capped_scalar from_integer(const mpz_class &n, const padic_ring &ring);
    static capped_scalar prime_power(val_t k, const padic_ring &ring);
    static capped_scalar zero(const padic_ring &ring) { return capped_scalar(ring); }
    // Zero known modulo p^abs only.
    static capped_scalar precision_zero(val_t abs, const padic_ring &ring);

    const padic_ring &ring() const { return *m_ring; }

    bool is_exact_zero() const noexcept { return m_val == kInfinity && m_abs == kInfinity; }
    bool is_precision_zero() const noexcept { return m_val == kInfinity && m_abs != kInfinity; }
    bool is_zero() const noexcept { return m_val == kInfinity; }

    // Throws precision_error on a precision-zero value.
    val_t valuation() const;
    val_t abs_precision() const noexcept { return m_abs; }
    val_t rel_precision() const noexcept { return m_abs - m_val; }
    const mpz_class &unit() const noexcept { return m_unit; }
    mpz_class unit_residue(val_t k) const;

    std::string to_string() const;

    capped_scalar operator-() const;
    capped_scalar &operator+=(const capped_scalar &o);
    capped_scalar &operator-=(const capped_scalar &o);
    capped_scalar &operator*=(const capped_scalar &o);
    capped_scalar &operator/=(const capped_scalar &o);

    void sub_mul(const capped_scalar &a, const capped_scalar &b);

    friend capped_scalar operator+(capped_scalar a, const capped_scalar &b) { return a += b; }
    friend capped_scalar operator-(capped_scalar a, const capped_scalar &b) { return a -= b; }
    friend capped_scalar operator*(capped_scalar a, const capped_scalar &b) { return a *= b; }
    friend capped_scalar operator/(capped_scalar a, const capped_scalar &b) { return a /= b; }

    // Equality to the joint precision: the difference is zero or precision-zero.
    bool congruent(const capped_scalar &o) const { return (*this - o).is_zero(); }

private:
    explicit capped_scalar(const padic_ring &ring) : m_ring(&ring) {}
    capped_scalar(const padic_ring &ring, val_t val, val_t abs, mpz_class unit)
        : m_ring(&ring), m_val(val), m_abs(abs), m_unit(std::move(unit))
    {
    }
    // Normalizes (sum * p^base) known modulo p^abs.
    void assign_normalized(mpz_class &&sum, val_t base, val_t abs);
    void add_signed(const capped_scalar &o, bool negate);

    const padic_ring *m_ring = nullptr;
    val_t m_val = kInfinity;
    val_t m_abs = kInfinity;
    mpz_class m_unit;
};

template <typename S>
concept padic_scalar = requires(const S &x, S &y, const padic_ring &r, const mpz_class &z) {
    { S::backend } -> std::convertible_to<backend_kind>;
    { S::from_rational(z, z, r) } -> std::same_as<S>;
    { S::from_integer(z, r) } -> std::same_as<S>;
    { S::prime_power(val_t{}, r) } -> std::same_as<S>;
    { x.ring() } -> std::same_as<const padic_ring &>;
    { x.is_zero() } -> std::same_as<bool>;
    { x.is_exact_zero() } -> std::same_as<bool>;
    { x.is_precision_zero() } -> std::same_as<bool>;
    { x.valuation() } -> std::same_as<val_t>;
    { x.abs_precision() } -> std::convertible_to<val_t>;
    { x + x } -> std::same_as<S>;
    { x - x } -> std::same_as<S>;
    { x * x } -> std::same_as<S>;
    { x / x } -> std::same_as<S>;
    { -x } -> std::same_as<S>;
    y.sub_mul(x, x);
    { x.to_string() } -> std::same_as<std::string>;
};

template <padic_scalar S>
S scalar_zero(const padic_ring &r)
{
    return S::from_integer(0, r);
}

template <padic_scalar S>
S scalar_one(const padic_ring &r)
{
    return S::from_integer(1, r);
}

// Parameters of one computation: F = Q_{p^2}, series mod X^{N+1}, capped
// relative precision M.
struct arithmetic_context {
    long p = 2;
    long q = 4;
    int n_max = 1;
    val_t precision = 0;
    backend_kind backend = backend_kind::exact;
    std::shared_ptr<const padic_ring> ring;

    // Validates p prime, N >= 1, M >= 1 (capped).
    static arithmetic_context make(long p, int n_max, backend_kind backend, val_t precision);

    const padic_ring &scalars() const { return *ring; }
};

// M = 8 * ceil(N / (q - 1)) + 64.
val_t default_precision(long p, int n_max);

} // namespace ltpol
