#include <ltpol/padic.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ltpol
{

std::string to_string(backend_kind b)
{
    return b == backend_kind::exact ? "exact" : "capped";
}

backend_kind parse_backend(const std::string &s)
{
    if (s == "exact") {
        return backend_kind::exact;
    }
    if (s == "capped") {
        return backend_kind::capped;
    }
    throw std::invalid_argument("unknown backend '" + s + "' (expected exact or capped)");
}

bool is_prime(long n)
{
    if (n < 2) {
        return false;
    }
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

val_t integer_valuation(const mpz_class &n, long p)
{
    if (sgn(n) == 0) {
        return kInfinity;
    }
    if (p == 2) {
        return static_cast<val_t>(mpz_scan1(n.get_mpz_t(), 0));
    }
    mpz_class tmp, pz(p);
    return static_cast<val_t>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

padic_ring::padic_ring(long p, val_t cap) : m_p(p), m_cap(cap), m_pz(p)
{
    if (!is_prime(p)) {
        throw arithmetic_error("p = " + std::to_string(p) + " is not prime");
    }
    if (cap < 0) {
        throw arithmetic_error("negative precision cap");
    }
    m_powers.reserve(static_cast<std::size_t>(cap) + 1);
    mpz_class x = 1;
    for (val_t k = 0; k <= cap; ++k) {
        m_powers.push_back(x);
        x *= p;
    }
}

const mpz_class &padic_ring::power(val_t k) const
{
    if (k < 0 || k > m_cap) {
        throw std::out_of_range("power p^" + std::to_string(k) + " beyond the precision cap");
    }
    return m_powers[static_cast<std::size_t>(k)];
}

void padic_ring::reduce(mpz_class &x, val_t k) const
{
    if (m_p == 2) {
        mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    } else {
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), power(k).get_mpz_t());
    }
}

val_t padic_ring::remove_p(mpz_class &x) const
{
    if (m_p == 2) {
        const auto k = mpz_scan1(x.get_mpz_t(), 0);
        mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), k);
        return static_cast<val_t>(k);
    }
    return static_cast<val_t>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), m_pz.get_mpz_t()));
}

// ---------------------------------------------------------------- exact

exact_scalar exact_scalar::from_rational(const mpz_class &num, const mpz_class &den, const padic_ring &ring)
{
    if (sgn(den) == 0) {
        throw arithmetic_error("rational with zero denominator");
    }
    return exact_scalar(ring, mpq_class(num, den));
}

exact_scalar exact_scalar::prime_power(val_t k, const padic_ring &ring)
{
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(ring.prime()),
                  static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? exact_scalar(ring, mpq_class(mpz_class(1), pk)) : exact_scalar(ring, mpq_class(pk));
}

val_t exact_scalar::valuation() const
{
    if (is_exact_zero()) {
        return kInfinity;
    }
    const long p = m_ring->prime();
    return integer_valuation(m_value.get_num(), p) - integer_valuation(m_value.get_den(), p);
}

mpz_class exact_scalar::unit_residue(val_t k) const
{
    if (is_exact_zero()) {
        throw arithmetic_error("unit part of zero");
    }
    mpz_class num = m_value.get_num(), den = m_value.get_den(), pz = m_ring->prime(), mod;
    mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    mpz_pow_ui(mod.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    mpz_class r = num * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return r;
}

exact_scalar &exact_scalar::operator/=(const exact_scalar &o)
{
    if (o.is_exact_zero()) {
        throw arithmetic_error("division by zero");
    }
    m_value /= o.m_value;
    return *this;
}

void exact_scalar::sub_mul(const exact_scalar &a, const exact_scalar &b)
{
    if (a.is_exact_zero() || b.is_exact_zero()) {
        return;
    }
    m_value -= a.m_value * b.m_value;
}

// ---------------------------------------------------------------- capped

capped_scalar capped_scalar::from_rational(const mpz_class &num, const mpz_class &den, const padic_ring &ring)
{
    if (sgn(den) == 0) {
        throw arithmetic_error("rational with zero denominator");
    }
    if (sgn(num) == 0) {
        return capped_scalar(ring);
    }
    mpz_class n = num, d = den;
    const val_t v = ring.remove_p(n) - ring.remove_p(d);
    const val_t rel = ring.cap();
    if (rel == 0) {
        return precision_zero(v, ring);
    }
    ring.reduce(n, rel);
    ring.reduce(d, rel);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), ring.power(rel).get_mpz_t());
    n *= inv;
    ring.reduce(n, rel);
    return capped_scalar(ring, v, v + rel, std::move(n));
}

capped_scalar capped_scalar::from_integer(const mpz_class &n, const padic_ring &ring)
{
    return from_rational(n, 1, ring);
}

capped_scalar capped_scalar::prime_power(val_t k, const padic_ring &ring)
{
    if (ring.cap() == 0) {
        return precision_zero(k, ring);
    }
    return capped_scalar(ring, k, k + ring.cap(), mpz_class(1));
}

capped_scalar capped_scalar::precision_zero(val_t abs, const padic_ring &ring)
{
    capped_scalar r(ring);
    r.m_abs = abs;
    return r;
}

val_t capped_scalar::valuation() const
{
    if (is_precision_zero()) {
        throw precision_error("uncertifiable valuation: value is zero modulo p^" + std::to_string(m_abs));
    }
    return m_val;
}

mpz_class capped_scalar::unit_residue(val_t k) const
{
    if (is_zero()) {
        throw precision_error("unit part of a zero value");
    }
    if (k > rel_precision()) {
        throw precision_error("unit requested to " + std::to_string(k) + " digits, only "
                              + std::to_string(rel_precision()) + " known");
    }
    mpz_class r = m_unit;
    m_ring->reduce(r, k);
    return r;
}

std::string capped_scalar::to_string() const
{
    std::ostringstream os;
    const long p = m_ring ? m_ring->prime() : 0;
    if (is_exact_zero()) {
        return "0";
    }
    if (is_precision_zero()) {
        os << "O(" << p << "^" << m_abs << ")";
        return os.str();
    }
    os << m_unit.get_str() << "*" << p << "^" << m_val << " + O(" << p << "^" << m_abs << ")";
    return os.str();
}

capped_scalar capped_scalar::operator-() const
{
    if (is_zero()) {
        return *this;
    }
    capped_scalar r(*this);
    r.m_unit = m_ring->power(rel_precision()) - m_unit;
    return r;
}

void capped_scalar::assign_normalized(mpz_class &&sum, val_t base, val_t abs)
{
    m_ring->reduce(sum, abs - base);
    if (sgn(sum) == 0) {
        m_val = kInfinity;
        m_abs = abs;
        m_unit = 0;
        return;
    }
    const val_t k = m_ring->remove_p(sum);
    m_val = base + k;
    const val_t rel = std::min(abs - m_val, m_ring->cap());
    m_ring->reduce(sum, rel);
    m_abs = m_val + rel;
    m_unit = std::move(sum);
}

void capped_scalar::add_signed(const capped_scalar &o, bool negate)
{
    if (o.is_exact_zero()) {
        return;
    }
    if (is_exact_zero()) {
        *this = negate ? -o : o;
        return;
    }
    const val_t abs = std::min(m_abs, o.m_abs);
    const bool use_this = m_val < abs;
    const bool use_other = o.m_val < abs;
    if (!use_this && !use_other) {
        m_val = kInfinity;
        m_abs = abs;
        m_unit = 0;
        return;
    }
    if (use_this && !use_other) {
        // Only the precision drops.
        mpz_class u = m_unit;
        assign_normalized(std::move(u), m_val, abs);
        return;
    }
    if (!use_this) {
        mpz_class u = negate ? mpz_class(-o.m_unit) : o.m_unit;
        assign_normalized(std::move(u), o.m_val, abs);
        return;
    }
    const val_t base = std::min(m_val, o.m_val);
    mpz_class sum = m_unit;
    if (m_val > base) {
        sum *= m_ring->power(m_val - base);
    }
    if (o.m_val > base) {
        mpz_class t = o.m_unit * m_ring->power(o.m_val - base);
        negate ? sum -= t : sum += t;
    } else {
        negate ? sum -= o.m_unit : sum += o.m_unit;
    }
    assign_normalized(std::move(sum), base, abs);
}

capped_scalar &capped_scalar::operator+=(const capped_scalar &o)
{
    add_signed(o, false);
    return *this;
}

capped_scalar &capped_scalar::operator-=(const capped_scalar &o)
{
    add_signed(o, true);
    return *this;
}

capped_scalar &capped_scalar::operator*=(const capped_scalar &o)
{
    if (is_exact_zero()) {
        return *this;
    }
    if (o.is_exact_zero()) {
        *this = o;
        return *this;
    }
    if (is_precision_zero() || o.is_precision_zero()) {
        // A zero known to p^a times y is zero known to p^(a + v(y)).
        const val_t a = is_precision_zero() ? m_abs : m_val;
        const val_t b = o.is_precision_zero() ? o.m_abs : o.m_val;
        m_val = kInfinity;
        m_abs = a + b;
        m_unit = 0;
        return *this;
    }
    const val_t rel = std::min(rel_precision(), o.rel_precision());
    m_unit *= o.m_unit;
    m_ring->reduce(m_unit, rel);
    m_val += o.m_val;
    m_abs = m_val + rel;
    return *this;
}

capped_scalar &capped_scalar::operator/=(const capped_scalar &o)
{
    if (o.is_exact_zero()) {
        throw arithmetic_error("division by zero");
    }
    if (o.is_precision_zero()) {
        throw precision_error("division by a value that is zero modulo p^" + std::to_string(o.m_abs));
    }
    if (is_exact_zero()) {
        return *this;
    }
    if (is_precision_zero()) {
        m_abs -= o.m_val;
        return *this;
    }
    const val_t rel = std::min(rel_precision(), o.rel_precision());
    const mpz_class &mod = m_ring->power(rel);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), o.m_unit.get_mpz_t(), mod.get_mpz_t());
    m_unit *= inv;
    m_ring->reduce(m_unit, rel);
    m_val -= o.m_val;
    m_abs = m_val + rel;
    return *this;
}

void capped_scalar::sub_mul(const capped_scalar &a, const capped_scalar &b)
{
    if (a.is_exact_zero() || b.is_exact_zero()) {
        return;
    }
    capped_scalar t = a;
    t *= b;
    add_signed(t, true);
}

// ---------------------------------------------------------------- context

arithmetic_context arithmetic_context::make(long p, int n_max, backend_kind backend, val_t precision)
{
    if (!is_prime(p)) {
        throw arithmetic_error("p = " + std::to_string(p) + " is not prime");
    }
    if (n_max < 1) {
        throw arithmetic_error("truncation bound N must be at least 1");
    }
    if (backend == backend_kind::capped && precision < 1) {
        throw arithmetic_error("capped backend needs precision M >= 1");
    }
    arithmetic_context ctx;
    ctx.p = p;
    ctx.q = p * p;
    ctx.n_max = n_max;
    ctx.backend = backend;
    ctx.precision = backend == backend_kind::capped ? precision : kInfinity;
    ctx.ring = std::make_shared<const padic_ring>(p, backend == backend_kind::capped ? precision : 0);
    return ctx;
}

val_t default_precision(long p, int n_max)
{
    const val_t q1 = p * p - 1;
    return 8 * ((n_max + q1 - 1) / q1) + 64;
}

} // namespace ltpol
