#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <ltpol/padic.hpp>

namespace ltpol::test
{

inline exact_scalar q(const padic_ring &r, long num, long den = 1)
{
    return exact_scalar::from_rational(num, den, r);
}

inline exact_scalar q(const padic_ring &r, const std::string &s)
{
    return exact_scalar(r, mpq_class(s));
}

// Exact backend context.
inline arithmetic_context exact_ctx(long p, int n)
{
    return arithmetic_context::make(p, n, backend_kind::exact, 0);
}

inline arithmetic_context capped_ctx(long p, int n, val_t m = 0)
{
    return arithmetic_context::make(p, n, backend_kind::capped, m > 0 ? m : default_precision(p, n));
}

} // namespace ltpol::test

namespace ltpol
{

inline std::ostream &operator<<(std::ostream &os, const exact_scalar &x) { return os << x.to_string(); }
inline std::ostream &operator<<(std::ostream &os, const capped_scalar &x) { return os << x.to_string(); }

} // namespace ltpol
