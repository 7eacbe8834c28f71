#pragma once

#include <stdexcept>
#include <string>

namespace ltpol
{

// Bad input to an operation (division by zero, composition with a unit
// constant term, non-prime p, ...).
class arithmetic_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// A capped-precision result could not be separated from its precision
// horizon, or a decision (valuation, pivot, degree) touched such a value.
class precision_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A structural invariant failed: the psi=0 basis lost rank or grading, or a
// pivot valuation fell below the integer-valued floor.
class invariant_violation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace ltpol
