"""s0(n) for the Lubin-Tate formal group of Q_{p^2} with [p](X) = pX + X^q."""

from fractions import Fraction

from ._ltpol import (
    ArithmeticError,
    InvariantViolation,
    PrecisionError,
    default_precision,
    generator_count,
    is_prime,
    selftest,
    s0_scan,
    wq,
)
from ._ltpol import log_coefficients as _log_coefficients

__all__ = [
    "ArithmeticError",
    "InvariantViolation",
    "PrecisionError",
    "default_precision",
    "generator_count",
    "is_prime",
    "log_coefficients",
    "log_valuations",
    "selftest",
    "s0_scan",
    "wq",
]


def log_coefficients(p, n_max):
    """Exact h_0 .. h_N as Fractions."""
    return [Fraction(value) for _, value in _log_coefficients(p, n_max, "exact")]


def log_valuations(p, n_max, backend="exact", precision=None):
    """v_p(h_n) for n = 0 .. N, None where h_n = 0."""
    return [v for v, _ in _log_coefficients(p, n_max, backend, precision)]
