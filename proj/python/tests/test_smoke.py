from fractions import Fraction

import pytest

import ltpol


def test_wq():
    assert ltpol.wq(16, 4) == 5
    assert ltpol.wq(3, 4) == 0
    assert ltpol.default_precision(2, 120) == 384


def test_log_coefficients():
    h = ltpol.log_coefficients(2, 10)
    assert h[1] == 1
    assert h[4] == Fraction(-1, 14)
    assert h[7] == Fraction(8, 441)
    assert h[10] == Fraction(-202, 32193)
    assert all(h[n] == 0 for n in range(2, 11) if (n - 1) % 3)
    v = ltpol.log_valuations(2, 16, backend="capped", precision=64)
    assert v[4] == -1 and v[16] == -2 and v[2] is None


def test_s0_scan_matches_frozen_values():
    res = ltpol.s0_scan(2, 12, backend="exact")
    assert res["s0"] == [0, 1, 2, 6, 4, 8, 12, -1, 8, 12, 10, -1, -1]
    assert res["finite_prefix"] == 6
    assert res["unresolved"] == 3
    assert res["csv"].splitlines()[0] == "n,w_q,s0,s0_minus_n"


def test_backends_agree():
    exact = ltpol.s0_scan(3, 16, backend="exact")
    capped = ltpol.s0_scan(3, 16, backend="capped", shuffle_seed=4)
    assert exact["s0"] == capped["s0"]
    assert exact["csv"] == capped["csv"]
    assert capped["precision"] == ltpol.default_precision(3, 16)


def test_errors():
    with pytest.raises(ltpol.ArithmeticError):
        ltpol.s0_scan(4, 8)
    with pytest.raises(ltpol.PrecisionError):
        ltpol.s0_scan(2, 60, precision=8)


def test_selftest():
    rows = ltpol.selftest(p=3, n_max=12)
    assert rows and all(r["passed"] for r in rows)
