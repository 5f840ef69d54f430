from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from hadminor.bounds import (
    SQRT2,
    TAU,
    TAU_FLOAT,
    Surd,
    alpha5_guarantee,
    bound_r,
    ceil_log,
    check_f_properties,
    dm2_guarantee,
    f_eval,
    log_guarantee,
)
from hadminor.errors import DomainError, ParameterError
from hadminor.experiments import bounds_table

mpmath.mp.dps = 60
MP_TAU = 2 * mpmath.sqrt(2) / (mpmath.sqrt(2) - 1)


def f_mp(x):
    """High-precision reference; callers avoid exact boundaries."""
    if x == 0:
        return 0
    return max(int(mpmath.ceil(mpmath.log(MP_TAU * x / (4 * mpmath.sqrt(2)), MP_TAU))), 0)


def test_tau_value():
    assert TAU == Surd(4, 2)
    assert abs(TAU_FLOAT - float(MP_TAU)) < 1e-15
    assert abs(TAU_FLOAT - 6.8284271247) < 1e-9


def test_surd_arithmetic_and_order():
    assert SQRT2 * SQRT2 == 2
    assert (1 + SQRT2) * (SQRT2 - 1) == 1
    assert Surd(0, 1) > Fraction(141421356, 100000000)
    assert Surd(0, 1) < Fraction(141421357, 100000000)
    assert Surd(3, -2) > 0 and Surd(-3, 2) < 0
    assert (TAU / TAU) == 1
    with pytest.raises(ZeroDivisionError):
        TAU / Surd(0, 0)


def test_f_examples():
    assert f_eval(0) == 0
    assert f_eval(4 * SQRT2) == 1
    assert f_eval(2 * SQRT2 * 14) == 3
    assert f_eval(1) == 1  # 4*sqrt2 < tau


def test_f_domain():
    with pytest.raises(DomainError):
        f_eval(Fraction(1, 2))


def test_ceil_log_exact_at_powers():
    for m in range(-3, 12):
        assert ceil_log(TAU**m, TAU) == m
    # just above a power the ceiling jumps
    for m in range(0, 8):
        assert ceil_log(TAU**m * Fraction(1000001, 1000000), TAU) == m + 1


def test_f_exact_boundaries():
    # tau x / (4 sqrt2) = tau^m  <=>  x = 4 sqrt2 tau^(m-1)
    for m in range(1, 6):
        assert f_eval(4 * SQRT2 * TAU ** (m - 1)) == m


@given(st.integers(1, 10**6))
def test_f_matches_high_precision_on_integers(x):
    assert f_eval(x) == f_mp(x)


@given(st.integers(1, 5000))
def test_bound_r_matches_high_precision(a):
    assert bound_r(a) == 2 * a - f_mp(2 * mpmath.sqrt(2) * a)
    assert bound_r(a) == 2 * a - f_eval(2 * SQRT2 * a)


def test_bound_r_examples():
    assert bound_r(1) == 1 and bound_r(2) == 3 and bound_r(14) == 25
    with pytest.raises(ParameterError):
        bound_r(0)


def test_bound_crossover():
    for a in range(3, 14):
        assert bound_r(a) >= 2 * a - 2
    for a in range(14, 301):
        assert bound_r(a) < 2 * a - 2
    rows = bounds_table(300)
    assert [r["alpha"] for r in rows if r["r_beats_2a_minus_2"]][0] == 14


def test_guarantees():
    assert dm2_guarantee(6, 1) == 6 and dm2_guarantee(5, 2) == 2 and dm2_guarantee(10, 4) == 2
    assert log_guarantee(5, 2) == 2 and log_guarantee(7, 1) == 7
    assert alpha5_guarantee(10) == 2 and alpha5_guarantee(38) == 5 and alpha5_guarantee(39) == 6


def test_check_f_properties_small():
    rep = check_f_properties(2)
    assert rep.ok and [r.name for r in rep.results] == [f"P{i}" for i in range(1, 12)]
    with pytest.raises(ParameterError):
        check_f_properties(1)


def test_check_f_properties_perturbed_base_fails():
    rep = check_f_properties(60, 6.0)
    assert not rep.ok and rep.failed()
