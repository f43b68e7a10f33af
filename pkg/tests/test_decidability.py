import math

import pytest
from hypothesis import given, strategies as st

from zsum.decidability import (
    bound_finite_symbolic, bound_infinite, constants_ledger,
)


def test_small_example():
    L = constants_ledger(3, 2, 4, 4)
    assert L.c_defect == 3 and L.c_ws == 2


def test_structural_identities():
    L = constants_ledger(4, 3, 6, 256)
    assert L.c_card == L.c_more + L.c_less
    assert L.c_eq == L.c_card + L.c_var
    assert L.rhs_bound == L.k * (L.c_defect + L.c_eq)
    assert L.eq_count_bound == 2**L.c_var
    assert L.coefficient_bound == L.k and L.var_count == L.c_var
    assert L.n_min == max(L.thresholds.values())
    assert L.n_min >= 3 * L.c_defect and L.n_min >= 4 * L.c_defect
    assert L.n_min >= 2 * (L.c_defect + L.c_eq)


@given(st.integers(2, 5), st.integers(3, 5), st.integers(2, 10))
def test_generic_bounds(k, ell, delta):
    L = constants_ledger(k, ell, delta, k ** (ell + 1))
    for name, (value, bound) in L.generic_bounds().items():
        assert 0 <= value <= bound, name


@given(st.integers(2, 5), st.integers(1, 5), st.integers(0, 10), st.integers(0, 400),
       st.integers(0, 400))
def test_smaller_c_never_increases_entries(k, ell, delta, c1, c2):
    lo, hi = sorted((c1, c2))
    a, b = constants_ledger(k, ell, delta, lo), constants_ledger(k, ell, delta, hi)
    for name in ("c_defect", "c_less", "c_more", "c_card", "c_ws", "c_var", "c_eq", "n_min",
                 "rhs_bound"):
        assert getattr(a, name) <= getattr(b, name), name


def test_entries_nonnegative_and_floors():
    L = constants_ledger(5, 1, 50, 0)
    assert L.c_defect >= 0 and L.c_less == 0
    assert all(v >= 0 for v in L.record().values() if isinstance(v, int))


def test_nn_reading():
    # a small c makes the rational c_nn expression positive
    L = constants_ledger(5, 3, 2, 0)
    assert L.c_nn == math.ceil(4 * 25 - 2 / 5 - L.c_defect)
    assert constants_ledger(5, 3, 2, 0, nn_zero=True).c_nn == 0
    assert constants_ledger(4, 3, 6, 256).c_nn == 0


def test_argument_errors():
    with pytest.raises(ValueError):
        constants_ledger(1, 3, 2, 1)
    with pytest.raises(ValueError):
        bound_infinite(2, 2, 2)
    with pytest.raises(ValueError):
        bound_finite_symbolic(2, 3, 1)


def test_bound_infinite_values():
    assert bound_infinite(4, 3, 6) == math.ceil(18 * 1798 * math.log(24))
    assert bound_infinite(2, 3, 2) == math.ceil(18 * 114 * math.log(4))


@given(st.integers(2, 6), st.integers(3, 6), st.integers(2, 20))
def test_bound_infinite_monotone(k, ell, delta):
    v = bound_infinite(k, ell, delta)
    assert bound_infinite(k + 1, ell, delta) > v
    assert bound_infinite(k, ell + 1, delta) > v
    assert bound_infinite(k, ell, delta + 1) > v


def test_bound_finite_symbolic():
    b = bound_finite_symbolic(4, 3, 6)
    assert b.m == 262
    assert b.render() == "2^(2^(C*262))"
    assert "C" in b.render()
