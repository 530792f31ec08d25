import math

import pytest
from hypothesis import given, settings, strategies as st

from fbga import SolverConfig, solve

finite = dict(allow_nan=False, allow_infinity=False)


def bisect(f, lo, hi, tol):
    flo = f(lo)
    while hi - lo > tol:
        m = 0.5 * (lo + hi)
        fm = f(m)
        if (fm > 0) == (flo > 0):
            lo, flo = m, fm
        else:
            hi = m
    return 0.5 * (lo + hi)


def test_linear_root():
    assert solve(lambda x: x - 2.0, 0.0, 10.0) == pytest.approx(2.0, abs=1e-8)


def test_no_sign_change_gives_none():
    assert solve(lambda x: x * x + 1.0, 0.0, 10.0) is None


def test_sqrt2_matches_bisection():
    f = lambda x: x * x - 2.0
    root = solve(f, 0.0, 2.0, SolverConfig(x_tol=1e-10))
    ref = bisect(f, 0.0, 2.0, 1e-12)
    assert abs(root - ref) <= 1e-10
    assert round(root, 10) == 1.4142135624


def test_endpoint_zero_returned_immediately():
    calls = []

    def f(x):
        calls.append(x)
        return x - 3.0

    assert solve(f, 3.0, 7.0) == 3.0
    assert len(calls) == 2


def test_iteration_cap_returns_bracket_midpoint():
    root = solve(lambda x: x**3 - 0.3, 0.0, 1.0, SolverConfig(x_tol=1e-14, f_tol=0.0, max_iter=2))
    assert root is not None and 0.0 <= root <= 1.0


def test_non_finite_region_is_cropped():
    f = lambda x: math.sqrt(x) - 1.0 if x >= 0 else math.nan
    assert solve(f, -5.0, 4.0) == pytest.approx(1.0, abs=1e-8)
    g = lambda x: 1.0 - math.sqrt(4.0 - x) if x <= 4.0 else math.nan
    assert solve(g, 0.0, 9.0) == pytest.approx(3.0, abs=1e-8)


def test_all_non_finite_gives_none():
    assert solve(lambda x: math.nan, 0.0, 1.0) is None


def test_side_selects_admissible_sign():
    f = lambda x: math.exp(x) - 2.0
    for side in ("neg", "pos"):
        x = solve(f, 0.0, 3.0, SolverConfig(x_tol=1e-9, f_tol=1e-3), side=side)
        assert (f(x) <= 0) if side == "neg" else (f(x) >= 0)
        assert x == pytest.approx(math.log(2.0), abs=1e-8)


def test_bad_arguments():
    with pytest.raises(ValueError):
        solve(lambda x: x, 1.0, 0.0)
    with pytest.raises(ValueError):
        SolverConfig(x_tol=0.0)
    with pytest.raises(ValueError):
        SolverConfig(max_iter=0)


@settings(max_examples=300, deadline=None)
@given(r=st.floats(-9, 9, **finite), k=st.integers(1, 4), lo=st.floats(-10, -9.5, **finite),
       hi=st.floats(9.5, 10, **finite))
def test_root_in_bracket_and_shrinking(r, k, lo, hi):
    f = lambda x: math.copysign(abs(x - r) ** (2 * k - 1), x - r) + 0.1 * (x - r)
    hist = []
    x = solve(f, lo, hi, history=hist)
    assert lo <= x <= hi
    assert abs(x - r) <= 1e-6
    widths = [b - a for a, b in hist]
    assert all(w2 <= w1 + 1e-15 for w1, w2 in zip(widths, widths[1:]))
    assert len(hist) <= 100


@settings(max_examples=200, deadline=None)
@given(c=st.floats(0.1, 50, **finite))
def test_matches_closed_form_sqrt(c):
    x = solve(lambda v: v * v - c, 0.0, 10.0, SolverConfig(x_tol=1e-12, f_tol=0.0))
    assert x == pytest.approx(math.sqrt(c), abs=1e-10)
