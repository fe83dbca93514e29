from math import gamma

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic27 import stringy as ST


def test_beta_examples():
    r = ST.beta_numeric(2, 3)
    assert r.estimate == pytest.approx(1 / 12, rel=1e-9)
    assert ST.beta_numeric(1, 1).estimate == pytest.approx(1.0, rel=1e-9)


def test_simplex_examples():
    assert ST.triangle_numeric((1, 1, 1)).estimate == pytest.approx(0.5, rel=1e-8)
    # oracle: Gamma(2) Gamma(1) Gamma(1) / Gamma(4)
    want = gamma(2) * gamma(1) * gamma(1) / gamma(4)
    assert ST.triangle_numeric((2, 1, 1)).estimate == pytest.approx(want, rel=1e-8)


pos = st.floats(0.05, 5.0)


@settings(max_examples=25, deadline=None)
@given(pos, pos)
def test_beta_accuracy_and_symmetry(a, b):
    r, t = ST.beta_numeric(a, b), ST.beta_numeric(b, a)
    assert r.relative < 1e-6
    assert r.estimate == pytest.approx(t.estimate, rel=1e-9)


@settings(max_examples=6, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(0.2, 3.0), st.floats(0.2, 3.0))
def test_simplex_accuracy_and_symmetry(a, b, c):
    base = ST.triangle_numeric((a, b, c))
    assert base.relative < 1e-5
    for s in ((b, c, a), (c, a, b), (b, a, c)):
        assert ST.triangle_numeric(s).estimate == pytest.approx(base.estimate, rel=1e-7)


def test_small_exponents():
    r = ST.beta_numeric(0.05, 0.05)
    assert r.relative < 1e-6


def test_rejects_nonpositive():
    with pytest.raises(ValueError):
        ST.beta_numeric(0, 1)
    with pytest.raises(ValueError):
        ST.triangle_numeric((1, -1, 1))


@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_richardson_exact_on_quadratics(c):
    hs = [0.1, 0.05, 0.025]
    vals = [c[0] + c[1] * h + c[2] * h * h for h in hs]
    assert ST.richardson(vals, hs) == pytest.approx(c[0], abs=1e-9)


def test_beta_limit():
    lim = ST.beta_limit((1.0, 1.0))
    assert lim.alphas == (0.1, 0.05, 0.025)
    assert lim.expected == 2.0 and lim.deviation < 1e-3
    assert all(x > y for x, y in zip(lim.errors, lim.errors[1:]))


def test_triangle_limit():
    lim = ST.triangle_limit((1.0, 1.0, 1.0))
    assert lim.expected == 3.0 and lim.deviation < 1e-3
    assert all(x > y for x, y in zip(lim.errors, lim.errors[1:]))


def test_limit_other_parameters():
    lim = ST.beta_limit((0.5, 1.0))
    assert lim.deviation < 1e-3 * lim.expected
