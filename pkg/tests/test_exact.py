import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic27 import kernels
from cubic27.exact import (Jet, MPoly, PoleError, Q, QuadExt5, SQRT5, certified_rank, jet_eval,
                           mat_det, mat_nullspace, mat_rank, monomials, parse_poly, rref,
                           sample_panel, sample_point)
from cubic27.exact.linalg import bareiss

rationals = st.fractions(max_denominator=50).map(lambda f: Q(f.numerator, f.denominator))
small = st.integers(-6, 6)


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(st.lists(st.lists(small, min_size=5, max_size=5), min_size=1, max_size=6))
def test_rank_nullity(rows):
    M = [[Q(x) for x in r] for r in rows]
    assert mat_rank(M) + len(mat_nullspace(M)) == 5
    for v in mat_nullspace(M):
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in M)


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-30, 30), min_size=7, max_size=7), min_size=1, max_size=9))
def test_certified_rank_matches_bareiss(rows):
    assert certified_rank(rows).rank == mat_rank([[Q(x) for x in r] for r in rows])


def test_backends_agree():
    rng = random.Random(5)
    # rank 6 inside a 12 x 10 matrix, entries up to 10^6
    B = [[rng.randint(-10**3, 10**3) for _ in range(6)] for _ in range(12)]
    C = [[rng.randint(-10**3, 10**3) for _ in range(10)] for _ in range(6)]
    A = [[sum(B[i][k] * C[k][j] for k in range(6)) for j in range(10)] for i in range(12)]
    ranks = {name: certified_rank(A, kernels.backend_for(name)).rank
             for name in ("python", kernels.BACKEND)}
    assert set(ranks.values()) == {6}


def test_rank_examples():
    I3 = [[Q(int(i == j)) for j in range(3)] for i in range(3)]
    assert mat_rank(I3) == 3
    assert mat_rank([[Q(0)] * 7 for _ in range(4)]) == 0
    # line F12 of the running example: <y2, y0>
    assert mat_rank([[0, 0, 1, 0], [1, 0, 0, 0]]) == 2


def test_nullspace_examples():
    I3 = [[Q(int(i == j)) for j in range(3)] for i in range(3)]
    assert mat_nullspace(I3) == []
    (v,) = mat_nullspace([[Q(1), Q(-1)]])
    assert v[0] == v[1] != 0


def test_conic_through_five_points():
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 1), (6, -4, 3)]
    mons = monomials(3, 2)
    rows = [[Q(x[0]) ** e[0] * Q(x[1]) ** e[1] * Q(x[2]) ** e[2] for e in mons] for x in pts]
    (v,) = mat_nullspace(rows)
    coef = dict(zip(mons, v))
    want = {(2, 0, 0): 0, (1, 1, 0): 1, (1, 0, 1): 2, (0, 2, 0): 0, (0, 1, 1): 1, (0, 0, 2): 0}
    scale = coef[(1, 1, 0)]
    assert all(coef[e] == scale * c for e, c in want.items())


def test_det_and_rref():
    M = [[Q(2), Q(1)], [Q(1), Q(3)]]
    assert mat_det(M) == 5
    E, piv = bareiss([[2, 4, 1], [1, 2, 3]])
    assert piv == [0, 2]
    R, piv = rref([[Q(1), Q(2), Q(3)], [Q(2), Q(4), Q(7)]])
    assert piv == [0, 2] and R == [[1, 2, 0], [0, 0, 1]]


def test_sampling_determinism():
    assert sample_point(1, 2) == sample_point(1, 2)
    x = MPoly.var(1, 0)
    (v,) = sample_point(1, 1, avoid=[x])
    assert v != 0
    assert sample_panel(3, 2, 5) == sample_panel(3, 2, 5)
    assert sample_panel(3, 2, 5)[2:] == sample_panel(3, 2, 3, start=2)


def test_sample_avoids_minors():
    from cubic27.moduli import abcd_matrix, minors_and_q, sixpoint_avoid_abcd
    pt = sample_point(7, 4, avoid=sixpoint_avoid_abcd())
    p, q = minors_and_q(abcd_matrix(*pt))
    # oracle: direct evaluation of the 20 minors and q
    assert all(v != 0 for v in p.values()) and q != 0


polys = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1)),
                        st.integers(-5, 5), max_size=6)


@given(polys, st.tuples(rationals, rationals, rationals))
def test_jets_match_symbolic_derivatives(terms, pt):
    f = MPoly(3, {e: Q(c) for e, c in terms.items()})
    j = jet_eval(f, Jet.seed(list(pt)))
    assert j.val == f.eval(pt)
    assert list(j.d) == [f.diff(i).eval(pt) for i in range(3)]


def test_jet_examples():
    x, y = MPoly.var(4, 0), MPoly.var(4, 1)
    j = jet_eval(x * y, Jet.seed([Q(2), Q(3), Q(0), Q(0)]))
    assert j.val == 6 and list(j.d) == [3, 2, 0, 0]
    c = jet_eval(MPoly.const(4, Q(5)), Jet.seed([Q(1)] * 4))
    assert list(c.d) == [0, 0, 0, 0]
    with pytest.raises(PoleError):
        jet_eval((x, x - 2), Jet.seed([Q(2), Q(0), Q(0), Q(0)]))


@given(rationals, rationals)
def test_quadext_norm(a, b):
    z = QuadExt5(a, b)
    assert z * z.conj() == a * a - 5 * b * b
    if a or b:
        assert z * (1 / z) == 1


def test_sqrt5():
    assert SQRT5 * SQRT5 == 5
    assert (SQRT5 - 2).sign() == 1 and (2 - SQRT5).sign() == -1


def test_parse_poly():
    f = parse_poly("ab^2d+b^2d-bcd-1", ["a", "b", "c", "d"])
    assert f.eval((Q(1), Q(2), Q(3), Q(4))) == 16 + 16 - 24 - 1
