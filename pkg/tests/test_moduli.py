from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic27 import moduli as MD
from cubic27 import tables
from cubic27.exact import Q, QuadExt5, sample_panel
from cubic27.forms import compose_perm

ONE = (Q(1), Q(1), Q(1), Q(2))


def test_u_map_running_point():
    u = MD.u_map(ONE)
    assert len(u) == 15
    assert all(r == 0 for r in MD.trinomial_residuals(u))
    assert MD.u_inverse(u) == ONE


def test_u_inverse_all_ones():
    assert MD.u_inverse((Q(1),) * 15) == (1, 1, 1, 1)
    with pytest.raises(ZeroDivisionError):
        MD.u_inverse((Q(0),) + (Q(1),) * 14)


def test_u_map_d_chart():
    u = MD.u_map(tuple(Q(x) for x in MD.D0))
    assert all(r == 0 for r in MD.trinomial_residuals(u))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_trinomials_vanish_at_random_points(k):
    (pt,) = MD.generic_abcd(77, 1, start=k)
    u = MD.u_map(pt)
    assert all(r == 0 for r in MD.trinomial_residuals(u))
    assert MD.u_inverse(u) == pt


def test_jacobian_rank():
    (pt,) = MD.generic_abcd(5, 1)
    assert MD.trinomial_jacobian_rank(MD.u_map(pt)) == 11


def test_inverse_exponents_are_facet_normals():
    cols = tables.facet_normals()
    rows = MD.inverse_exponent_matrix()
    assert all(rows[k][j] == cols[j][k] for j in range(15) for k in range(4))


def test_g_factor_table():
    rep = MD.g_factor_check(ONE)
    assert rep.ok and rep.checked == 21
    for pt in MD.generic_abcd(3, 5):
        assert MD.g_factor_check(pt).ok
        p, _ = MD.minors_and_q(MD.abcd_matrix(*pt))
        assert p[1, 2, 3] == 1


def test_g_exponents_refit_from_disjoint_panels():
    table = tables.g_exponents()
    fit1 = MD.fit_g_exponents(MD.generic_abcd(7, 30))
    fit2 = MD.fit_g_exponents(MD.generic_abcd(8, 30, start=1000))
    assert fit1 == fit2 == table


def test_gauge_fix_fixed_point():
    pt = (Q(3), Q(5, 2), Q(-7), Q(2, 9))
    assert MD.gauge_fix(MD.xyzw_matrix(*pt)) == pt


def test_chart_change_matches_gauge_fix():
    xyzw = MD.abcd_to_xyzw(*ONE)
    assert xyzw[:3] == (2, 3, Q(4, 3))
    for pt in MD.generic_abcd(4, 10):
        assert MD.gauge_fix(MD.abcd_matrix(*pt)) == MD.abcd_to_xyzw(*pt)


def test_transposition_25_matches_closed_form():
    swap = (0, 4, 2, 3, 1, 5)
    for pt in sample_panel(11, 4, 10, avoid=MD.xyzw_avoid(), bound=20):
        try:
            want = MD.g25(*pt)
        except ZeroDivisionError:
            continue
        assert MD.gauge_fix(MD.permute_columns(MD.xyzw_matrix(*pt), swap)) == want


def test_cremona_inverts_coordinates():
    for pt in sample_panel(12, 4, 10, avoid=MD.xyzw_avoid(), bound=20):
        assert MD.gauge_fix(MD.cremona(MD.xyzw_matrix(*pt))) == tuple(1 / v for v in pt)


def test_minors_permuted_matches_direct():
    m = MD.abcd_matrix(*ONE)
    p = MD.minors_of(m)
    for sigma in [(1, 0, 2, 3, 4, 5), (5, 3, 1, 0, 2, 4), (2, 4, 0, 5, 1, 3)]:
        assert MD.minors_permuted(p, sigma) == MD.minors_of(MD.permute_columns(m, sigma))


PERMS = list(permutations(range(6)))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(PERMS), st.sampled_from(PERMS), st.integers(0, 10**5))
def test_gauge_fix_is_an_action(sigma, tau, k):
    (pt,) = sample_panel(13, 4, 1, avoid=MD.xyzw_avoid(), bound=20, start=k)
    m = MD.xyzw_matrix(*pt)
    try:
        mid = MD.gauge_fix(MD.permute_columns(m, sigma))
        two = MD.gauge_fix(MD.permute_columns(MD.xyzw_matrix(*mid), tau))
        one = MD.gauge_fix(MD.permute_columns(m, compose_perm(tau, sigma)))
    except MD.GaugeError:
        return
    assert two == one


def test_chamber_census():
    cc = MD.chamber_projections()
    assert cc.chambers == 51840 and cc.free
    assert cc.u_classes == 432 and cc.fiber_sizes() == [120]
    assert sum(cc.u_fibers.values()) == 51840
    assert (cc.yoshida_raw, cc.yoshida_projective) == (864, 432)
    assert cc.yoshida_lift == 852


def test_root_generators_act_on_roots():
    base = MD.sign_vector(tuple(Q(x) for x in MD.D0))
    assert len(base) == 36 and 0 not in base
    for g in MD.weyl_root_generators():
        assert g.act(g.act(base)) == base


def test_sign_projection_matches_exact_evaluation():
    proj = MD.u_sign_projection()
    for pt in MD.generic_d(21, 10):
        s = MD.sign_vector(pt)
        u = MD.u_map(pt)
        assert proj(s) == tuple((v > 0) - (v < 0) for v in u)
        y = MD.yoshida_coords(pt)
        assert MD.yoshida_sign_projection()(s) == tuple((v > 0) - (v < 0) for v in y)


def test_yoshida_coords_nonzero():
    for pt in sample_panel(14, 4, 5, avoid=MD.xyzw_avoid(), bound=20):
        y = MD.yoshida_coords(pt)
        assert len(y) == 40 and all(v != 0 for v in y)
    # multidegree (3,...,3): q has degree 2 in every point
    for facs in MD.yoshida_factors():
        deg = [0] * 6
        for t in facs:
            for i in range(6):
                deg[i] += 2 if t == "q" else str(i + 1) in t
        assert deg == [3] * 6
    assert all(c == (24, 9, True) for c in MD.yoshida_root_counts())


def test_eckardt_examples():
    assert MD.eckardt_polys()[0].eval(ONE) == 1
    assert all(v == 0 for v in MD.clebsch_values())
    assert all(isinstance(v, QuadExt5) for v in MD.clebsch_point())


def test_eckardt_census_small():
    ec = MD.eckardt_census(samples=20000, seed=2024)
    assert ec.count <= 120
    for v in ec.vectors:
        assert len(v) == 10 and 0 not in v


def test_eckardt_census_limit_is_hard():
    with pytest.raises(MD.TooManyChambers):
        MD.eckardt_census(samples=20000, seed=2024, limit=10)


def test_euler_sums():
    assert MD.euler_sums() == {"150": 150, "126": 126}
    assert 1215 - 1620 + 630 - 76 + 1 == 150
    assert 1035 - 1395 + 550 - 65 + 1 == 126
