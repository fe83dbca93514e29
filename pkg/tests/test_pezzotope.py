from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic27 import pezzotope as PZ
from cubic27 import tables
from cubic27.exact import MPoly
from cubic27.moduli import g_polys

A, B = MPoly.var(4, 0), MPoly.var(4, 1)


def test_segment():
    p = PZ.newton_minkowski([A + 1])
    assert p.dim == 1 and p.face_counts() == (2, 1)
    assert p.f_vector() == (2,)


def test_unit_square():
    p = PZ.newton_minkowski([A + 1, B + 1])
    assert p.dim == 2 and p.f_vector() == (4, 4)
    assert sorted(p.vertices) == sorted(product((0, 1), (0, 1), (0,), (0,)))
    normals = sorted(PZ.facet_normals(p))
    assert normals == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_cube_and_simplex():
    cube = PZ.convex_hull(list(product((0, 1), repeat=3)))
    assert cube.f_vector() == (8, 12, 6) and cube.is_simple()
    # a 4-simplex with one extra point beyond the facet x1+x2+x3+x4 = 1
    p = PZ.convex_hull([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
                        (1, 1, 1, 1), (0, 0, 0, 0)])
    assert p.dim == 4 and len(p.vertices) == 6 and p.f_vector() == (6, 14, 16, 8)


def test_interior_points_are_dropped():
    pts = list(product(range(3), repeat=3))
    p = PZ.convex_hull(pts)
    assert len(p.vertices) == 8 and all(p.contains(q) for q in pts)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=4, max_size=14, unique=True))
def test_hull_contains_inputs_and_euler(points):
    if PZ.affine_rank(points) < 3:
        return
    p = PZ.convex_hull(points)
    assert all(p.contains(q) for q in points)
    assert set(p.vertices) <= set(points)
    v, e, f = p.f_vector()
    assert v - e + f == 2


def test_pezzotope_fvector(pezzo):
    fv = pezzo.f_vector()
    assert fv == (45, 90, 60, 15)
    assert fv[0] - fv[1] + fv[2] - fv[3] == 0
    assert pezzo.is_simple()


def test_hull_is_exact(pezzo):
    """Last Minkowski step: every sum point lies in the hull, every vertex is a sum point."""
    polys = g_polys()
    prev = PZ.newton_minkowski(polys[:-1])
    pts = PZ.minkowski_points(prev.vertices, PZ.newton_points(polys[-1]))
    assert all(pezzo.contains(q) for q in pts)
    assert set(pezzo.vertices) <= pts


def test_normals(pezzo):
    m = PZ.match_normals(pezzo)
    assert sorted(i for i, _ in m.values()) == list(range(15))
    assert {s for _, s in m.values()} == {-1}


def test_delta(pezzo):
    d = PZ.delta_complex()
    assert d.counts() == (15, 60, 90, 45)
    assert not d.faces[4]
    assert PZ.non_edge_rule_symmetric()
    assert PZ.fan_matches_complex(pezzo, d).ok


def test_delta_is_a_clique_complex():
    d = PZ.delta_complex()
    for t in d.faces[3]:
        assert all(frozenset(e) in d.edges for e in combinations(t, 2))
        assert all(frozenset(r) in d.faces[2] for r in combinations(t, 3))


def test_facets(pezzo):
    cls = PZ.facet_classification(pezzo)
    m = PZ.match_normals(pezzo)
    by_column = {m[j][0] + 1: k for j, k in cls.items()}
    assert sorted(c for c, k in by_column.items() if k == "associahedron") == list(range(1, 11))
    assert sorted(c for c, k in by_column.items() if k == "cube") == list(range(11, 16))


def test_amplitude():
    rep = PZ.amplitude_identities()
    assert rep.ok and rep.adjacent_pairs == 90 and rep.terms == 45
    quads = {frozenset(q) for g in tables.amplitude().values() for q in g}
    assert quads == PZ.delta_complex().faces[3]


def _form(*pairs):
    return PZ.wedge_all([PZ.dlog_monomial(n, d) for n, d in pairs])


def test_residues_printed():
    om = PZ.omega_abcd()
    assert PZ.u_residue(om, 1) == _form(([10], [8, 9, 14]), ([9, 11], [4, 12]), ([4, 6, 14], [3]))
    assert PZ.u_residue(om, 11) == _form(([10], [9]), ([6], [3]), ([1], [2]))


def test_residue_without_pole_is_zero():
    f = _form(([2], []), ([3], []), ([4], []), ([5], []))
    assert PZ.u_residue(f, 1).is_zero()


def test_wedge_antisymmetry():
    a, b = PZ.dlog_monomial([1]), PZ.dlog_monomial([2], [3])
    assert a.wedge(b) == -(b.wedge(a))
    assert a.wedge(a).is_zero()


COMPATIBLE = [(i, j) for i in range(1, 16) for j in range(1, 16)
              if i < j and j not in PZ.vanishing_set(i) and i not in PZ.vanishing_set(j)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(COMPATIBLE))
def test_iterated_residues_antisymmetric(ij):
    i, j = ij
    om = PZ.omega_abcd()
    a = PZ.u_residue(PZ.u_residue(om, i), j)
    b = PZ.u_residue(PZ.u_residue(om, j), i)
    assert a == -b


@settings(max_examples=40, deadline=None)
@given(st.lists(st.dictionaries(st.integers(1, 15), st.integers(-2, 2), min_size=1, max_size=4),
                min_size=3, max_size=3), st.sampled_from(COMPATIBLE))
def test_iterated_residues_antisymmetric_generic(exps, ij):
    i, j = ij
    f = PZ.wedge_all([PZ.DlogForm.one_form(e) for e in exps])
    a = PZ.u_residue(PZ.u_residue(f, i), j)
    b = PZ.u_residue(PZ.u_residue(f, j), i)
    assert a == -b


def test_compatible_pairs_are_delta_edges():
    d = PZ.delta_complex()
    assert {frozenset(p) for p in COMPATIBLE} == d.edges


def test_hull_rejects_empty():
    with pytest.raises(PZ.HullError):
        PZ.convex_hull([])
