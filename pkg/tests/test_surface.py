import random

import pytest

from cubic27 import moduli as MD
from cubic27 import schlaefli as S
from cubic27 import surface as SF
from cubic27 import tables
from cubic27.exact import MPoly, Q, parse_poly

Y = ["y0", "y1", "y2", "y3"]


def _poly_prop(f, g):
    e = next(iter(f.terms))
    r = f.terms[e] / g.terms[e]
    return set(f.terms) == set(g.terms) and all(f.terms[k] == r * g.terms[k] for k in f.terms)


def test_validate_config():
    cfg = SF.validate_config(tables.running_example()["points"])
    assert len(cfg.points) == 6
    with pytest.raises(SF.DegenerateConfig) as e:
        SF.validate_config([[1, 1, 0, 1, 6, 24], [0, 0, 1, -1, -4, -11], [0, 0, 0, 1, 3, 8]])
    assert "p123" in e.value.args[0]
    with pytest.raises(ValueError):
        SF.validate_config([[1, 2], [3, 4]])


def test_abcd_chart_gives_running_example():
    m = MD.abcd_matrix(Q(1), Q(1), Q(1), Q(2))
    fx = tables.running_example()["points"]
    for j in range(6):
        assert SF.proportional([m[r][j] for r in range(3)], [fx[r][j] for r in range(3)])


def test_plane_curves(running):
    c = running.curves
    assert SF.proportional(c["F45"].coefficients()[0], (1, 3, 2))
    # G6 = x0x1 + 2x0x2 + x1x2 in monomial order x0^2, x0x1, x0x2, x1^2, x1x2, x2^2
    g = dict(zip(SF.PLANE_MONOMIALS, c["G6"].coefficients()[0]))
    assert SF.proportional([g[e] for e in SF.PLANE_MONOMIALS], [0, 1, 2, 0, 1, 0])
    pts = running.config.points
    for i in range(6):
        for j in range(i + 1, 6):
            f = c["F%d%d" % (i + 1, j + 1)].form
            assert all(f.eval(pts[k]) != 0 for k in range(6) if k not in (i, j))


def test_anticanonical_map(running):
    pts = running.config.points
    assert all(y.eval(p) == 0 for y in running.map_cubics for p in pts)
    assert all(sum(next(iter(y.terms))) == 3 for y in running.map_cubics)
    a = SF.map_point(running.map_cubics, (Q(2), Q(5), Q(7)))
    b = SF.map_point(running.map_cubics, (Q(3), Q(-1), Q(4)))
    assert not SF.proportional(a, b)


def test_surface_equation(running):
    printed = parse_poly(tables.running_example()["cubic"], Y)
    assert _poly_prop(running.f, printed)
    other = SF.surface_equation(running.map_cubics, seed=99, start=500)
    assert _poly_prop(running.f, other)
    pt = SF.map_point(running.map_cubics, (Q(3), Q(7), Q(-2)))
    assert running.f.eval(pt) == 0


def test_surface_equation_seed_independent_elsewhere():
    cfg = SF.validate_config(MD.abcd_matrix(Q(1), Q(1), Q(2), Q(1)))
    ymap = SF.anticanonical_map(cfg)
    assert _poly_prop(SF.surface_equation(ymap, seed=1), SF.surface_equation(ymap, seed=2, start=100))


def test_lines(running):
    L = running.lines
    assert L["E5"].same_as([(0, 45, 32, -7), (2, 0, 0, 1)])
    assert L["G6"].same_as([(0, 1, 1, 0), (2, 0, 0, 1)])
    printed = tables.running_lines()
    for lab in S.LABELS:
        assert L[lab].lies_on(running.f)
        assert L[lab].pluecker_relation() == 0
        assert L[lab].same_as(printed[lab][1])


def test_incidence(running):
    pairs = running.pair_set()
    assert len(pairs) == 135
    for a in range(27):
        for b in range(a + 1, 27):
            assert (frozenset((S.LABELS[a], S.LABELS[b])) in pairs) == bool(S.ADJ[a][b])
    e1 = {x for p in pairs if "E1" in p for x in p} - {"E1"}
    assert e1 == {"F1%d" % j for j in range(2, 7)} | {"G%d" % j for j in range(2, 7)}
    assert frozenset(("E1", "E2")) not in pairs


def test_circular_orders(running):
    o = running.orders
    assert o["E2"].canonical() == SF.canonical_order("G1 F12 F26 F25 F24 G3 F23 G4 G5 G6".split())
    assert o["G6"].canonical() == SF.canonical_order("E3 E4 E5 F16 F26 F36 F46 F56 E1 E2".split())
    printed = tables.circular_orders()
    assert all(o[L].canonical() == SF.canonical_order(printed[L]) for L in S.LABELS)
    assert not any(o[L].degenerate for L in S.LABELS)


def test_region_graph(running):
    rg = running.region_graph
    assert rg.f_vector() == (135, 270, 130)
    assert rg.census() == {3: 10, 4: 90, 5: 30}
    # every edge of the region graph bounds exactly two polygons
    count = {}
    for p in rg.polygons:
        k = len(p)
        for i in range(k):
            side = (p[i], frozenset((p[i - 1], p[(i + 1) % k])))
            count[side] = count.get(side, 0) + 1
    assert len(count) == 270 and set(count.values()) == {2}


def test_exposed_structure(running, five_orbits):
    fx = tables.running_example()
    tris = {frozenset(t) for t in running.exposed(3)}
    assert tris == {frozenset(S.names(S.parse_cycle(t))) for t in fx["triangles"]}
    unused = set(S.LABELS) - set().union(*tris)
    top, bottom = fx["double_six"]
    assert unused == set(top) | set(bottom)
    assert S.is_double_six(S.indices_of(top), S.indices_of(bottom))
    big, small = (set(o) for o in five_orbits)
    pents = [S.canonical_cycle([S.INDEX[x] for x in p]) for p in running.exposed(5)]
    assert all(p in big for p in pents) and not any(p in small for p in pents)
    quads = {S.canonical_cycle([S.INDEX[x] for x in p]) for p in running.exposed(4)}
    assert quads == {S.cycle_from_labels(t) for t in fx["quadrilaterals"]}


def test_tritangent_planes(running):
    planes = running.planes
    assert len(planes) == 45
    assert not any(p.eckardt for p in planes.values())
    for p in planes.values():
        for lab in p.triple:
            A, B = running.lines[lab].points
            assert sum(a * b for a, b in zip(p.form, A)) == 0 == sum(a * b for a, b in zip(p.form, B))


def test_clebsch_eckardt_triple():
    cfg = SF.validate_config(MD.abcd_matrix(*MD.clebsch_point()))
    lines = SF.lines_in_p3(cfg)
    (pl,) = SF.tritangent_planes(lines, [("E2", "F12", "G1")])
    assert pl.eckardt
    # oracle: the three pairwise intersection points in Q(sqrt5)
    a = SF.meet(lines["E2"], lines["F12"])
    b = SF.meet(lines["E2"], lines["G1"])
    c = SF.meet(lines["F12"], lines["G1"])
    assert SF.proportional(a, b) and SF.proportional(a, c)


def test_census_equivariant_under_relabelling(running):
    base = {tuple(p) for p in running.region_graph.polygons}
    rng = random.Random(2024)
    for _ in range(5):
        sigma = list(range(6))
        rng.shuffle(sigma)
        cfg = running.config.relabel(sigma)
        model = SF.SurfaceModel(cfg)
        assert model.region_graph.census() == {3: 10, 4: 90, 5: 30}
        g = S._index_perm(tuple(sigma))
        moved = {S.canonical_cycle(S.apply(g, p)) for p in base}
        assert moved == {tuple(p) for p in model.region_graph.polygons}


def test_second_surface_census():
    model = SF.build(MD.abcd_matrix(Q(2), Q(1), Q(1), Q(3)))
    assert model.region_graph.census() == {3: 10, 4: 90, 5: 30}


def test_meet_of_skew_lines(running):
    assert SF.meet(running.lines["E1"], running.lines["E2"]) is None
    assert SF.meet(running.lines["E1"], running.lines["F12"]) is not None
