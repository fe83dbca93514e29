"""The acceptance suite: thirteen criteria, each filling checks into a Report.

Expensive shared objects (the Weyl group, cycle orbits, the running example
model, the pezzotope) live on a Context and are built by the first criterion
that needs them; each criterion's time budget covers its own work plus
whatever it builds first.
"""

import time

from . import forms as FM
from . import moduli as MD
from . import pezzotope as PZ
from . import schlaefli as S
from . import stringy as ST
from . import surface as SF
from . import tables
from .exact import parse_poly
from .report import Check, Report


class Context:
    def __init__(self, seed=2024, samples=200000):
        self.seed = seed
        self.samples = samples
        self._cache = {}

    def get(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def group(self):
        return self.get("group", S.generate_weyl)

    def cycles(self, k):
        return self.get(("cycles", k), lambda: S.enumerate_cycles(k, chordless=False))

    def orbits(self, k):
        return self.get(("orbits", k), lambda: S.orbit_decompose(self.cycles(k), self.group))

    @property
    def model(self):
        return self.get("model", lambda: SF.build(tables.running_example()["points"], seed=self.seed))

    @property
    def pezzotope(self):
        return self.get("pezzotope", PZ.pezzotope)

    @property
    def delta(self):
        return self.get("delta", PZ.delta_complex)


def _canon_set(triples):
    return {frozenset(t) for t in triples}


def poly_proportional(f, g):
    if set(f.terms) != set(g.terms) or not f.terms:
        return False
    e0 = next(iter(f.terms))
    r = f.terms[e0] / g.terms[e0]
    return all(f.terms[e] == r * g.terms[e] for e in f.terms)


# ---------------------------------------------------------------------------
# group and combinatorics


def weyl_order(rep, ctx):
    n = rep.add("order", ctx.group.order())
    rep.check("weyl group order", "weyl-order", n == S.WEYL_ORDER, n)


def cycle_orbits(rep, ctx):
    counts = [len(ctx.cycles(k)) for k in (3, 4, 5)]
    rep.add("cycle_counts", counts)
    rep.check("cycle counts", "cycle-census", counts == [45, 1080, 6912], counts)
    sizes = {k: [len(o) for o in ctx.orbits(k)] for k in (3, 4, 5)}
    rep.add("orbit_sizes", sizes)
    rep.check("orbit sizes", "cycle-orbits",
              sizes == {3: [45], 4: [1080], 5: [4320, 2592]}, sizes)
    chordless = {k: len(S.enumerate_cycles(k)) for k in (3, 4, 5)}
    rep.add("chordless_counts", chordless)
    small5 = set(ctx.orbits(5)[-1])
    rep.check("chordless five-cycles form the 2592 orbit", "cycle-orbits",
              set(S.enumerate_cycles(5)) == small5 and len(small5) == 2592)
    unique = 0
    for c in ctx.cycles(4):
        try:
            S.adjoint_vertex(c)
            unique += 1
        except S.AmbiguousAdjoint:
            pass
    rep.add("unique_adjoint_vertices", unique)
    rep.check("adjoint vertex unique", "adjoint-vertex", unique == 1080, unique)


def triangle_configs(rep, ctx):
    tc = S.triangle_configurations(group=ctx.group)
    rep.add("stabilizer", tc.stabilizer_order)
    rep.add("orbit", tc.orbit_size)
    rep.add("set_stabilizer", tc.set_stabilizer_order)
    rep.add("set_orbit", tc.set_orbit_size)
    rep.check("stabilizer and orbit", "triangle-configs",
              (tc.stabilizer_order, tc.orbit_size) == (120, 432),
              [tc.stabilizer_order, tc.orbit_size])
    rep.check("orbit-stabilizer", "triangle-configs",
              tc.stabilizer_order * tc.orbit_size == S.WEYL_ORDER)
    return tc


def configurations(rep, ctx):
    double_six_counts(rep, ctx, triangle_configs(rep, ctx).orbit_size)


def double_six_counts(rep, ctx, orbit=432):
    ds = S.double_sixes()
    f6 = S.one_factorizations_k6()
    rep.add("double_sixes", len(ds))
    rep.add("one_factorizations", len(f6))
    rep.check("double-six count", "double-sixes", len(ds) == 36, len(ds))
    rep.check("all double-sixes valid", "double-sixes", all(S.is_double_six(a, b) for a, b in ds))
    rep.check("one-factorization count", "double-sixes", len(f6) == 6, len(f6))
    rep.check("36*6*2 = orbit", "double-sixes", len(ds) * len(f6) * 2 == orbit == 432)


# ---------------------------------------------------------------------------
# surfaces


def surface_census(rep, model):
    rg = model.region_graph
    fv = rg.f_vector()
    census = rg.census()
    rep.add("region_graph", list(fv[:2]))
    rep.add("polygons", fv[2])
    rep.add("census", census)
    rep.add("turn_cycle_census", rg.turn_census())
    rep.check("region graph size", "region-graph", fv[:2] == (135, 270), list(fv[:2]))
    rep.check("polygon census", "polygon-census", census == {3: 10, 4: 90, 5: 30}, census)
    rep.check("no polygon with six or more sides", "polygon-census", max(census) <= 5)


def running_pipeline(rep, ctx):
    fx = tables.running_example()
    model = ctx.model
    cubic = parse_poly(fx["cubic"], ["y0", "y1", "y2", "y3"])
    rep.add("cubic_terms", len(model.f.terms))
    rep.check("cubic equals printed cubic up to scale", "running-cubic",
              poly_proportional(model.f, cubic))
    printed = tables.running_lines()
    bad_lines = [L for L in S.LABELS if not model.lines[L].same_as(printed[L][1])]
    rep.add("lines_matching", 27 - len(bad_lines))
    rep.check("27 lines match", "running-lines", not bad_lines, bad_lines)
    orders = tables.circular_orders()
    bad_orders = [L for L in S.LABELS
                  if model.orders[L].degenerate
                  or model.orders[L].canonical() != SF.canonical_order(orders[L])]
    rep.add("orders_matching", 27 - len(bad_orders))
    rep.check("27 circular orders match", "circular-orders", not bad_orders, bad_orders)
    surface_census(rep, model)


def exposure(rep, ctx):
    fx = tables.running_example()
    model = ctx.model
    tris = _canon_set(tuple(S.INDEX[x] for x in t) for t in model.exposed(3))
    printed = _canon_set(S.parse_cycle(t) for t in fx["triangles"])
    rep.add("exposed_triangles", sorted("".join(S.names(sorted(t))) for t in tris))
    rep.check("exposed triangles equal the printed ten", "exposed-triangles",
              tris == printed and len(tris) == 10)
    used = set().union(*tris) if tris else set()
    unused = set(range(S.N)) - used
    top, bottom = (S.indices_of(r) for r in fx["double_six"])
    rep.add("unused_lines", sorted(S.LABELS[i] for i in unused))
    rep.check("unused lines form the printed double-six", "unused-double-six",
              unused == set(top) | set(bottom) and S.is_double_six(top, bottom))
    big = set(ctx.orbits(5)[0])
    pents = [S.canonical_cycle([S.INDEX[x] for x in p]) for p in model.exposed(5)]
    in_big = sum(1 for p in pents if p in big)
    rep.add("pentagons_in_4320_orbit", in_big)
    rep.check("exposed pentagons in the 4320 orbit", "pentagon-orbit",
              in_big == len(pents) == 30 and len(big) == 4320, in_big)
    printed5 = {S.cycle_from_labels(t) for t in fx["pentagons"]}
    rep.check("exposed pentagons equal the printed list", "pentagon-orbit", set(pents) == printed5)


# ---------------------------------------------------------------------------
# moduli


def u_equations(rep, ctx, count=50):
    pts4 = MD.generic_abcd(ctx.seed, count)
    pts6 = MD.generic_d(ctx.seed, count)
    bad4 = sum(1 for p in pts4 if any(r != 0 for r in MD.trinomial_residuals(MD.u_map(p))))
    bad6 = sum(1 for p in pts6 if any(r != 0 for r in MD.trinomial_residuals(MD.u_map(p))))
    rep.add("points_per_chart", count)
    rep.add("nonzero_residuals", {"abcd": bad4, "d": bad6})
    rep.check("trinomials vanish in the abcd chart", "u-equations", bad4 == 0 and len(pts4) == count)
    rep.check("trinomials vanish in the d chart", "u-equations", bad6 == 0 and len(pts6) == count)
    trips = sum(1 for p in pts4 if MD.u_inverse(MD.u_map(p)) == tuple(p))
    rep.add("roundtrips", trips)
    rep.check("inverse roundtrip exact", "u-inverse", trips == count, trips)
    r = MD.trinomial_jacobian_rank(MD.u_map(pts4[0]))
    rep.add("jacobian_rank", r)
    rep.check("jacobian rank 11", "u-dimension", r == 11, r)


def chambers(rep, ctx):
    cc = MD.chamber_projections()
    rep.add("chambers", cc.chambers)
    rep.add("free", cc.free)
    rep.add("u_classes", cc.u_classes)
    rep.add("u_fiber_sizes", cc.fiber_sizes())
    rep.add("yoshida_lift", cc.yoshida_lift)
    rep.add("yoshida_raw", cc.yoshida_raw)
    rep.add("yoshida_projective", cc.yoshida_projective)
    rep.check("chamber orbit", "chamber-orbit", cc.chambers == 51840 and cc.free, cc.chambers)
    rep.check("u-sign classes", "u-sign-classes",
              cc.u_classes == 432 and cc.fiber_sizes() == [120], [cc.u_classes, cc.fiber_sizes()])
    rep.check("yoshida sign vectors", "yoshida-signs",
              (cc.yoshida_raw, cc.yoshida_projective) == (864, 432),
              [cc.yoshida_raw, cc.yoshida_projective])
    return cc


def eckardt(rep, ctx):
    samples = max(ctx.samples, 200000)
    try:
        ec = MD.eckardt_census(samples=samples, seed=ctx.seed)
        count, stable, last = ec.count, ec.stable, max(ec.first_seen.values())
        over = False
    except MD.TooManyChambers as e:
        count, stable, last, over = None, False, None, str(e)
    rep.add("samples", samples)
    rep.add("sign_vectors", count)
    rep.add("last_new_vector", last)
    rep.check("census never exceeds 120", "eckardt-census", not over, over or "")
    rep.check("census stabilizes at 120", "eckardt-census", count == 120 and stable, count)
    cl = MD.clebsch_values()
    rep.add("clebsch_zeros", sum(1 for v in cl if v == 0))
    rep.check("Eckardt polynomials vanish at the Clebsch point", "clebsch-eckardt",
              all(v == 0 for v in cl))


# ---------------------------------------------------------------------------
# pezzotope


def pezzotope_checks(rep, ctx):
    p = ctx.pezzotope
    fv = p.f_vector()
    rep.add("f_vector", fv)
    rep.check("f-vector", "pezzotope-fvector", fv == (45, 90, 60, 15), fv)
    rep.check("simple", "pezzotope-fvector", p.is_simple())
    m = PZ.match_normals(p)
    rep.add("normal_sign", sorted({s for _, s in m.values()}))
    rep.check("facet normals match the printed columns", "pezzotope-normals",
              sorted(i for i, _ in m.values()) == list(range(15)))
    d = ctx.delta
    rep.add("delta_counts", d.counts())
    rep.check("Delta counts", "delta-counts", d.counts() == (15, 60, 90, 45), d.counts())
    try:
        fan = PZ.fan_matches_complex(p, d)
        fan_ok = fan.ok
    except PZ.FanMismatch:
        fan_ok = False
    rep.check("vertex facet sets are the Delta tetrahedra", "pezzotope-fan", fan_ok)
    quads = {frozenset(t) for grp in tables.amplitude().values() for t in grp}
    rep.add("amplitude_terms", len(quads))
    rep.check("amplitude denominators are the Delta tetrahedra", "amplitude-denominators",
              quads == set(d.faces[3]))
    amp = PZ.amplitude_identities()
    rep.add("amplitude_adjacent_pairs", amp.adjacent_pairs)
    rep.check("amplitude identities", "amplitude-denominators", amp.ok)
    cls = PZ.facet_classification(p)
    kinds = {k: sum(1 for v in cls.values() if v == k) for k in ("cube", "associahedron")}
    rep.add("facet_kinds", kinds)
    rep.check("5 cubes and 10 associahedra", "pezzotope-facets",
              kinds == {"cube": 5, "associahedron": 10}, kinds)


# ---------------------------------------------------------------------------
# forms


def surface_rank(rep, ctx):
    rr = FM.surface_rank(ctx.model, seed=ctx.seed)
    rep.add("surface_forms", rr.forms)
    rep.add("surface_rank", rr.rank)
    rep.add("surface_nullity", rr.nullity)
    rep.check("surface rank and nullity", "surface-rank",
              (rr.rank, rr.nullity) == (109, 21), [rr.rank, rr.nullity])


def moduli_ranks(rep, ctx):
    values = ctx.get("moduli_values", lambda: FM.shared_values(ctx.seed))
    for lib, claim, sizes, rank in (("X", "x36-rank", None, 126), ("Y", "y36-rank", (120, 180, 120, 12), 150)):
        oc = FM.moduli_orbit_census(lib, seed=ctx.seed, values=values)
        rep.add("%s_orbit_sizes" % lib, oc.sizes)
        rep.add("%s_total" % lib, oc.total)
        rep.add("%s_rank" % lib, oc.rank)
        total = 372 if lib == "X" else 432
        ok = oc.total == total and oc.rank == rank and (sizes is None or oc.sizes == sizes)
        rep.check("%s(3,6) library" % lib, claim, ok, [oc.sizes, oc.total, oc.rank])


def ranks(rep, ctx):
    surface_rank(rep, ctx)
    moduli_ranks(rep, ctx)


def _constant_ratio(values):
    return len(values) > 0 and all(v == values[0] for v in values) and values[0] != 0


def form_crosschecks(rep, ctx, points=10):
    model = ctx.model
    quad = [S.LABELS[i] for i in S.cycle_from_labels("E5F35G5F45")]
    variants = FM.quadrilateral_pairings(quad, model)
    pts = FM.plane_panel(model, variants, points, ctx.seed)
    ratios = [v[0] / v[1] for _, v in pts] if len(variants) == 2 else []
    rep.add("quadrilateral_ratio", ratios[0] if ratios else None)
    rep.check("quadrilateral variants proportional", "quadrilateral-variants", _constant_ratio(ratios))
    pent = [S.LABELS[i] for i in S.cycle_from_labels("F14F35F24F36F25")]
    pform = FM.build_surface_form(pent, model)
    pts = FM.plane_panel(model, [pform], points, ctx.seed)
    ratios = []
    for x, v in pts:
        try:
            ratios.append(v[0] / FM.pentagon_reference(x))
        except ZeroDivisionError:
            continue
    rep.add("pentagon_ratio", ratios[0] if ratios else None)
    rep.check("pentagon form proportional to the printed form", "pentagon-form",
              _constant_ratio(ratios) and len(ratios) >= points // 2)
    q = FM.moduli_reps()["q_form"]
    mp = FM.moduli_panel(ctx.seed, points)
    same = sum(1 for pt in mp if q.at(pt) == FM.omega_xyzw(pt))
    rep.check("q-form at the identity equals omega_xyzw", "q-form", same == len(mp), same)
    cr = FM.pezzo_form_crosscheck(seed=ctx.seed, count=20)
    rep.add("pullback_points", cr.equal)
    rep.check("dlog pullback crosscheck", "dlog-pullback", cr.ok, cr.equal)
    residues(rep)


def residues(rep):
    om = PZ.omega_abcd()
    r1 = PZ.u_residue(om, 1)
    e1 = PZ.wedge_all([PZ.dlog_monomial([10], [8, 9, 14]), PZ.dlog_monomial([9, 11], [4, 12]),
                       PZ.dlog_monomial([4, 6, 14], [3])])
    r11 = PZ.u_residue(om, 11)
    e11 = PZ.wedge_all([PZ.dlog_monomial([10], [9]), PZ.dlog_monomial([6], [3]),
                        PZ.dlog_monomial([1], [2])])
    rep.check("residue at u1 = 0", "u-residues", r1 == e1)
    rep.check("residue at u11 = 0", "u-residues", r11 == e11)


# ---------------------------------------------------------------------------
# numerics


BETA_CASES = ((1.0, 1.0), (2.0, 3.0), (0.5, 1.5), (0.3, 0.7))
SIMPLEX_CASES = ((1.0, 1.0, 1.0), (1.0, 2.0, 3.0), (0.5, 0.7, 1.3))


def numerics(rep, ctx):
    worst = 0.0
    for s in BETA_CASES:
        worst = max(worst, ST.beta_numeric(*s).relative)
    rep.add("beta_worst_relative", worst)
    rep.check("Beta integrals to 1e-6", "beta-integral", worst < 1e-6, worst)
    worst = 0.0
    for s in SIMPLEX_CASES:
        worst = max(worst, ST.triangle_numeric(s).relative)
    rep.add("simplex_worst_relative", worst)
    rep.check("simplex integrals to 1e-5", "simplex-integral", worst < 1e-5, worst)
    bl = ST.beta_limit((1.0, 1.0))
    tl = ST.triangle_limit((1.0, 1.0, 1.0))
    rep.add("beta_limit", bl.extrapolated)
    rep.add("triangle_limit", tl.extrapolated)
    rep.check("segment field theory limit", "beta-limit", bl.deviation < 1e-3, bl.deviation)
    rep.check("triangle field theory limit", "triangle-limit", tl.deviation < 1e-3, tl.deviation)


def euler(rep, ctx):
    es = MD.euler_sums()
    rep.add("euler_sums", es)
    rep.check("Euler sums", "euler-sums", es == {"150": 150, "126": 126}, es)


# ---------------------------------------------------------------------------


class Criterion:
    def __init__(self, number, title, budget, steps):
        self.number = number
        self.title = title
        self.budget = budget
        self.steps = steps

    def run(self, ctx):
        rep = Report("criterion %d" % self.number, {"title": self.title}, ctx.seed)
        t0 = time.perf_counter()
        for step in self.steps:
            with rep.timed(step.__name__):
                step(rep, ctx)
        dt = time.perf_counter() - t0
        rep.timings["total"] = round(dt, 6)
        rep.check("within %g s" % self.budget, "timing", dt < self.budget, round(dt, 3))
        return rep


CRITERIA = [
    Criterion(1, "Weyl group order", 5, [weyl_order]),
    Criterion(2, "cycle orbits", 60, [cycle_orbits]),
    Criterion(3, "triangle configurations", 30, [configurations]),
    Criterion(4, "running example pipeline", 60, [running_pipeline]),
    Criterion(5, "exposure structure", 10, [exposure]),
    Criterion(6, "u-equations", 30, [u_equations]),
    Criterion(7, "pezzotope", 60, [pezzotope_checks]),
    Criterion(8, "chambers", 120, [chambers]),
    Criterion(9, "Eckardt census", 120, [eckardt]),
    Criterion(10, "ranks", 300, [ranks]),
    Criterion(11, "form cross-checks", 30, [form_crosschecks]),
    Criterion(12, "numerics", 10, [numerics]),
    Criterion(13, "Euler sums", 1, [euler]),
]


def run_all(ctx, numbers=None, progress=None):
    """Run the criteria in order; returns the combined report and the per-criterion ones."""
    total = Report("verify all", {"criteria": list(numbers or range(1, 14))}, ctx.seed)
    parts = []
    for c in CRITERIA:
        if numbers and c.number not in numbers:
            continue
        r = c.run(ctx)
        parts.append((c, r))
        total.results["criterion_%d" % c.number] = r.results
        total.timings["criterion_%d" % c.number] = r.timings["total"]
        for ch in r.checks:
            total.checks.append(Check("%d: %s" % (c.number, ch.name), ch.claim, ch.passed, ch.detail))
        if progress:
            progress(c, r)
    return total, parts
