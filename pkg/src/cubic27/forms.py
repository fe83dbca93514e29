"""Canonical forms of polygons on the cubic surface and of regions of the moduli space.

Forms are compared and ranked through their values on seeded sample panels.
"""

from itertools import permutations

from .exact import Jet, MPoly, PoleError, Q, certified_rank, mat_det, sample_panel
from . import schlaefli as S
from . import tables
from .moduli import (abcd_to_xyzw, generic_abcd, gauge_fix_minors, minors_permuted,
                     xyzw_avoid, xyzw_matrix, xyzw_q)
from .surface import TRIPLES, coconic_q, meet, minors_of, plane_through, proportional


class RecipeError(AssertionError):
    """A canonical-form recipe does not apply to the given cycle."""


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# surface forms


class SurfaceForm:
    """Res_X g/(f h_1 ... h_k) with linear g (or 1) and tritangent planes h_i."""

    def __init__(self, cycle, numerator, denominators, note=""):
        self.cycle = tuple(cycle)
        self.numerator = numerator
        self.denominators = tuple(denominators)
        self.note = note

    def ratio(self, A):
        """g / prod h at an affine point (1, y1, y2, y3)."""
        num = _dot(self.numerator, A) if self.numerator is not None else 1
        den = 1
        for h in self.denominators:
            den = den * _dot(h, A)
        if den == 0:
            raise PoleError("denominator plane vanishes")
        return num / den


def _third(a, b):
    return S.LABELS[S.triangle_of(S.INDEX[a], S.INDEX[b])]


def _is_triangle(a, b, c):
    i, j, k = S.INDEX[a], S.INDEX[b], S.INDEX[c]
    return S.ADJ[i][j] and S.ADJ[i][k] and S.ADJ[j][k]


def quadrilateral_pairings(cycle, model):
    """Forms from each opposite-edge pairing whose numerator triple is a triangle."""
    c = [S.LABELS[i] if isinstance(i, int) else i for i in cycle]
    L = S.LABELS[S.adjoint_vertex([S.INDEX[x] for x in c])]
    out = []
    for k in (0, 1):
        e1 = (c[k], c[k + 1])
        e2 = (c[k + 2], c[(k + 3) % 4])
        a, b = _third(*e1), _third(*e2)
        if not _is_triangle(L, a, b):
            continue
        num = model.plane(L, a, b).form
        dens = [model.plane(e1[0], e1[1], a).form, model.plane(e2[0], e2[1], b).form]
        out.append(SurfaceForm(c, num, dens, "pairing %d" % k))
    return out


def build_surface_form(cycle, model):
    c = [S.LABELS[i] if isinstance(i, int) else i for i in cycle]
    if len(c) == 3:
        return SurfaceForm(c, None, [model.plane(*c).form], "triangle")
    if len(c) == 4:
        forms = quadrilateral_pairings(c, model)
        if not forms:
            raise RecipeError("no pairing of %s gives a tritangent numerator" % "".join(c))
        return forms[0]
    if len(c) == 5:
        ps = S.pentagon_structure([S.INDEX[x] for x in c])
        n = ps.as_names()
        pt = meet(model.lines[n["e1"][0]], model.lines[n["e1"][1]])
        g = plane_through([model.lines[n["L"]], pt])
        return SurfaceForm(c, g, [model.plane(*n["H1"]).form, model.plane(*n["H2"]).form], "pentagon")
    raise RecipeError("no recipe for %d-cycles" % len(c))


class ChartPoint:
    """Shared data of one plane point (1, x1, x2): affine image, f_y3 and the Jacobian."""

    def __init__(self, model, x):
        one = Jet.constant(Q(1), 2)
        s1, s2 = Jet.seed(list(x))
        y = [f.eval((one, s1, s2)) for f in model.map_cubics]
        if y[0].val == 0:
            raise PoleError("image lies on y0 = 0")
        Y = [v / y[0] for v in y[1:]]
        self.jac = Y[0].d[0] * Y[1].d[1] - Y[0].d[1] * Y[1].d[0]
        self.A = (Q(1), Y[0].val, Y[1].val, Y[2].val)
        self.fy3 = model.f.diff(3).eval(self.A)
        if self.fy3 == 0:
            raise PoleError("df/dy3 vanishes")

    def value(self, form):
        return form.ratio(self.A) * self.jac / self.fy3


def chart_value(form, model, x):
    return ChartPoint(model, x).value(form)


def surface_library(model):
    return [build_surface_form(c, model) for c in model.region_graph.polygons]


def plane_panel(model, forms, count, seed, start=0):
    """Plane points where every form of the library is finite."""
    pts = []
    idx = start
    while len(pts) < count:
        x = sample_panel(seed, 2, 1, bound=40, start=idx)[0]
        idx += 1
        try:
            cp = ChartPoint(model, x)
            vals = [cp.value(f) for f in forms]
        except ZeroDivisionError:
            continue
        pts.append((x, vals))
    return pts


class RankResult:
    def __init__(self, rank, nullity, panel, forms):
        self.rank = rank
        self.nullity = nullity
        self.panel = panel
        self.forms = forms


class PanelTooSmall(RuntimeError):
    pass


def _rank_with_retry(columns_of, count, limit):
    """Rank of a value matrix, doubling the panel once if the rank hits its size."""
    for attempt in range(2):
        M = columns_of(count)
        r = certified_rank(M).rank
        if r < min(len(M), len(M[0])) or r < limit:
            return r, count
        count *= 2
    raise PanelTooSmall("rank saturates the panel after doubling")


def surface_rank(model, panel=None, seed=2024, start=0):
    forms = surface_library(model)
    panel = panel or 150

    def matrix(count):
        pts = plane_panel(model, forms, count, seed, start)
        return [list(v) for _, v in pts]

    r, used = _rank_with_retry(matrix, panel, len(forms))
    return RankResult(r, len(forms) - r, used, len(forms))


# ---------------------------------------------------------------------------
# moduli forms


_PT_MINORS = None


def normal_form_minors():
    """The 20 minors of the (x,y,z,w) normal form as polynomials."""
    global _PT_MINORS
    if _PT_MINORS is None:
        vs = [MPoly.var(4, i) for i in range(4)]
        _PT_MINORS = minors_of(xyzw_matrix(*vs))
    return _PT_MINORS


class ModuliFormRep:
    """Coefficient function prod(num)/prod(den) over minors p_ijk and q."""

    def __init__(self, name, num, den):
        self.name = name
        self.num = num
        self.den = den

    def __call__(self, p, q):
        v = Q(1)
        for t in self.num:
            v = v * (q if t == "q" else p[tuple(int(c) for c in t)])
        d = Q(1)
        for t in self.den:
            d = d * (q if t == "q" else p[tuple(int(c) for c in t)])
        if d == 0:
            raise PoleError("%s has a pole" % self.name)
        return v / d

    def at(self, pt):
        p = {t: f.eval(pt) for t, f in normal_form_minors().items()}
        return self(p, coconic_q(p))


def moduli_reps():
    return {k: ModuliFormRep(k, *v) for k, v in tables.moduli_forms().items()}


def xyzw_point_minors(pt):
    jets = Jet.seed(list(pt))
    return {t: f.eval(jets) for t, f in normal_form_minors().items()}


def pullback_map(sigma, jet_minors):
    """f_sigma at a point as four jets: gauge fix of the column-permuted matrix."""
    return gauge_fix_minors(minors_permuted(jet_minors, sigma))


def _evaluate_reps(reps, phi):
    vals = tuple(j.val for j in phi)
    jac = mat_det([list(j.d) for j in phi])
    p = {t: f.eval(vals) for t, f in normal_form_minors().items()}
    q = coconic_q(p)
    return [rep(p, q) * jac for rep in reps]


def moduli_form_value(rep, sigma, pt):
    phi = pullback_map(sigma, xyzw_point_minors(pt))
    return _evaluate_reps([rep], phi)[0]


def pullback_value(coef, sigma, pt):
    """(f_sigma^* coef eta)(pt) for a coefficient function coef(x, y, z, w); also returns f_sigma(pt)."""
    phi = pullback_map(sigma, xyzw_point_minors(pt))
    vals = tuple(j.val for j in phi)
    return coef(vals) * mat_det([list(j.d) for j in phi]), vals


def compose_perm(s, t):
    """Permutation with (s o t)[i] = s[t[i]]."""
    return tuple(s[t[i]] for i in range(6))


def moduli_panel(seed, count, start=0):
    return sample_panel(seed, 4, count, avoid=xyzw_avoid(), bound=25, start=start)


class ModuliValues:
    """Values of every rep pulled back along every permutation on a panel."""

    def __init__(self, reps, perms, points):
        self.reps = reps
        self.perms = perms
        self.points = points
        self.values = {}
        for pt in points:
            jm = xyzw_point_minors(pt)
            for s in perms:
                vals = _evaluate_reps(reps, pullback_map(s, jm))
                for r, v in zip(reps, vals):
                    self.values.setdefault((r.name, s), []).append(v)

    def column(self, name, s):
        return self.values[(name, s)]


def sign_normalize(vals):
    for v in vals:
        if v != 0:
            return tuple(vals) if v > 0 else tuple(-x for x in vals)
    return tuple(vals)


class FingerprintCollision(AssertionError):
    """Equal fingerprints that differ on the verification panel."""


class OrbitCensus:
    def __init__(self, sizes, total, rank, panel, collisions_checked, members=()):
        self.sizes = sizes
        self.total = total
        self.rank = rank
        self.panel = panel
        self.collisions_checked = collisions_checked
        # (rep name, permutation, sign-normalized fingerprint) per kept form
        self.members = members


DEDUPE_POINTS = 60
VERIFY_POINTS = 20


def moduli_orbit_census(library="Y", seed=2024, rank_points=225, values=None):
    """Dedupe the S6 orbits of one library up to sign and rank the result.

    ``library`` is "X" (Parke-Taylor with the three other forms) or "Y" (the
    q-form replacing Parke-Taylor).
    """
    reps_all = moduli_reps()
    names = (["parke_taylor"] if library == "X" else ["q_form"]) + ["rep2", "rep3", "rep4"]
    perms = list(permutations(range(6)))
    npts = max(rank_points, DEDUPE_POINTS + VERIFY_POINTS)
    if values is None:
        values = ModuliValues([reps_all[n] for n in names], perms, moduli_panel(seed, npts))
    sizes = []
    kept = []
    members = []
    checked = 0
    for n in names:
        seen = {}
        for s in perms:
            col = values.column(n, s)
            key = sign_normalize(col[:DEDUPE_POINTS])
            if key in seen:
                checked += 1
                other = seen[key]
                a = sign_normalize(col[:DEDUPE_POINTS + VERIFY_POINTS])
                b = sign_normalize(other[:DEDUPE_POINTS + VERIFY_POINTS])
                if a != b:
                    raise FingerprintCollision("%s %s collides on the panel only" % (n, s))
                continue
            seen[key] = col
            members.append((n, s, key))
        sizes.append(len(seen))
        kept.extend(seen.values())
    rows = [[col[i] for col in kept] for i in range(npts)]
    r = certified_rank(rows).rank
    if r >= min(len(rows), len(kept)):
        raise PanelTooSmall("rank saturates the evaluation panel")
    return OrbitCensus(tuple(sizes), len(kept), r, npts, checked, members)


def shared_values(seed=2024, rank_points=225):
    """One evaluation pass that serves both libraries."""
    reps = list(moduli_reps().values())
    perms = list(permutations(range(6)))
    npts = max(rank_points, DEDUPE_POINTS + VERIFY_POINTS)
    return ModuliValues(reps, perms, moduli_panel(seed, npts))


def omega_xyzw(pt):
    x, y, z, w = pt
    return z / ((x - z) * (z - w) * (x * y * z - x * y * w - x * z * w + x * w + y * z * w - y * z))


class CrosscheckReport:
    def __init__(self, points, equal, jac_nonzero):
        self.points = points
        self.equal = equal
        self.jac_nonzero = jac_nonzero

    @property
    def ok(self):
        return self.equal == self.points and self.jac_nonzero == self.points


def pezzo_form_crosscheck(seed=2024, count=20):
    """dlog a ^ dlog b ^ dlog c ^ dlog d pulled back from the (x,y,z,w) coefficient."""
    eq = nz = 0
    for pt in generic_abcd(seed, count):
        jets = Jet.seed(list(pt))
        img = abcd_to_xyzw(*jets)
        jac = mat_det([list(j.d) for j in img])
        vals = tuple(j.val for j in img)
        a, b, c, d = pt
        if jac != 0:
            nz += 1
        if omega_xyzw(vals) * jac == 1 / (a * b * c * d):
            eq += 1
    return CrosscheckReport(count, eq, nz)


def pentagon_reference(x, lines=None):
    """(65 F23 F45 - 104 F24 F35)/(F14 F35 F24 F36 F25) with the printed plane lines."""
    lines = lines or tables.running_lines()

    def F(lab):
        return _dot(lines[lab][0][0], (1,) + tuple(x))

    return ((65 * F("F23") * F("F45") - 104 * F("F24") * F("F35"))
            / (F("F14") * F("F35") * F("F24") * F("F36") * F("F25")))
