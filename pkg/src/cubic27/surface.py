"""From six points in the plane to a cubic surface, its 27 lines and its polygons.

The pipeline is exact and generic over the coefficient field (rationals or
Q(sqrt5)); the real-geometric steps (circular orders, polygons) need an
ordered field and are only run over the rationals.
"""

from collections import Counter
from itertools import combinations

from .exact import MPoly, Q, mat_nullspace, mat_rank, monomials, rref, sample_panel
from .exact.linalg import mat_det, primitive_integer
from . import schlaefli as S

PLANE_MONOMIALS = monomials(3, 2)
CUBIC_MONOMIALS = monomials(4, 3)
# y0 = F12F34F56, y1 = F13F25F46, y2 = F12F35F46, y3 = F13F24F56
ANTICANONICAL = (("F12", "F34", "F56"), ("F13", "F25", "F46"),
                 ("F12", "F35", "F46"), ("F13", "F24", "F56"))
TRIPLES = tuple(combinations(range(1, 7), 3))


class DegenerateConfig(ValueError):
    """Three points on a line or six on a conic."""

    def __init__(self, vanishing):
        self.vanishing = vanishing
        super().__init__("degenerate configuration: %s vanish" % ", ".join(vanishing))


class PipelineError(RuntimeError):
    """A step of the construction produced data of the wrong shape."""


def _zero(x):
    return x * 0


def _is_rational_vec(v):
    return all(hasattr(x, "denominator") or isinstance(x, int) for x in v)


def _normalize(vec):
    """Primitive integer vector over Q, first nonzero entry 1 otherwise."""
    if _is_rational_vec(vec):
        return tuple(Q(v) for v in primitive_integer(vec))
    lead = next(x for x in vec if x != 0)
    return tuple(x / lead for x in vec)


def _canonical_rows(rows):
    R, _ = rref(rows)
    return tuple(_normalize(r) for r in R)


def _det3(cols):
    (a, b, c), (d, e, f), (g, h, i) = cols
    return a * (e * i - f * h) - d * (b * i - c * h) + g * (b * f - c * e)


def det4(a, b, c, d):
    return mat_det([list(a), list(b), list(c), list(d)])


def minors_of(M):
    """The 20 maximal minors p_ijk (1-based keys) of a 3x6 matrix."""
    cols = list(zip(*M))
    return {t: _det3([cols[t[0] - 1], cols[t[1] - 1], cols[t[2] - 1]]) for t in TRIPLES}


def coconic_q(p):
    """Vanishes iff the six columns lie on a conic."""
    return (p[1, 3, 4] * p[1, 5, 6] * p[2, 3, 5] * p[2, 4, 6]
            - p[1, 3, 5] * p[1, 4, 6] * p[2, 3, 4] * p[2, 5, 6])


class SixPoints:
    """Validated 3x6 matrix whose columns are the points E1..E6."""

    def __init__(self, matrix, minors, q):
        self.matrix = matrix
        self.minors = minors
        self.q = q

    @property
    def points(self):
        return [tuple(col) for col in zip(*self.matrix)]

    def relabel(self, sigma):
        """Columns permuted so that new point sigma[i] is old point i (0-based)."""
        cols = self.points
        new = [None] * 6
        for i, j in enumerate(sigma):
            new[j] = cols[i]
        return validate_config([list(r) for r in zip(*new)])


def validate_config(m):
    rows = [[Q(x) if isinstance(x, int) else x for x in r] for r in m]
    if len(rows) != 3 or any(len(r) != 6 for r in rows):
        raise ValueError("expected a 3x6 matrix")
    p = minors_of(rows)
    bad = ["p%d%d%d" % t for t in TRIPLES if p[t] == 0]
    q = coconic_q(p)
    if q == 0:
        bad.append("q")
    if bad:
        raise DegenerateConfig(bad)
    return SixPoints(rows, p, q)


# ---------------------------------------------------------------------------
# plane curves


class PlaneCurve:
    """E_i as two linear forms, F_ij as a linear form, G_k as a conic."""

    def __init__(self, label, kind, forms):
        self.label = label
        self.kind = kind
        self.forms = forms

    @property
    def form(self):
        return self.forms[0]

    def coefficients(self):
        if self.kind == "conic":
            return [tuple(f.terms.get(e, 0) for e in PLANE_MONOMIALS) for f in self.forms]
        return [tuple(f.terms.get(e, 0) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))) for f in self.forms]


def _conic_row(pt):
    return [pt[0] ** e[0] * pt[1] ** e[1] * pt[2] ** e[2] for e in PLANE_MONOMIALS]


def plane_arrangement(cfg):
    pts = cfg.points
    out = {}
    for i in range(6):
        gens = [_normalize(v) for v in mat_nullspace([list(pts[i])])]
        out["E%d" % (i + 1)] = PlaneCurve("E%d" % (i + 1), "point", [MPoly.linear(g) for g in gens])
    for i, j in combinations(range(6), 2):
        ns = mat_nullspace([list(pts[i]), list(pts[j])])
        if len(ns) != 1:
            raise PipelineError("F%d%d: points coincide" % (i + 1, j + 1))
        lab = "F%d%d" % (i + 1, j + 1)
        out[lab] = PlaneCurve(lab, "line", [MPoly.linear(_normalize(ns[0]))])
    for k in range(6):
        ns = mat_nullspace([_conic_row(pts[m]) for m in range(6) if m != k])
        if len(ns) != 1:
            raise PipelineError("G%d: conic not unique" % (k + 1))
        c = _normalize(ns[0])
        lab = "G%d" % (k + 1)
        out[lab] = PlaneCurve(lab, "conic", [MPoly(3, dict(zip(PLANE_MONOMIALS, c)))])
    return out


def anticanonical_map(cfg, curves=None):
    curves = curves or plane_arrangement(cfg)
    ys = []
    for labs in ANTICANONICAL:
        f = curves[labs[0]].form
        for lab in labs[1:]:
            f = f * curves[lab].form
        ys.append(f)
    return ys


def map_point(ymap, pt):
    return tuple(y.eval(pt) for y in ymap)


def _cubic_row(y):
    return [y[0] ** e[0] * y[1] ** e[1] * y[2] ** e[2] * y[3] ** e[3] for e in CUBIC_MONOMIALS]


def _nonzero_image(ymap):
    return lambda pt: 0 if all(v == 0 for v in map_point(ymap, pt)) else 1


def surface_equation(ymap, seed=2024, samples=25, verify=10, start=0):
    """The cubic f(y) vanishing on the image of the anticanonical map."""
    pts = sample_panel(seed, 3, samples + verify, avoid=[_nonzero_image(ymap)],
                       bound=30, start=start, integer=True)
    imgs = [map_point(ymap, p) for p in pts]
    ns = mat_nullspace([_cubic_row(y) for y in imgs[:samples]])
    if len(ns) != 1:
        raise PipelineError("cubic nullspace has dimension %d" % len(ns))
    coeffs = _normalize(ns[0])
    f = MPoly(4, dict(zip(CUBIC_MONOMIALS, coeffs)))
    for y in imgs[samples:]:
        if f.eval(y) != 0:
            raise PipelineError("cubic does not vanish on a verification image")
    return f


def proportional(u, v):
    """Two vectors are nonzero multiples of each other."""
    u, v = list(u), list(v)
    if len(u) != len(v):
        return False
    i = next((k for k, x in enumerate(u) if x != 0), None)
    if i is None or v[i] == 0:
        return False
    r = v[i] / u[i]
    return all(b == r * a for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# lines in P^3


class LabeledLine:
    """A line on the surface: two spanning points and two defining linear forms."""

    def __init__(self, label, points):
        self.label = label
        self.points = _canonical_rows(points)
        if len(self.points) != 2:
            raise PipelineError("%s: image is not a line" % label)
        self.rowspace = tuple(_normalize(v) for v in mat_nullspace([list(r) for r in self.points]))
        a, b = self.points
        self.pluecker = tuple(a[i] * b[j] - a[j] * b[i] for i, j in combinations(range(4), 2))

    def pluecker_relation(self):
        p01, p02, p03, p12, p13, p23 = self.pluecker
        return p01 * p23 - p02 * p13 + p03 * p12

    def contains(self, pt):
        return all(sum((c * x for c, x in zip(row, pt)), _zero(pt[0])) == 0 for row in self.rowspace)

    def lies_on(self, f):
        a, b = self.points
        for s, t in ((1, 0), (0, 1), (1, 1), (1, -2)):
            if f.eval([s * x + t * y for x, y in zip(a, b)]) != 0:
                return False
        return True

    def same_as(self, forms):
        """Compare with a line given by two linear forms, as row spaces."""
        return _canonical_rows([list(f) for f in forms]) == _canonical_rows([list(r) for r in self.rowspace])


def _line_points(pts_plane, ymap, label):
    imgs = [map_point(ymap, p) for p in pts_plane]
    return LabeledLine(label, [list(y) for y in imgs])


def _jacobian_at(ymap, pt):
    return [[y.diff(i).eval(pt) for i in range(3)] for y in ymap]


def lines_in_p3(cfg, curves=None, ymap=None):
    curves = curves or plane_arrangement(cfg)
    ymap = ymap or anticanonical_map(cfg, curves)
    pts = cfg.points
    base = set(pts)
    out = {}
    for i in range(6):
        lab = "E%d" % (i + 1)
        J = _jacobian_at(ymap, pts[i])
        if mat_rank(J) != 2:
            raise PipelineError("%s: vanishing order is not one" % lab)
        cols = [list(c) for c in zip(*J)]
        out[lab] = LabeledLine(lab, cols)
    for i, j in combinations(range(6), 2):
        lab = "F%d%d" % (i + 1, j + 1)
        cand = []
        t = 1
        while len(cand) < 2:
            p = tuple(a + t * b for a, b in zip(pts[i], pts[j]))
            t += 1
            if any(proportional(p, e) for e in base):
                continue
            if all(v == 0 for v in map_point(ymap, p)):
                continue
            cand.append(p)
        out[lab] = _line_points(cand, ymap, lab)
    for k in range(6):
        lab = "G%d" % (k + 1)
        G = curves[lab].form
        j = 0 if k != 0 else 1
        e = pts[j]
        grad = [G.diff(r).eval(e) for r in range(3)]
        cand = []
        t = 1
        while len(cand) < 2:
            v = (Q(1), Q(t), Q(t * t + 1))
            t += 1
            gv = G.eval(v)
            lin = sum((g * x for g, x in zip(grad, v)), _zero(grad[0]))
            if gv == 0 or lin == 0:
                continue
            p = tuple(gv * a - lin * b for a, b in zip(e, v))
            if any(proportional(p, b) for b in base):
                continue
            if all(val == 0 for val in map_point(ymap, p)):
                continue
            if cand and proportional(p, cand[0]):
                continue
            cand.append(p)
        out[lab] = _line_points(cand, ymap, lab)
    return out


# ---------------------------------------------------------------------------
# incidence and circular orders


def meet(l1, l2):
    """Intersection point of two lines, or None when they are skew."""
    M = [list(r) for r in l1.rowspace] + [list(r) for r in l2.rowspace]
    r = mat_rank(M)
    if r == 4:
        return None
    if r != 3:
        raise PipelineError("%s and %s coincide" % (l1.label, l2.label))
    return _normalize(mat_nullspace(M)[0])


def incidence_structure(lines):
    """frozenset({label, label}) -> intersection point, for all meeting pairs."""
    out = {}
    for a, b in combinations(S.LABELS, 2):
        pt = meet(lines[a], lines[b])
        if pt is not None:
            out[frozenset((a, b))] = pt
    return out


def _coords_on(line, pt):
    """(alpha, beta) with pt = alpha*A + beta*B for the echelon basis A, B of the line."""
    A, B = line.points
    ca = next(c for c in range(4) if A[c] != 0)
    cb = next(c for c in range(4) if B[c] != 0)
    return pt[ca] / A[ca], pt[cb] / B[cb]


def _angle_key(ab):
    a, b = ab
    if b == 0:
        return (0, 0)
    return (1, -a / b)


def _half_turn_normal(ab):
    a, b = ab
    if b < 0 or (b == 0 and a < 0):
        return -a, -b
    return a, b


class LineOrder:
    """The intersection points on one line, sorted along the real circle."""

    def __init__(self, label, labels, reps, tangents, degenerate):
        self.label = label
        self.labels = labels
        self.reps = reps
        self.tangents = tangents
        self.degenerate = degenerate

    def canonical(self):
        return canonical_order(self.labels)


def canonical_order(labels):
    """Rotation/reflection-minimal form of a cyclic label sequence."""
    return tuple(S.LABELS[i] for i in S.canonical_cycle([S.INDEX[l] for l in labels]))


def circular_orders(lines, inter):
    out = {}
    for L in S.LABELS:
        line = lines[L]
        A, B = line.points
        entries = []
        for pair, pt in inter.items():
            if L not in pair:
                continue
            (M,) = pair - {L}
            a, b = _half_turn_normal(_coords_on(line, pt))
            rep = tuple(a * x + b * y for x, y in zip(A, B))
            tan = tuple(-b * x + a * y for x, y in zip(A, B))
            entries.append((_angle_key((a, b)), M, rep, tan))
        entries.sort(key=lambda e: (e[0], S.INDEX[e[1]]))
        keys = [e[0] for e in entries]
        degenerate = len(set(keys)) != len(keys)
        out[L] = LineOrder(L, tuple(e[1] for e in entries),
                           {e[1]: e[2] for e in entries}, {e[1]: e[3] for e in entries}, degenerate)
    return out


# ---------------------------------------------------------------------------
# region graph and polygons


class RegionGraph:
    def __init__(self, vertices, edges, polygons, turn_cycles):
        self.vertices = vertices
        self.edges = edges
        self.polygons = polygons
        self.turn_cycles = turn_cycles

    def census(self):
        """Polygon counts by number of sides."""
        c = Counter(len(p) for p in self.polygons)
        return dict(sorted(c.items()))

    def by_length(self, k):
        return [p for p in self.polygons if len(p) == k]

    def turn_census(self):
        c = Counter(len(p) for p in self.turn_cycles)
        return dict(sorted(c.items()))

    def f_vector(self):
        return (len(self.vertices), len(self.edges), len(self.polygons))


def _sign(x):
    return (x > 0) - (x < 0)


def _scalar(u, v):
    """c with u = c*v for proportional nonzero vectors."""
    k = next(i for i, x in enumerate(v) if x != 0)
    return u[k] / v[k]


def trace_polygons(orders, lines, f):
    """Faces of the real surface cut out by the 27 lines.

    A side of a segment of a line span(A, B) at a point p is the sign of
    det(A, B, grad f(p), v) for a tangent vector v; the determinant varies
    continuously along the segment, so sides can be followed from one end to
    the other.  Faces are the orbits of the resulting turning rule.
    """
    grad = [f.diff(i) for i in range(4)]
    gcache = {}

    def g_at(L, M):
        key = (L, M)
        if key not in gcache:
            r = orders[L].reps[M]
            gcache[key] = [g.eval(r) for g in grad]
        return gcache[key]

    def side(L, M, v):
        A, B = lines[L].points
        return _sign(det4(A, B, g_at(L, M), v))

    pos = {L: {M: i for i, M in enumerate(orders[L].labels)} for L in orders}
    n = {L: len(orders[L].labels) for L in orders}

    def step(state):
        L, i, s, d = state
        last = n[L] - 1
        if d == 1:
            N = orders[L].labels[(i + 1) % n[L]]
            sy = -1 if i == last else 1
        else:
            N = orders[L].labels[i]
            sy = 1
        back = tuple(-d * sy * x for x in orders[L].tangents[N])
        cc = _scalar(orders[L].reps[N], orders[N].reps[L])
        nxt = tuple(sy * cc * x for x in orders[N].tangents[L])
        e = 1 if side(L, N, nxt) == s else -1
        j = pos[N][L]
        if e == 1:
            ni, nd, s2 = j, 1, 1
        else:
            ni, nd = (j - 1) % n[N], -1
            s2 = -1 if ni == n[N] - 1 else 1
        ns = side(N, L, back) * _sign(s2 / (sy * cc))
        return (N, ni, ns, nd)

    seen = set()
    faces = []
    for L in S.LABELS:
        for i in range(n[L]):
            for s in (1, -1):
                if (L, i, s) in seen:
                    continue
                start = (L, i, s, 1)
                state = start
                walk = []
                while True:
                    walk.append(state)
                    state = step(state)
                    if state == start:
                        break
                    if len(walk) > 600:
                        raise PipelineError("face tracing did not close")
                darts = {(a, b, c) for a, b, c, _ in walk}
                seen |= darts
                faces.append(tuple(S.INDEX[w[0]] for w in walk))
    polys = sorted({S.canonical_cycle(fc) for fc in faces}, key=lambda c: (len(c), c))
    return polys


def turn_cycles(orders, max_len=27):
    """Closed walks in the region graph that switch lines at every vertex.

    Each line is used at most once.  Returned as canonical label-index cycles.
    """
    idx = {S.INDEX[L]: [S.INDEX[m] for m in orders[L].labels] for L in orders}
    nb = {}
    for L, seq in idx.items():
        k = len(seq)
        for i, x in enumerate(seq):
            nb[(L, x)] = (seq[i - 1], seq[(i + 1) % k])
    found = set()
    for a in idx:
        for b in idx[a]:
            if b < a:
                continue
            stack = [(a, b, (a, b))]
            while stack:
                p, c, path = stack.pop()
                for nx in nb[(c, p)]:
                    if nx == a:
                        if len(path) >= 3 and path[1] in nb[(a, c)]:
                            found.add(S.canonical_cycle(path))
                        continue
                    if nx < a or nx in path or len(path) >= max_len:
                        continue
                    stack.append((c, nx, path + (nx,)))
    return sorted(found, key=lambda c: (len(c), c))


def region_graph(orders, lines=None, f=None):
    verts = set()
    edges = set()
    for L, o in orders.items():
        k = len(o.labels)
        for i, M in enumerate(o.labels):
            u = frozenset((L, M))
            w = frozenset((L, o.labels[(i + 1) % k]))
            verts.add(u)
            edges.add(frozenset((u, w)))
    polys = trace_polygons(orders, lines, f) if f is not None else []
    return RegionGraph(verts, edges, polys, turn_cycles(orders))


# ---------------------------------------------------------------------------
# tritangent planes


class TritangentPlane:
    def __init__(self, triple, form, eckardt):
        self.triple = triple
        self.form = form
        self.eckardt = eckardt


def plane_through(lines_or_points):
    rows = []
    for x in lines_or_points:
        if isinstance(x, LabeledLine):
            rows.extend(list(r) for r in x.points)
        else:
            rows.append(list(x))
    ns = mat_nullspace(rows)
    if len(ns) != 1:
        raise PipelineError("objects do not span a unique plane")
    return _normalize(ns[0])


def tritangent_planes(lines, triples=None):
    triples = triples or [tuple(S.LABELS[i] for i in t) for t in S.tritangent_triples()]
    out = []
    for t in triples:
        ls = [lines[x] for x in t]
        rows = [list(r) for l in ls for r in l.points]
        if mat_rank(rows) != 3:
            raise PipelineError("lines %s are not coplanar" % "".join(t))
        form = _normalize(mat_nullspace(rows)[0])
        pts = [meet(ls[0], ls[1]), meet(ls[0], ls[2]), meet(ls[1], ls[2])]
        eck = proportional(pts[0], pts[1]) and proportional(pts[0], pts[2])
        out.append(TritangentPlane(t, form, eck))
    return out


# ---------------------------------------------------------------------------
# the whole pipeline


class SurfaceModel:
    """All data computed from one six-point configuration."""

    def __init__(self, config, seed=2024, geometry=True):
        self.config = config
        self.curves = plane_arrangement(config)
        self.map_cubics = anticanonical_map(config, self.curves)
        self.f = surface_equation(self.map_cubics, seed=seed)
        self.lines = lines_in_p3(config, self.curves, self.map_cubics)
        self.intersections = incidence_structure(self.lines)
        self._orders = None
        self._graph = None
        self._planes = None
        self.geometry = geometry

    @property
    def orders(self):
        if self._orders is None:
            self._orders = circular_orders(self.lines, self.intersections)
        return self._orders

    @property
    def region_graph(self):
        if self._graph is None:
            self._graph = region_graph(self.orders, self.lines, self.f)
        return self._graph

    @property
    def planes(self):
        if self._planes is None:
            self._planes = {frozenset(p.triple): p for p in tritangent_planes(self.lines)}
        return self._planes

    def plane(self, *labels):
        return self.planes[frozenset(labels)]

    def pair_set(self):
        return set(self.intersections)

    def exposed(self, k):
        return [tuple(S.LABELS[i] for i in c) for c in self.region_graph.by_length(k)]


def build(matrix, seed=2024):
    return SurfaceModel(validate_config(matrix), seed=seed)
