"""The E6 pezzotope: Minkowski sum of Newton polytopes, its fan and the complex Delta.

Hulls are exact: integer points, integer normals, beneath-beyond insertion.
"""

from itertools import combinations
from math import gcd

from .exact import MPoly, Q, mat_rank
from . import tables
from .moduli import U_TO_ABCD, ABCD, g_polys


class HullError(ValueError):
    pass


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _det(minor)
    return total


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return tuple(int(x) // g for x in v) if g else tuple(int(x) for x in v)


def _normal_through(points):
    """Primitive normal of the hyperplane through d affinely independent points in Z^d."""
    base = points[0]
    rows = [list(_sub(p, base)) for p in points[1:]]
    d = len(base)
    n = []
    for j in range(d):
        minor = [r[:j] + r[j + 1:] for r in rows]
        n.append((-1) ** j * _det(minor))
    return _primitive(n)


def affine_rank(points):
    points = list(points)
    if not points:
        return -1
    base = points[0]
    return mat_rank([[Q(x) for x in _sub(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def _independent_subset(points, k):
    """Indices of k+1 affinely independent points, greedily."""
    chosen = [0]
    for i in range(1, len(points)):
        if affine_rank([points[j] for j in chosen + [i]]) == len(chosen):
            chosen.append(i)
            if len(chosen) == k + 1:
                break
    return chosen


def _injective_coords(points, k):
    """k coordinates on which the affine span projects injectively."""
    base = points[0]
    diffs = [_sub(p, base) for p in points[1:]]
    d = len(base)
    for cols in combinations(range(d), k):
        if mat_rank([[Q(v[c]) for c in cols] for v in diffs]) == k:
            return cols
    raise HullError("no injective projection")


class Polytope:
    """Vertices, facets (outer normal, offset) and the vertex-facet incidence.

    For lower-dimensional input the facets live in the coordinates ``coords``.
    """

    def __init__(self, vertices, facets, dim, coords):
        self.vertices = vertices
        self.facets = facets
        self.dim = dim
        self.coords = coords
        self.incidence = [frozenset(i for i, v in enumerate(vertices)
                                    if _dot(n, self._proj(v)) == b) for n, b in facets]
        self._faces = None

    def _proj(self, v):
        return tuple(v[c] for c in self.coords)

    def contains(self, p):
        return all(_dot(n, self._proj(p)) <= b for n, b in self.facets)

    def vertex_facets(self, i):
        return frozenset(j for j, inc in enumerate(self.incidence) if i in inc)

    def is_simple(self):
        return all(len(self.vertex_facets(i)) == self.dim for i in range(len(self.vertices)))

    def faces(self):
        """dim -> set of proper faces as vertex-index frozensets (incidence closure)."""
        if self._faces is None:
            found = set(self.incidence)
            frontier = set(self.incidence)
            while frontier:
                new = set()
                for f in frontier:
                    for g in self.incidence:
                        h = f & g
                        if h and h not in found:
                            new.add(h)
                found |= new
                frontier = new
            found |= {frozenset([i]) for i in range(len(self.vertices))}
            by_dim = {}
            for f in found:
                k = affine_rank([self.vertices[i] for i in f])
                by_dim.setdefault(k, set()).add(f)
            self._faces = by_dim
        return self._faces

    def f_vector(self):
        """Numbers of proper faces of dimension 0 .. dim-1."""
        fs = self.faces()
        return tuple(len(fs.get(k, ())) for k in range(self.dim))

    def face_counts(self):
        """The f-vector followed by the polytope itself."""
        return self.f_vector() + (1,)

    def facet_face_counts(self, j):
        """(vertices, edges, 2-faces) of facet j."""
        F = self.incidence[j]
        fs = self.faces()
        return tuple(sum(1 for f in fs.get(k, ()) if f <= F) for k in range(self.dim - 1))


def convex_hull(points):
    """Exact hull of integer points (any affine dimension >= 1)."""
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if not pts:
        raise HullError("empty point set")
    k = affine_rank(pts)
    if k == 0:
        return Polytope(pts, [], 0, ())
    coords = _injective_coords(pts, k)
    proj = [tuple(p[c] for c in coords) for p in pts]
    if k == 1:
        lo = min(range(len(proj)), key=lambda i: proj[i])
        hi = max(range(len(proj)), key=lambda i: proj[i])
        return Polytope([pts[lo], pts[hi]], [((-1,), -proj[lo][0]), ((1,), proj[hi][0])], 1, coords)
    facets = _beneath_beyond(proj, k)
    verts = [i for i in range(len(proj))
             if mat_rank([[Q(x) for x in n] for n, b in facets if _dot(n, proj[i]) == b]) == k]
    return Polytope([pts[i] for i in verts], facets, k, coords)


def _beneath_beyond(pts, d):
    start = _independent_subset(pts, d)
    if len(start) != d + 1:
        raise HullError("points do not span dimension %d" % d)
    simplex = [pts[i] for i in start]
    inner = tuple(sum(p[j] for p in simplex) for j in range(d))  # (d+1) * centroid
    facets = []
    for omit in range(d + 1):
        face = [p for i, p in enumerate(simplex) if i != omit]
        facets.append(_oriented(face, inner, d))
    inserted = list(simplex)
    order = [i for i in range(len(pts)) if i not in start]
    for i in order:
        p = pts[i]
        visible = [f for f in facets if _dot(f[0], p) > f[1]]
        if not visible:
            inserted.append(p)
            continue
        hidden = [f for f in facets if _dot(f[0], p) <= f[1]]
        on = {f: [q for q in inserted if _dot(f[0], q) == f[1]] for f in facets}
        new = set(hidden)
        for fv in visible:
            sv = set(on[fv])
            for fh in hidden:
                ridge = [q for q in on[fh] if q in sv]
                if len(ridge) >= d - 1 and affine_rank(ridge) == d - 2:
                    sub = [ridge[j] for j in _independent_subset(ridge, d - 2)]
                    new.add(_oriented(sub + [p], inner, d))
        facets = sorted(new)
        inserted.append(p)
    return facets


def _oriented(face, inner, d):
    n = _normal_through(face)
    b = _dot(n, face[0])
    # inner is (d+1) times an interior point
    if _dot(n, inner) > (d + 1) * b:
        n = tuple(-x for x in n)
        b = -b
    return (n, b)


def newton_points(f):
    return [tuple(e) for e in f.terms]


def minkowski_points(A, B):
    return {tuple(x + y for x, y in zip(a, b)) for a in A for b in B}


def newton_minkowski(polys):
    """Hull of the Minkowski sum of Newton polytopes, pruning to vertices after each step."""
    cur = convex_hull(newton_points(polys[0])).vertices
    for f in polys[1:]:
        nxt = convex_hull(newton_points(f)).vertices
        cur = convex_hull(minkowski_points(cur, nxt)).vertices
    return convex_hull(cur)


def pezzotope():
    return newton_minkowski(g_polys())


def facet_normals(p):
    """Primitive outer normals of a polytope, in facet order."""
    return [n for n, _ in p.facets]


def match_normals(p, columns=None):
    """facet index -> (column index 0..14, sign) with normal = sign * column.

    One global sign is used: the columns contain opposite pairs, so a
    per-column sign would not determine the matching.
    """
    columns = [tuple(c) for c in (columns or tables.facet_normals())]
    for sign in (1, -1):
        index = {tuple(sign * x for x in c): i for i, c in enumerate(columns)}
        out = {j: (index[tuple(n)], sign) for j, (n, _) in enumerate(p.facets) if tuple(n) in index}
        if len(out) == len(p.facets) == len(columns):
            return out
    return {}


# ---------------------------------------------------------------------------
# the clique complex


class CliqueComplexDelta:
    def __init__(self, vertices, edges, faces):
        self.vertices = vertices
        self.edges = edges
        self.faces = faces

    def counts(self):
        return tuple(len(self.faces[k]) for k in range(4))


def non_edges():
    out = set()
    for i, js in tables.trinomials().items():
        for j in js:
            out.add(frozenset((i, j)))
    return out


def non_edge_rule_symmetric():
    tri = tables.trinomials()
    return all((i in tri[j]) for i, js in tri.items() for j in js)


def delta_complex():
    verts = tuple(range(1, 16))
    bad = non_edges()
    edges = {frozenset(e) for e in combinations(verts, 2) if frozenset(e) not in bad}
    faces = {0: {frozenset([v]) for v in verts}, 1: set(edges)}
    for k in (2, 3):
        faces[k] = {frozenset(c) for c in combinations(verts, k + 1)
                    if all(frozenset(e) in edges for e in combinations(c, 2))}
    faces[4] = {frozenset(c) for c in combinations(verts, 5)
                if all(frozenset(e) in edges for e in combinations(c, 2))}
    return CliqueComplexDelta(verts, edges, faces)


class FanReport:
    def __init__(self, labels, vertex_sets, edge_sets, ridge_sets, delta):
        self.labels = labels
        self.vertex_sets = vertex_sets
        self.edge_sets = edge_sets
        self.ridge_sets = ridge_sets
        self.delta = delta

    @property
    def ok(self):
        d = self.delta.faces
        return (len(self.labels) == 15 and self.vertex_sets == d[3]
                and self.edge_sets == d[2] and self.ridge_sets == d[1])


class FanMismatch(AssertionError):
    pass


def fan_matches_complex(p, d=None):
    d = d or delta_complex()
    m = match_normals(p)
    if sorted(i for i, _ in m.values()) != list(range(15)):
        raise FanMismatch("facet normals do not biject onto the 15 columns")
    labels = {j: i + 1 for j, (i, _) in m.items()}
    fs = p.faces()

    def lab(face):
        return frozenset(labels[j] for j, inc in enumerate(p.incidence) if face <= inc)

    verts = {lab(f) for f in fs[0]}
    edges = {lab(f) for f in fs[1]}
    ridges = {lab(f) for f in fs[2]}
    return FanReport(labels, verts, edges, ridges, d)


def facet_classification(p):
    """facet index -> 'cube' or 'associahedron'."""
    out = {}
    for j in range(len(p.facets)):
        c = p.facet_face_counts(j)
        if c == (8, 12, 6):
            out[j] = "cube"
        elif c == (14, 21, 9):
            out[j] = "associahedron"
        else:
            raise HullError("facet %d has unrecognized face counts %s" % (j, c))
    return out


# ---------------------------------------------------------------------------
# dlog forms in u-coordinates


class DlogForm:
    """Sum of coefficient * dlog u_{i1} ^ ... ^ dlog u_{ik}, indices increasing."""

    def __init__(self, terms=None, degree=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}
        self.degree = degree if degree is not None else (len(next(iter(self.terms))) if self.terms else 0)

    @classmethod
    def one_form(cls, exps):
        """dlog of the monomial prod u_i^exps[i]."""
        return cls({(i,): Q(e) for i, e in exps.items() if e}, 1)

    def wedge(self, other):
        out = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                if set(a) & set(b):
                    continue
                idx, sign = _sort_sign(a + b)
                out[idx] = out.get(idx, 0) + sign * x * y
        return DlogForm(out, self.degree + other.degree)

    def __eq__(self, other):
        return self.terms == other.terms

    def __neg__(self):
        return DlogForm({k: -v for k, v in self.terms.items()}, self.degree)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return "DlogForm(%r)" % self.terms


def _sort_sign(idx):
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return tuple(idx), sign


def wedge_all(forms):
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


def vanishing_set(i):
    """j with u_i in u_j's trinomial monomial: u_j = 1 on the facet u_i = 0."""
    return {j for j, js in tables.trinomials().items() if i in js}


def u_residue(form, i):
    """Residue along u_i = 0 with eta ^ dlog u_i -> eta, then u_j = 1 for j in the vanishing set."""
    kill = vanishing_set(i)
    out = {}
    for idx, c in form.terms.items():
        if i not in idx:
            continue
        pos = idx.index(i)
        rest = idx[:pos] + idx[pos + 1:]
        if set(rest) & kill:
            continue
        sign = (-1) ** (len(idx) - 1 - pos)
        out[rest] = out.get(rest, 0) + sign * c
    return DlogForm(out, form.degree - 1)


def omega_abcd():
    """dlog a ^ dlog b ^ dlog c ^ dlog d expanded in u-coordinates."""
    return wedge_all([DlogForm.one_form(U_TO_ABCD[v]) for v in ABCD])


def dlog_monomial(num, den=()):
    exps = {}
    for i in num:
        exps[i] = exps.get(i, 0) + 1
    for i in den:
        exps[i] = exps.get(i, 0) - 1
    return DlogForm.one_form(exps)


# ---------------------------------------------------------------------------
# field theory limits


class IdentityFailure(AssertionError):
    pass


def _vars(n):
    return [MPoly.var(n, i) for i in range(n)]


def _reciprocal_numerator(pairs, s):
    """Numerator of sum 1/(s_i s_j) over the common denominator prod s."""
    num = 0 * s[0]
    for pair in pairs:
        term = s[0] ** 0
        for k in range(len(s)):
            if k not in pair:
                term = term * s[k]
        num = num + term
    return num


class AmplitudeReport:
    def __init__(self, checks, adjacent_pairs, terms):
        self.checks = checks
        self.adjacent_pairs = adjacent_pairs
        self.terms = terms

    @property
    def ok(self):
        return all(self.checks.values()) and self.adjacent_pairs == 90 and self.terms == 45


def amplitude_identities():
    checks = {}
    s = _vars(3)
    checks["triangle"] = _reciprocal_numerator([(0, 1), (1, 2), (0, 2)], s) == s[0] + s[1] + s[2]
    s = _vars(4)
    checks["square"] = (_reciprocal_numerator([(0, 2), (0, 3), (1, 2), (1, 3)], s)
                        == (s[0] + s[1]) * (s[2] + s[3]))
    s = _vars(5)
    segre = (s[2] * s[3] * s[4] + s[0] * s[3] * s[4] + s[0] * s[1] * s[4]
             + s[0] * s[1] * s[2] + s[1] * s[2] * s[3])
    checks["pentagon"] = _reciprocal_numerator([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], s) == segre
    quads = [frozenset(q) for group in tables.amplitude().values() for q in group]
    pairs = sum(1 for a, b in combinations(quads, 2) if len(a & b) == 3)
    return AmplitudeReport(checks, pairs, len(set(quads)))
