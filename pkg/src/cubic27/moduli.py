"""Coordinates on the moduli space of six points in the plane.

Charts: the positive (a,b,c,d) matrix, the normal form in (x,y,z,w) and the
d-matrix with rows (1, d_i, d_i^3).  The fifteen u-coordinates are cross
ratios of minors; the Weyl group acts on chambers of the E6 root arrangement.
"""

from collections import deque
from functools import lru_cache
from itertools import combinations

import numpy as np

from .exact import MPoly, Q, QuadExt5, mat_rank, parse_poly, sample_panel
from .exact.sampling import log_uniform_positive
from . import tables
from .surface import TRIPLES, coconic_q, minors_of

ABCD = ("a", "b", "c", "d")


def _key(s):
    return tuple(int(ch) for ch in s)


# ---------------------------------------------------------------------------
# the (a,b,c,d) chart


def abcd_matrix(a, b, c, d):
    """The 3x6 matrix whose minors are Laurent monomials in a, b, c, d and g1..g11."""
    one = a * 0 + 1
    g8 = b * c * d + b * c + b * d + c * d + c + d + 1
    g10 = a * b * c * d + a * b * c + a * b * d + b * c * d + b * c + b * d + c * d + c + d + 1
    return [
        [one, 0 * one, 0 * one, one, (b + 1) / b, (b * c + c + 1) / (b * c)],
        [0 * one, one, 0 * one, -one, -(a + 1) * (b + 1) / (a * b + b + 1), -(a + 1) * g8 / g10],
        [0 * one, 0 * one, one, one, one, one],
    ]


def g_factors(a, b, c, d):
    """g1..g11 at a point."""
    g8 = b * c * d + b * c + b * d + c * d + c + d + 1
    g9 = g8 + a * b * d
    g10 = g9 + a * b * c * d
    return (a + 1, b + 1, a * b + b + 1, c + 1, b * c + c + 1, d + 1,
            a * b * d + b * d + d + 1, g8, g9, g10, g10 + a * b * c)


def g_polys():
    vs = [MPoly.var(4, i) for i in range(4)]
    return list(g_factors(*vs))


def minors_and_q(M):
    p = minors_of(M)
    return p, coconic_q(p)


def _factor_value(tok, p, q):
    return q if tok == "q" else p[_key(tok)]


def u_from_minors(p, q):
    """The 15 cross ratios u_1..u_15 from minors and q."""
    out = []
    for i in range(1, 16):
        sign, num, den = tables.u_minors()[i]
        n = sign
        for t in num:
            n = n * _factor_value(t, p, q)
        dd = 1
        for t in den:
            dd = dd * _factor_value(t, p, q)
        out.append(n / dd)
    return tuple(out)


def u_map(point):
    """u-coordinates of an (a,b,c,d) point (length 4) or a d-point (length 6)."""
    if len(point) == 4:
        return u_from_minors(*minors_and_q(abcd_matrix(*point)))
    if len(point) == 6:
        return u_from_minors(*minors_and_q(d_matrix(point)))
    raise ValueError("expected 4 or 6 coordinates")


# exponents of u_1..u_15 in a, b, c, d
U_TO_ABCD = {
    "a": {10: 1, 5: -1, 8: -1, 9: -1, 13: -1, 14: -1},
    "b": {9: 1, 11: 1, 4: -1, 7: -1, 12: -1, 15: -1},
    "c": {4: 1, 6: 1, 14: 1, 15: 1, 3: -1, 13: -1},
    "d": {1: 1, 4: 1, 8: 1, 12: 1, 14: 1, 2: -1},
}


def u_inverse(u):
    """The monomial map back to (a, b, c, d)."""
    if any(x == 0 for x in u):
        raise ZeroDivisionError("u has a zero coordinate")
    out = []
    for v in ABCD:
        val = u[0] ** 0
        for i, e in U_TO_ABCD[v].items():
            val = val * u[i - 1] ** e
        out.append(val)
    return tuple(out)


def inverse_exponent_matrix():
    """Rows a, b, c, d of exponents of u_1..u_15."""
    return tuple(tuple(U_TO_ABCD[v].get(j, 0) for j in range(1, 16)) for v in ABCD)


def trinomials():
    """The 15 polynomials u_i + prod u_j - 1 in 15 variables."""
    out = []
    for i, js in sorted(tables.trinomials().items()):
        e_i = [0] * 15
        e_i[i - 1] = 1
        e_m = [0] * 15
        for j in js:
            e_m[j - 1] = 1
        out.append(MPoly(15, {tuple(e_i): Q(1), tuple(e_m): Q(1), (0,) * 15: Q(-1)}))
    return out


def trinomial_residuals(u):
    return tuple(t.eval(u) for t in trinomials())


def trinomial_jacobian_rank(u):
    J = [[t.diff(j).eval(u) for j in range(15)] for t in trinomials()]
    return mat_rank(J)


# ---------------------------------------------------------------------------
# Laurent monomial structure of the minors


class GFactorMismatch(AssertionError):
    pass


def _abcdg_values(a, b, c, d):
    return (a, b, c, d) + g_factors(a, b, c, d)


def fit_g_exponents(points):
    """Fit each minor and -q as +-(a,b,c,d,g1..g11)^e on exact sample points.

    Exponents come from a least-squares fit of log-absolute values, rounded,
    then checked exactly at every point.
    """
    vals = [_abcdg_values(*pt) for pt in points]
    X = np.array([[float(np.log(abs(float(v)))) for v in row] for row in vals])
    targets = {}
    mins = [minors_and_q(abcd_matrix(*pt)) for pt in points]
    for t in TRIPLES:
        targets["p%d%d%d" % t] = [m[0][t] for m in mins]
    targets["q"] = [m[1] for m in mins]
    out = {}
    for name, ys in targets.items():
        y = np.array([float(np.log(abs(float(v)))) for v in ys])
        sol, *_ = np.linalg.lstsq(X, y, rcond=None)
        e = tuple(int(round(s)) for s in sol)
        mono = [_laurent(row, e) for row in vals]
        ratios = {ys[k] / mono[k] for k in range(len(ys))}
        if len(ratios) != 1 or abs(next(iter(ratios))) != 1:
            raise GFactorMismatch("%s is not a signed Laurent monomial" % name)
        out[name] = e + (int(next(iter(ratios))),)
    return out


def _laurent(vals, e):
    r = Q(1)
    for v, k in zip(vals, e):
        if k:
            r = r * v ** k
    return r


class GFactorReport:
    def __init__(self, point, checked, mismatches, q_identity):
        self.point = point
        self.checked = checked
        self.mismatches = mismatches
        self.q_identity = q_identity

    @property
    def ok(self):
        return not self.mismatches and self.q_identity


def g_factor_check(point, table=None):
    """Every minor equals its frozen Laurent monomial; -q = a d g1 g2 g4 / (b c g3 g11)."""
    table = table or tables.g_exponents()
    vals = _abcdg_values(*point)
    p, q = minors_and_q(abcd_matrix(*point))
    bad = []
    for name, e in table.items():
        got = q if name == "q" else p[_key(name[1:])]
        if got != e[-1] * _laurent(vals, e[:-1]):
            bad.append(name)
    a, b, c, d = point
    g = g_factors(*point)
    q_ok = -q == a * d * g[0] * g[1] * g[3] / (b * c * g[2] * g[10])
    return GFactorReport(point, len(table), bad, q_ok)


# ---------------------------------------------------------------------------
# the (x,y,z,w) chart


def xyzw_matrix(x, y, z, w):
    one = x * 0 + 1
    zero = 0 * one
    return [[one, zero, zero, one, x, y], [zero, one, zero, -one, -z, -w], [zero, zero, one, one, one, one]]


def xyzw_q(x, y, z, w):
    return w * x * (y + z - 1) + y * z * (1 - w - x)


class GaugeError(ZeroDivisionError):
    """A minor needed for the normal form vanishes."""


def gauge_fix_minors(p):
    """(x,y,z,w) of the normal form, from the minors of any representative."""
    try:
        x = p[1, 2, 4] * p[2, 3, 5] / (p[1, 2, 5] * p[2, 3, 4])
        y = p[1, 2, 4] * p[2, 3, 6] / (p[1, 2, 6] * p[2, 3, 4])
        z = p[1, 2, 4] * p[1, 3, 5] / (p[1, 2, 5] * p[1, 3, 4])
        w = p[1, 2, 4] * p[1, 3, 6] / (p[1, 2, 6] * p[1, 3, 4])
    except ZeroDivisionError as e:
        raise GaugeError(str(e)) from e
    return (x, y, z, w)


def gauge_fix(m):
    return gauge_fix_minors(minors_of(m))


def permute_columns(m, sigma):
    """Column sigma[i] of the result is column i of m (0-based permutation)."""
    out = [[None] * 6 for _ in range(3)]
    for i, j in enumerate(sigma):
        for r in range(3):
            out[r][j] = m[r][i]
    return out


def minors_permuted(p, sigma):
    """Minors of the column-permuted matrix, computed from the original minors."""
    inv = [0] * 6
    for i, j in enumerate(sigma):
        inv[j] = i
    out = {}
    for t in TRIPLES:
        src = [inv[k - 1] + 1 for k in t]
        srt = sorted(src)
        sgn = _perm_sign(src)
        out[t] = p[tuple(srt)] * sgn
    return out


def _perm_sign(seq):
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def cremona(m):
    """Cremona transformation centred at the first three points."""
    p = minors_of(m)
    # coordinates of columns 4..6 in the basis of the first three columns
    cols = []
    for j in range(4, 7):
        c0 = _minor_any(p, (j, 2, 3))
        c1 = _minor_any(p, (1, j, 3))
        c2 = _minor_any(p, (1, 2, j))
        cols.append((c1 * c2, c0 * c2, c0 * c1))
    one = m[0][0] * 0 + 1
    zero = one * 0
    ident = [[one, zero, zero], [zero, one, zero], [zero, zero, one]]
    return [ident[r] + [cols[k][r] for k in range(3)] for r in range(3)]


def _minor_any(p, t):
    srt = tuple(sorted(t))
    return p[srt] * _perm_sign(t)


def g25(x, y, z, w):
    """Closed form of the transposition (2 5) in the (x,y,z,w) chart."""
    return ((-x * z + x) / (x - z),
            (x * z * w - x * w - y * z * z + y * z) / (x * z - x * w - z * z + z * w),
            1 - z,
            (z * w - w) / (z - w))


def abcd_to_xyzw(a, b, c, d):
    """Chart change read off from the two normal forms."""
    g8 = b * c * d + b * c + b * d + c * d + c + d + 1
    g10 = a * b * c * d + a * b * c + a * b * d + b * c * d + b * c + b * d + c * d + c + d + 1
    return ((b + 1) / b, (b * c + c + 1) / (b * c), (a + 1) * (b + 1) / (a * b + b + 1),
            (a + 1) * g8 / g10)


def xyzw_avoid():
    """The non-constant minors of the normal form and q, as polynomials."""
    vs = [MPoly.var(4, i) for i in range(4)]
    p = minors_of(xyzw_matrix(*vs))
    out = [v for v in p.values() if v.degree() > 0]
    out.append(xyzw_q(*vs))
    return out


# ---------------------------------------------------------------------------
# the d chart and the E6 roots


def d_matrix(d):
    one = d[0] * 0 + 1
    return [[one] * 6, list(d), [x ** 3 for x in d]]


def _root_list():
    roots = []
    for i, j in combinations(range(6), 2):
        v = [0] * 6
        v[i], v[j] = 1, -1
        roots.append(tuple(v))
    for t in combinations(range(6), 3):
        v = [0] * 6
        for k in t:
            v[k] = 1
        roots.append(tuple(v))
    roots.append((1,) * 6)
    return tuple(roots)


ROOTS = _root_list()
ROOT_INDEX = {r: i for i, r in enumerate(ROOTS)}
D0 = (0, 1, 2, 3, 4, 5)
WEYL_ORDER = 51840


def root_name(r):
    pos = [i + 1 for i, c in enumerate(r) if c == 1]
    neg = [i + 1 for i, c in enumerate(r) if c == -1]
    if neg:
        return "d%d-d%d" % (pos[0], neg[0])
    return "+".join("d%d" % i for i in pos)


def root_values(d):
    return tuple(sum(c * x for c, x in zip(r, d)) for r in ROOTS)


def sign_vector(d):
    vals = root_values(d)
    if any(v == 0 for v in vals):
        raise ValueError("point lies on a root hyperplane")
    return tuple(1 if v > 0 else -1 for v in vals)


class SignedPermRoots:
    """A linear map permuting the roots up to sign: r o g = eps[r] * perm[r]."""

    def __init__(self, name, perm, eps):
        self.name = name
        self.perm = perm
        self.eps = eps

    def act(self, s):
        return tuple(e * s[p] for p, e in zip(self.perm, self.eps))


class RootImageError(AssertionError):
    pass


def _signed_perm(name, G):
    """G is a 6x6 matrix with v = G d; roots pull back through its transpose."""
    perm, eps = [], []
    for r in ROOTS:
        img = tuple(sum(r[i] * G[i][j] for i in range(6)) for j in range(6))
        if img in ROOT_INDEX:
            perm.append(ROOT_INDEX[img])
            eps.append(1)
        elif tuple(-x for x in img) in ROOT_INDEX:
            perm.append(ROOT_INDEX[tuple(-x for x in img)])
            eps.append(-1)
        else:
            raise RootImageError("%s does not map %s to a root" % (name, root_name(r)))
    return SignedPermRoots(name, tuple(perm), tuple(eps))


def transposition_matrix(i, j):
    G = [[Q(int(a == b)) for b in range(6)] for a in range(6)]
    G[i][i] = G[j][j] = Q(0)
    G[i][j] = G[j][i] = Q(1)
    return G


def reflection_matrix():
    """v_i = d_i - 2/3 (d1+d2+d3) for i <= 3 and d_i + 1/3 (d1+d2+d3) otherwise."""
    G = [[Q(int(a == b)) for b in range(6)] for a in range(6)]
    for i in range(6):
        for j in range(3):
            G[i][j] += Q(-2, 3) if i < 3 else Q(1, 3)
    return G


def apply_linear(G, d):
    return tuple(sum(G[i][j] * d[j] for j in range(6)) for i in range(6))


@lru_cache(maxsize=None)
def weyl_root_generators():
    gens = [_signed_perm("(%d %d)" % (i + 1, i + 2), transposition_matrix(i, i + 1)) for i in range(5)]
    gens.append(_signed_perm("reflection", reflection_matrix()))
    return tuple(gens)


@lru_cache(maxsize=None)
def chamber_orbit():
    """BFS orbit of the sign vector of D0 under the generators (list, BFS order)."""
    base = sign_vector(D0)
    gens = weyl_root_generators()
    seen = {base}
    order = [base]
    queue = deque([base])
    while queue:
        s = queue.popleft()
        for g in gens:
            t = g.act(s)
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return tuple(order)


def _minor_roots(t):
    i, j, k = [x - 1 for x in t]
    out = []
    for a, b in ((i, j), (i, k), (j, k)):
        v = [0] * 6
        v[a], v[b] = 1, -1
        out.append(ROOT_INDEX[tuple(v)])
    v = [0] * 6
    for a in (i, j, k):
        v[a] = 1
    out.append(ROOT_INDEX[tuple(v)])
    return out


def _q_roots():
    return [ROOT_INDEX[(1,) * 6]] + list(range(15))


def factor_roots(tok):
    """Root indices, with multiplicity, of a minor token or 'q' on the d-matrix."""
    return _q_roots() if tok == "q" else _minor_roots(_key(tok))


class SignProjection:
    """sign(F) = const * prod over roots of s_r^(multiplicity mod 2)."""

    def __init__(self, parities, consts):
        self.parities = parities
        self.consts = consts

    def __call__(self, s):
        out = []
        for par, c in zip(self.parities, self.consts):
            v = c
            for r in par:
                v *= s[r]
            out.append(v)
        return tuple(out)


def _projection(factor_lists, exact_values):
    base = sign_vector(D0)
    parities, consts = [], []
    for facs, val in zip(factor_lists, exact_values):
        cnt = {}
        for r in facs:
            cnt[r] = cnt.get(r, 0) + 1
        par = tuple(sorted(r for r, k in cnt.items() if k % 2))
        pred = 1
        for r in par:
            pred *= base[r]
        actual = 1 if val > 0 else -1
        parities.append(par)
        consts.append(actual * pred)
    return SignProjection(tuple(parities), tuple(consts))


@lru_cache(maxsize=None)
def u_sign_projection():
    lists = []
    for i in range(1, 16):
        _, num, den = tables.u_minors()[i]
        lists.append([r for t in num + den for r in factor_roots(t)])
    vals = u_map(tuple(Q(x) for x in D0))
    return _projection(lists, vals)


def yoshida_factors():
    return tables.yoshida()


def yoshida_coords(point):
    """The 40 coordinates, for an (x,y,z,w) point or a d-point."""
    if len(point) == 4:
        p, q = minors_and_q(xyzw_matrix(*point))
    elif len(point) == 6:
        p, q = minors_and_q(d_matrix(point))
    else:
        raise ValueError("expected 4 or 6 coordinates")
    out = []
    for facs in yoshida_factors():
        v = 1
        for t in facs:
            v = v * _factor_value(t, p, q)
        out.append(v)
    return tuple(out)


@lru_cache(maxsize=None)
def yoshida_sign_projection():
    lists = [[r for t in facs for r in factor_roots(t)] for facs in yoshida_factors()]
    vals = yoshida_coords(tuple(Q(x) for x in D0))
    return _projection(lists, vals)


def yoshida_root_counts():
    """(total linear factors, factors left after removing one copy of every d_i - d_j)."""
    out = []
    for facs in yoshida_factors():
        rs = [r for t in facs for r in factor_roots(t)]
        rest = list(rs)
        for k in range(15):
            if k in rest:
                rest.remove(k)
        out.append((len(rs), len(rest), all(k in rs for k in range(15))))
    return out


class ChamberCensus:
    """Sign censuses of the chamber orbit.

    ``yoshida_lift`` counts the sign vectors of the d-chart polynomials, one
    lift per chamber.  ``yoshida_raw`` counts the patterns realized on the
    affine cone over the image, which is closed under scaling by -1.
    """

    def __init__(self, chambers, u_fibers, yoshida_lift, yoshida_raw, yoshida_projective, free):
        self.chambers = chambers
        self.u_fibers = u_fibers
        self.yoshida_lift = yoshida_lift
        self.yoshida_raw = yoshida_raw
        self.yoshida_projective = yoshida_projective
        self.free = free

    @property
    def u_classes(self):
        return len(self.u_fibers)

    def fiber_sizes(self):
        return sorted(set(self.u_fibers.values()))


def chamber_projections(chambers=None):
    chambers = chambers or chamber_orbit()
    up = u_sign_projection()
    yp = yoshida_sign_projection()
    fibers = {}
    yraw = set()
    for s in chambers:
        u = up(s)
        fibers[u] = fibers.get(u, 0) + 1
        yraw.add(yp(s))
    cone = yraw | {tuple(-x for x in v) for v in yraw}
    yproj = {min(v, tuple(-x for x in v)) for v in yraw}
    base = chambers[0]
    free = len(chambers) == WEYL_ORDER and all(g.act(base) != base for g in weyl_root_generators())
    return ChamberCensus(len(chambers), fibers, len(yraw), len(cone), len(yproj), free)


# ---------------------------------------------------------------------------
# Eckardt polynomials


@lru_cache(maxsize=None)
def eckardt_polys():
    return tuple(parse_poly(t, list(ABCD)) for t in tables.eckardt_polynomials())


def clebsch_point():
    d = QuadExt5(Q(3, 2), Q(-1, 2))
    return (3 - d, 2 - d, 1 - d, d)


def clebsch_values():
    pt = clebsch_point()
    return tuple(f.eval(pt) for f in eckardt_polys())


def _numpy_terms(f):
    exps = np.array(list(f.terms.keys()), dtype=np.int64)
    coefs = np.array([float(c) for c in f.terms.values()])
    return exps, coefs


class EckardtCensus:
    def __init__(self, samples, vectors, first_seen, exact_fallbacks):
        self.samples = samples
        self.vectors = vectors
        self.first_seen = first_seen
        self.exact_fallbacks = exact_fallbacks

    @property
    def count(self):
        return len(self.vectors)

    @property
    def stable(self):
        """No new sign vector during the second half of the samples."""
        return max(self.first_seen.values()) < self.samples // 2


class TooManyChambers(AssertionError):
    pass


def eckardt_census(samples=200000, seed=2024, spread=8.0, limit=120, batch=50000):
    """Sign vectors of the ten Eckardt polynomials on positive sample points.

    Floats are exact dyadic rationals; a sign whose float value is within the
    rounding bound of zero is recomputed exactly.
    """
    from .exact.rational import Q as _Q

    polys = eckardt_polys()
    terms = [_numpy_terms(f) for f in polys]
    vectors = {}
    first = {}
    fallbacks = 0
    done = 0
    while done < samples:
        n = min(batch, samples - done)
        pts = log_uniform_positive(seed + done, n, 4, spread)
        logs = np.log(pts)
        signs = np.empty((n, len(polys)), dtype=np.int8)
        for k, (exps, coefs) in enumerate(terms):
            mono = np.exp(logs @ exps.T)
            vals = mono @ coefs
            mag = mono @ np.abs(coefs)
            sg = np.sign(vals).astype(np.int8)
            unsure = np.abs(vals) <= 1e-9 * mag
            for r in np.nonzero(unsure)[0]:
                fallbacks += 1
                v = polys[k].eval(tuple(_Q(float(x)) for x in pts[r]))
                sg[r] = (v > 0) - (v < 0)
            signs[:, k] = sg
        keys, idx = np.unique(signs, axis=0, return_index=True)
        for key, i in zip(keys, idx):
            if 0 in key:
                continue
            t = tuple(int(x) for x in key)
            if t not in vectors:
                vectors[t] = 0
                first[t] = done + int(i)
        done += n
        if len(vectors) > limit:
            raise TooManyChambers("%d sign vectors exceed %d" % (len(vectors), limit))
    return EckardtCensus(samples, vectors, first, fallbacks)


# ---------------------------------------------------------------------------
# generic sample points


def sixpoint_avoid_abcd():
    vs = [MPoly.var(4, i) for i in range(4)]
    out = list(vs) + g_polys()
    return out


def generic_abcd(seed, count, start=0, positive=True, bound=20):
    return sample_panel(seed, 4, count, avoid=sixpoint_avoid_abcd(), bound=bound,
                        start=start, positive=positive)


def generic_d(seed, count, start=0, bound=40):
    def ok(pt):
        return 0 if any(v == 0 for v in root_values(pt)) else 1
    return sample_panel(seed, 6, count, avoid=[ok], bound=bound, start=start)


def euler_sums():
    return {"150": 1215 - 1620 + 630 - 76 + 1, "126": 1035 - 1395 + 550 - 65 + 1}
