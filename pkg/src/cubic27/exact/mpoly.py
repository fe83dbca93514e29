"""Sparse multivariate polynomials with exact coefficients."""

import re
from itertools import combinations_with_replacement

from .rational import Q


class MPoly:
    """Polynomial stored as ``{exponent tuple: coefficient}``.

    Coefficients may be any exact ring element (rationals, QuadExt5, ...).
    Zero coefficients are never stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError("exponent %r has wrong length" % (e,))
                if c != 0:
                    self.terms[tuple(e)] = c

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Q(1)})

    @classmethod
    def linear(cls, coeffs):
        n = len(coeffs)
        t = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            t[tuple(e)] = c
        return cls(n, t)

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v == 0:
                t.pop(e, None)
            else:
                t[e] = v
        r = MPoly(self.nvars)
        r.terms = t
        return r

    __radd__ = __add__

    def __neg__(self):
        r = MPoly(self.nvars)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if other == 0:
                return MPoly(self.nvars)
            r = MPoly(self.nvars)
            r.terms = {e: c * other for e, c in self.terms.items()}
            return r
        other = self._coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v == 0:
                    t.pop(e, None)
                else:
                    t[e] = v
        r = MPoly(self.nvars)
        r.terms = t
        return r

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        r = MPoly.const(self.nvars, Q(1))
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nvars, other)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def support(self):
        return sorted(self.terms)

    def __call__(self, *point):
        return self.eval(point)

    def eval(self, point):
        """Evaluate at ``point``; works for any ring supporting + and *."""
        if len(point) != self.nvars:
            raise ValueError("expected %d coordinates" % self.nvars)
        # cache powers per variable
        pw = [dict() for _ in range(self.nvars)]
        total = None
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    p = pw[i].get(k)
                    if p is None:
                        p = point[i] ** k
                        pw[i][k] = p
                    term = term * p
            total = term if total is None else total + term
        if total is None:
            return point[0] * 0 if self.nvars else 0
        return total

    def diff(self, i):
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return MPoly(self.nvars, t)

    def gradient(self):
        return [self.diff(i) for i in range(self.nvars)]

    def compose(self, subs):
        """Substitute ``subs[i]`` (polynomials or scalars) for variable i."""
        return self.eval(list(subs))

    def __repr__(self):
        return "MPoly(%d, %r)" % (self.nvars, self.terms)

    def to_str(self, names=None):
        names = names or ["x%d" % i for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                names[i] + ("^%d" % k if k > 1 else "") for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
        return " + ".join(parts).replace("+ -", "- ")


def monomials(nvars, degree):
    """Exponent tuples of the given total degree, lexicographically descending.

    For three variables and degree 2 this is x0^2, x0x1, x0x2, x1^2, x1x2, x2^2.
    """
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def from_coeffs(nvars, degree, coeffs):
    mons = monomials(nvars, degree)
    if len(coeffs) != len(mons):
        raise ValueError("need %d coefficients" % len(mons))
    return MPoly(nvars, {m: Q(c) for m, c in zip(mons, coeffs)})


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*((?:[a-z]\d*(?:\^\d+)?)*)")
_FACTOR = re.compile(r"([a-z]\d*)(?:\^(\d+))?")


def parse_poly(text, names):
    """Parse juxtaposition notation such as ``ab^2d+b^2d-bcd-1``.

    ``names`` lists the single-token variable names (letters optionally followed
    by digits, for example ``u12``).  Implicit multiplication only.
    """
    index = {n: i for i, n in enumerate(names)}
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty polynomial")
    nv = len(names)
    result = MPoly(nv)
    pos = 0
    for m in re.finditer(r"[+-]?[^+-]+", s):
        if m.start() != pos:
            raise ValueError("cannot parse %r" % text)
        pos = m.end()
        tm = _TERM.fullmatch(m.group(0))
        if tm is None:
            raise ValueError("bad term %r" % m.group(0))
        sign, coef, body = tm.groups()
        c = Q(int(coef)) if coef else Q(1)
        if sign == "-":
            c = -c
        e = [0] * nv
        for f in _FACTOR.finditer(body):
            name, k = f.group(1), f.group(2)
            if name not in index:
                # allow greedy split of e.g. "abcd" into single letters
                raise ValueError("unknown variable %r" % name)
            e[index[name]] += int(k) if k else 1
        if not coef and not body:
            raise ValueError("bad term %r" % m.group(0))
        result = result + MPoly(nv, {tuple(e): c})
    if pos != len(s):
        raise ValueError("cannot parse %r" % text)
    return result
