"""Loaders for the text fixtures in ``data/``.

Records have the form ``key : field field ... ;`` with ``,`` separating
groups inside a record and ``#`` starting a comment line.  The directory can
be overridden with ``CUBIC27_FIXTURES`` or :func:`set_fixture_dir`.
"""

import os
from functools import lru_cache
from pathlib import Path

_DEFAULT_DIR = Path(__file__).resolve().parent / "data"
_dir = Path(os.environ.get("CUBIC27_FIXTURES") or _DEFAULT_DIR)


class FixtureError(ValueError):
    """A fixture file is missing or malformed."""


def fixture_dir():
    return _dir


def set_fixture_dir(path):
    global _dir
    _dir = Path(path) if path else _DEFAULT_DIR
    for f in _LOADERS:
        f.cache_clear()


def _lines(name):
    path = _dir / name
    if not path.exists():
        raise FixtureError("fixture not found: %s" % path)
    out = []
    for raw in path.read_text().splitlines():
        s = raw.strip()
        if s and not s.startswith("#"):
            out.append(s)
    return out


def _records(name):
    """Ordered list of (key, body) with the trailing ';' removed."""
    recs = []
    for s in _lines(name):
        if ":" not in s or not s.endswith(";"):
            raise FixtureError("%s: malformed record %r" % (name, s))
        key, body = s.split(":", 1)
        recs.append((key.strip(), body.strip()[:-1].strip()))
    return recs


def _groups(body):
    return [g.split() for g in body.split(",")]


@lru_cache(maxsize=None)
def circular_orders():
    """Line label -> tuple of 10 neighbour labels in printed order."""
    return {k: tuple(v.split()) for k, v in _records("circular_orders.txt")}


@lru_cache(maxsize=None)
def running_lines():
    """Line label -> (plane generators, two linear forms on P^3), as int tuples."""
    out = {}
    for k, v in _records("running_lines.txt"):
        plane, space = v.split(";")
        gens = tuple(tuple(int(c) for c in g) for g in _groups(plane))
        forms = tuple(tuple(int(c) for c in g) for g in _groups(space))
        if any(len(f) != 4 for f in forms) or len(forms) != 2:
            raise FixtureError("running_lines.txt: bad P3 forms for %s" % k)
        out[k] = (gens, forms)
    return out


@lru_cache(maxsize=None)
def running_example():
    recs = dict(_records("running_example.txt"))
    pts = [tuple(int(c) for c in g) for g in _groups(recs["points"])]
    # stored as 6 columns; return the 3x6 matrix
    matrix = tuple(tuple(p[r] for p in pts) for r in range(3))
    top, bottom = _groups(recs["double_six"])
    return {
        "points": matrix,
        "abcd": tuple(int(c) for c in recs["abcd"].split()),
        "cubic": recs["cubic"],
        "double_six": (tuple(top), tuple(bottom)),
        "triangles": tuple(recs["triangles"].split()),
        "pentagons": tuple(recs["pentagons"].split()),
        "quadrilaterals": tuple(recs["quadrilaterals"].split()),
    }


@lru_cache(maxsize=None)
def eckardt_polynomials():
    """The ten Eckardt polynomials in a, b, c, d as text."""
    return tuple(_lines("eckardt.txt"))


@lru_cache(maxsize=None)
def yoshida():
    """Forty coordinates, each a tuple of minor index strings and possibly 'q'."""
    return tuple(tuple(s.split()) for s in _lines("yoshida.txt"))


@lru_cache(maxsize=None)
def amplitude():
    """Group name -> list of 4-tuples of s-indices (denominators)."""
    return {k: [tuple(int(c) for c in g) for g in _groups(v)]
            for k, v in _records("amplitude.txt")}


@lru_cache(maxsize=None)
def trinomials():
    """i -> sorted tuple of j such that u_i + prod u_j = 1."""
    return {int(k): tuple(sorted(int(c) for c in v.split()))
            for k, v in _records("trinomials.txt")}


@lru_cache(maxsize=None)
def facet_normals():
    """The 15 columns of the 4x15 normal matrix as integer 4-tuples."""
    rows = [tuple(int(c) for c in v.split()) for _, v in _records("facet_normals.txt")]
    if len(rows) != 4 or any(len(r) != 15 for r in rows):
        raise FixtureError("facet_normals.txt: expected a 4x15 matrix")
    return tuple(tuple(r[j] for r in rows) for j in range(15))


@lru_cache(maxsize=None)
def u_minors():
    """i -> (sign, numerator factors, denominator factors)."""
    out = {}
    for k, v in _records("u_minors.txt"):
        sign_tok, rest = v.split(None, 1)
        num, den = rest.split("/")
        out[int(k)] = (-1 if sign_tok == "-" else 1, tuple(num.split()), tuple(den.split()))
    return out


@lru_cache(maxsize=None)
def g_exponents():
    """Minor (or 'q') -> exponent tuple over (a, b, c, d, g1..g11, sign)."""
    out = {}
    for k, v in _records("g_exponents.txt"):
        out[k] = tuple(int(c) for c in v.split())
    return out


@lru_cache(maxsize=None)
def moduli_forms():
    """name -> (numerator factors, denominator factors) over minors and 'q'."""
    out = {}
    for k, v in _records("moduli_forms.txt"):
        num, den = v.split("/")
        out[k] = (tuple(num.split()), tuple(den.split()))
    return out


_LOADERS = [circular_orders, running_lines, running_example, eckardt_polynomials,
            yoshida, amplitude, trinomials, facet_normals, u_minors, g_exponents,
            moduli_forms]

# small tables used at import time by the combinatorics
EXPOSED_TRIANGLES = ("F12F36F45", "F14F23F56", "F14F25F36", "F16F25F34", "E2F12G1",
                     "E2F23G3", "E4F34G3", "E4F45G5", "E6F56G5", "E6F16G1")
DOUBLE_SIX_ROWS = (("E1", "E3", "E5", "F24", "F26", "F46"),
                   ("F35", "F15", "F13", "G6", "G4", "G2"))
