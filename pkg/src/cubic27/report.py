"""Machine-readable verification reports.

A report is a JSON object with the fields

    schema    integer schema version (SCHEMA_VERSION)
    command   subcommand name, e.g. "group order"
    inputs    echo of the parsed inputs
    seed      the RNG seed
    results   named values (numbers, strings, booleans, lists, nested objects)
    checks    list of {"name", "claim", "passed", "detail"}
    timings   name -> wall-clock seconds

Exact rationals are stored as strings "p/q", tuples as lists and dictionary
keys as strings, so a report read back from disk equals the one written.
"""

import csv
import json
import time
from contextlib import contextmanager

from .exact import Q

SCHEMA_VERSION = 1

# claim id -> statement checked by the verification suite
CLAIMS = {
    "weyl-order": "the relabelling group of the Schlaefli graph has order 51840",
    "cycle-census": "the Schlaefli graph has 45 triangles, 1080 four-cycles and 6912 five-cycles",
    "cycle-orbits": "cycle orbits have sizes 45; 1080; 4320 and 2592",
    "adjoint-vertex": "every four-cycle has a unique line at distance two from all its lines",
    "triangle-configs": "the exposed triangle configuration has stabilizer 120 and orbit 432",
    "double-sixes": "there are 36 double-sixes and 6 one-factorizations of K6, and 36*6*2 = 432",
    "running-cubic": "the running example maps onto the printed cubic surface",
    "running-lines": "the 27 lines of the running example match the printed lines",
    "circular-orders": "the circular orders on the 27 lines match the printed table",
    "region-graph": "the region graph has 135 vertices and 270 edges",
    "polygon-census": "the real surface has 10 triangles, 90 quadrilaterals and 30 pentagons",
    "exposed-triangles": "the exposed triangles are the printed ten",
    "unused-double-six": "the 12 lines not on exposed triangles form the printed double-six",
    "pentagon-orbit": "all exposed pentagons lie in the orbit of size 4320",
    "u-equations": "the u-map satisfies the 15 trinomial u-equations",
    "u-inverse": "the u-map is inverted by the printed monomials in u",
    "u-dimension": "the u-equations cut out a variety of dimension 4",
    "pezzotope-fvector": "the pezzotope is simple with f-vector (45, 90, 60, 15)",
    "pezzotope-normals": "the facet normals are the printed 4x15 columns",
    "pezzotope-fan": "the normal fan of the pezzotope is the clique complex Delta",
    "delta-counts": "Delta has 15 vertices, 60 edges, 90 triangles and 45 tetrahedra",
    "amplitude-denominators": "the amplitude denominators are the tetrahedra of Delta",
    "pezzotope-facets": "the pezzotope has 5 cube facets and 10 associahedron facets",
    "chamber-orbit": "the Weyl group acts freely on 51840 chambers",
    "u-sign-classes": "the u-signs split the chambers into 432 classes of 120",
    "yoshida-signs": "the Yoshida coordinates realize 864 sign vectors, 432 up to sign",
    "eckardt-census": "the Eckardt polynomials take 120 sign vectors on positive points",
    "clebsch-eckardt": "the Eckardt polynomials vanish at the Clebsch point",
    "surface-rank": "the surface form library has rank 109 and nullity 21",
    "x36-rank": "the X(3,6) library dedupes to 372 forms of rank 126",
    "y36-rank": "the Y(3,6) library dedupes to 432 = 120+180+120+12 forms of rank 150",
    "quadrilateral-variants": "the two quadrilateral form variants are proportional",
    "pentagon-form": "the pentagon form is proportional to the printed one",
    "q-form": "the q-form at the identity is the printed omega_xyzw coefficient",
    "dlog-pullback": "the dlog form pulled back from omega_xyzw is dlog a b c d",
    "u-residues": "the u-chart residues at u1 = 0 and u11 = 0 are the printed forms",
    "beta-integral": "the segment stringy integral is the Beta function",
    "simplex-integral": "the triangle stringy integral is the Dirichlet integral",
    "beta-limit": "the segment integral tends to (s1+s2)/(s1 s2)",
    "triangle-limit": "the triangle integral tends to (s1+s2+s3)/(s1 s2 s3)",
    "euler-sums": "1215-1620+630-76+1 = 150 and 1035-1395+550-65+1 = 126",
    "surface-input": "the configuration defines a smooth cubic surface",
    "timing": "the computation finishes within its time budget",
}


def to_jsonable(x):
    """Canonical JSON value: rationals as 'p/q' strings unless integral."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return int(x)
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [to_jsonable(v) for v in seq]
    try:
        r = Q(x)
    except (TypeError, ValueError):
        return str(x)
    if r.denominator == 1:
        return int(r.numerator)
    return "%d/%d" % (r.numerator, r.denominator)


class Check:
    def __init__(self, name, claim, passed, detail=""):
        if claim not in CLAIMS:
            raise KeyError("unknown claim %r" % claim)
        self.name = name
        self.claim = claim
        self.passed = bool(passed)
        self.detail = detail

    def to_dict(self):
        return {"name": self.name, "claim": self.claim, "passed": self.passed,
                "detail": to_jsonable(self.detail)}

    def message(self):
        state = "PASS" if self.passed else "FAIL"
        s = "%s %s" % (state, self.name)
        if not self.passed:
            s += " (contradicts %s: %s)" % (self.claim, CLAIMS[self.claim])
        return s


class Report:
    def __init__(self, command, inputs=None, seed=2024):
        self.command = command
        self.inputs = to_jsonable(inputs or {})
        self.seed = seed
        self.results = {}
        self.checks = []
        self.timings = {}

    def add(self, name, value):
        self.results[name] = to_jsonable(value)
        return value

    def check(self, name, claim, passed, detail=""):
        c = Check(name, claim, passed, detail)
        self.checks.append(c)
        return c.passed

    @contextmanager
    def timed(self, name):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - t0, 6)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def exit_code(self):
        return 0 if self.passed else 1

    def to_dict(self):
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "results": self.results,
            "checks": [c.to_dict() for c in self.checks],
            "timings": self.timings,
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError("unsupported report schema %r" % d.get("schema"))
        r = cls(d["command"], d["inputs"], d["seed"])
        r.results = d["results"]
        r.checks = [Check(c["name"], c["claim"], c["passed"], c["detail"]) for c in d["checks"]]
        r.timings = d["timings"]
        return r

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text):
        return cls.from_dict(json.loads(text))

    def write(self, path):
        with open(path, "w") as fh:
            fh.write(self.dumps())
            fh.write("\n")

    def summary(self):
        lines = ["%s: %s" % (self.command, "PASS" if self.passed else "FAIL")]
        for k in sorted(self.results):
            v = json.dumps(self.results[k], sort_keys=True)
            if len(v) > 100:
                v = v[:97] + "..."
            lines.append("  %s = %s" % (k, v))
        lines.extend("  " + c.message() for c in self.checks)
        return "\n".join(lines)


def write_csv(path, header, rows):
    """Matrix export: one header row, then one row per record."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in rows:
            w.writerow([to_jsonable(x) for x in r])
