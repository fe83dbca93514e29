"""Command line interface: ``cubic27 <group> <action> [options]``.

Every invocation builds one Report, prints its summary and optionally writes
it as JSON.  Exit status 0 means every check passed, 1 that a check failed
and 2 that the input or configuration was invalid.
"""

import argparse
import sys
from pathlib import Path

from . import forms as FM
from . import moduli as MD
from . import pezzotope as PZ
from . import schlaefli as S
from . import stringy as ST
from . import surface as SF
from . import tables
from . import verify as V
from .exact import Q
from .report import Report, write_csv

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# inputs


def parse_numbers(text, count=None, kind=Q):
    try:
        vals = [kind(t) for t in text.replace(",", " ").split()]
    except (ValueError, ZeroDivisionError) as e:
        raise InputError("cannot parse %r: %s" % (text, e))
    if count is not None and len(vals) != count:
        raise InputError("expected %d numbers, got %d" % (count, len(vals)))
    return vals


def read_points(path):
    """Six points, one per line, three rationals each; '#' starts a comment."""
    p = Path(path)
    if not p.exists():
        raise InputError("points file not found: %s" % path)
    pts = []
    for raw in p.read_text().splitlines():
        s = raw.split("#")[0].strip()
        if s:
            pts.append(parse_numbers(s, 3))
    if len(pts) != 6:
        raise InputError("expected 6 points, got %d" % len(pts))
    return [[pt[r] for pt in pts] for r in range(3)]


def surface_input(args):
    """(3x6 matrix, abcd or None, is the running example)."""
    if args.points and args.abcd:
        raise InputError("give --points or --abcd, not both")
    if args.points:
        return read_points(args.points), None, False
    if args.abcd:
        abcd = parse_numbers(args.abcd, 4)
        try:
            return MD.abcd_matrix(*abcd), abcd, False
        except ZeroDivisionError:
            raise InputError("the (a,b,c,d) chart needs b, c and d nonzero")
    fx = tables.running_example()
    return [list(r) for r in fx["points"]], list(fx["abcd"]), True


def build_model(rep, args, general=False):
    """The surface of the input; ``general`` also rejects surfaces with Eckardt points."""
    m, abcd, running = surface_input(args)
    rep.inputs["matrix"] = [[str(x) for x in r] for r in m]
    rep.inputs["running_example"] = running
    try:
        model = SF.SurfaceModel(SF.validate_config(m), seed=args.seed)
    except SF.DegenerateConfig as e:
        raise InputError("configuration is not general: vanishing %s" % ", ".join(e.args[0]))
    if general:
        eck = ["".join(p.triple) for p in model.planes.values() if p.eckardt]
        if eck:
            raise InputError("surface is not general: Eckardt points on %s" % ", ".join(sorted(eck)))
    return model, abcd, running


# ---------------------------------------------------------------------------
# surface


Y_NAMES = ["y0", "y1", "y2", "y3"]


def cmd_surface(rep, args, ctx):
    model, abcd, running = build_model(rep, args, general=args.action == "census")
    action = args.action
    if action == "build":
        rep.add("cubic", model.f.to_str(Y_NAMES))
        rep.check("cubic vanishes on the 27 lines", "surface-input",
                  all(model.lines[L].lies_on(model.f) for L in S.LABELS))
        if running:
            printed = V.parse_poly(tables.running_example()["cubic"], Y_NAMES)
            rep.check("cubic equals the printed cubic up to scale", "running-cubic",
                      V.poly_proportional(model.f, printed))
    elif action == "lines":
        rep.add("lines", {L: [list(r) for r in model.lines[L].rowspace] for L in S.LABELS})
        rep.check("27 lines on the surface", "surface-input",
                  len(model.lines) == 27 and all(model.lines[L].lies_on(model.f) for L in S.LABELS))
        rep.check("Pluecker relations", "surface-input",
                  all(model.lines[L].pluecker_relation() == 0 for L in S.LABELS))
        if running:
            printed = tables.running_lines()
            rep.check("lines match the printed lines", "running-lines",
                      all(model.lines[L].same_as(printed[L][1]) for L in S.LABELS))
    elif action == "orders":
        rep.add("orders", {L: list(model.orders[L].canonical()) for L in S.LABELS})
        rep.check("orders are strict", "surface-input",
                  not any(model.orders[L].degenerate for L in S.LABELS))
        if running:
            printed = tables.circular_orders()
            rep.check("orders match the printed table", "circular-orders",
                      all(model.orders[L].canonical() == SF.canonical_order(printed[L]) for L in S.LABELS))
    elif action == "census":
        V.surface_census(rep, model)
        for k in (3, 4, 5):
            rep.add("polygons_%d" % k, ["".join(p) for p in model.exposed(k)])
        if args.csv:
            rows = [(len(p), "".join(S.names(p))) for p in model.region_graph.polygons]
            write_csv(args.csv, ["sides", "lines"], rows)
    elif action == "eckardt":
        eck = sorted("".join(p.triple) for p in model.planes.values() if p.eckardt)
        rep.add("tritangent_planes", len(model.planes))
        rep.add("eckardt_planes", eck)
        rep.check("45 tritangent planes", "surface-input", len(model.planes) == 45)
        if abcd is not None:
            vals = [f.eval(tuple(abcd)) for f in MD.eckardt_polys()]
            rep.add("eckardt_polynomials", vals)
            rep.check("Eckardt planes occur exactly when an Eckardt polynomial vanishes",
                      "clebsch-eckardt", (len(eck) > 0) == any(v == 0 for v in vals))


# ---------------------------------------------------------------------------
# group


def cmd_group(rep, args, ctx):
    if args.action == "order":
        V.weyl_order(rep, ctx)
    elif args.action == "orbits":
        V.cycle_orbits(rep, ctx)
    elif args.action == "configs":
        V.triangle_configs(rep, ctx)
    elif args.action == "doublesix":
        V.double_six_counts(rep, ctx)
        rep.add("reference_rows", [list(r) for r in tables.DOUBLE_SIX_ROWS])


# ---------------------------------------------------------------------------
# moduli


def _u_of(text):
    pt = parse_numbers(text, 4)
    try:
        return MD.u_map(pt)
    except ZeroDivisionError:
        raise InputError("the point %s lies on a boundary divisor" % text)


def cmd_moduli(rep, args, ctx):
    a = args.action
    if a == "uequations":
        V.u_equations(rep, ctx, count=args.samples or 50)
        if args.abcd:
            u = _u_of(args.abcd)
            rep.add("u", u)
            rep.check("trinomials vanish at the input", "u-equations",
                      all(r == 0 for r in MD.trinomial_residuals(u)))
    elif a == "chambers":
        V.chambers(rep, ctx)
    elif a == "signs":
        cc = V.chambers(rep, ctx)
        if args.abcd:
            rep.add("u_signs", ["+" if x > 0 else "-" for x in _u_of(args.abcd)])
        if args.csv:
            rows = [("".join("+" if x > 0 else "-" for x in k), n) for k, n in sorted(cc.u_fibers.items())]
            write_csv(args.csv, ["u_signs", "chambers"], rows)
    elif a == "eckardt-census":
        V.eckardt(rep, ctx)
    elif a == "clebsch":
        vals = MD.clebsch_values()
        rep.add("clebsch_point", [str(x) for x in MD.clebsch_point()])
        rep.add("values", [str(v) for v in vals])
        rep.check("Eckardt polynomials vanish at the Clebsch point", "clebsch-eckardt",
                  all(v == 0 for v in vals))
        model = SF.SurfaceModel(SF.validate_config(MD.abcd_matrix(*MD.clebsch_point())))
        eck = {frozenset(p.triple) for p in model.planes.values() if p.eckardt}
        rep.add("eckardt_planes", len(eck))
        exposed = {frozenset(S.LABELS[i] for i in S.parse_cycle(t)) for t in tables.EXPOSED_TRIANGLES}
        rep.check("the Eckardt planes are the ten exposed triangles", "clebsch-eckardt",
                  eck == exposed)


# ---------------------------------------------------------------------------
# pezzotope


def cmd_pezzotope(rep, args, ctx):
    a = args.action
    p = ctx.pezzotope
    if a == "hull":
        rep.add("vertices", len(p.vertices))
        rep.add("f_vector", p.f_vector())
        rep.check("f-vector", "pezzotope-fvector", p.f_vector() == (45, 90, 60, 15))
        rep.check("simple", "pezzotope-fvector", p.is_simple())
    elif a == "normals":
        m = PZ.match_normals(p)
        normals = PZ.facet_normals(p)
        rep.add("normals", normals)
        rep.add("columns", {j: i + 1 for j, (i, _) in m.items()})
        rep.check("normals match the printed columns", "pezzotope-normals",
                  sorted(i for i, _ in m.values()) == list(range(15)))
        rep.check("inverse u-monomials give the printed matrix", "pezzotope-normals",
                  [list(r) for r in MD.inverse_exponent_matrix()]
                  == [[c[k] for c in tables.facet_normals()] for k in range(4)])
        if args.csv:
            write_csv(args.csv, ["facet", "column", "n1", "n2", "n3", "n4"],
                      [(j, m[j][0] + 1 if j in m else "") + tuple(n) for j, n in enumerate(normals)])
    elif a == "complex":
        d = ctx.delta
        rep.add("delta_counts", d.counts())
        rep.check("Delta counts", "delta-counts", d.counts() == (15, 60, 90, 45))
        rep.check("non-edge rule symmetric", "delta-counts", PZ.non_edge_rule_symmetric())
        try:
            ok = PZ.fan_matches_complex(p, d).ok
        except PZ.FanMismatch:
            ok = False
        rep.check("normal fan is Delta", "pezzotope-fan", ok)
    elif a == "facets":
        cls = PZ.facet_classification(p)
        m = PZ.match_normals(p)
        rep.add("facets", {m[j][0] + 1: k for j, k in cls.items()} if m else cls)
        kinds = sorted(cls.values())
        rep.check("5 cubes and 10 associahedra", "pezzotope-facets",
                  kinds.count("cube") == 5 and kinds.count("associahedron") == 10)
    elif a == "residue":
        i = args.facet
        if not 1 <= i <= 15:
            raise InputError("facet must lie in 1..15")
        r = PZ.u_residue(PZ.omega_abcd(), i)
        rep.inputs["facet"] = i
        rep.add("residue", {" ".join("u%d" % k for k in idx): c for idx, c in sorted(r.terms.items())})
        rep.add("vanishing_set", sorted(PZ.vanishing_set(i)))
        rep.check("residue is a nonzero 3-form", "u-residues", not r.is_zero() and r.degree == 3)
        if i in (1, 11):
            sub = Report("residue", {}, args.seed)
            V.residues(sub)
            for c in sub.checks:
                if c.name.endswith("u%d = 0" % i):
                    rep.check(c.name, c.claim, c.passed)


# ---------------------------------------------------------------------------
# forms


def cmd_forms(rep, args, ctx):
    a = args.action
    if a == "surface-rank":
        model, _, _ = build_model(rep, args, general=True)
        ctx._cache["model"] = model
        V.surface_rank(rep, ctx)
    elif a == "moduli-rank":
        V.moduli_ranks(rep, ctx)
    elif a == "dedupe":
        lib = args.library
        rep.inputs["library"] = lib
        oc = FM.moduli_orbit_census(lib, seed=args.seed)
        rep.add("orbit_sizes", oc.sizes)
        rep.add("total", oc.total)
        rep.add("collisions_verified", oc.collisions_checked)
        expect = {"X": 372, "Y": 432}[lib]
        rep.check("dedupe count", "x36-rank" if lib == "X" else "y36-rank", oc.total == expect)
        if args.csv:
            rows = [(n, "".join(str(i + 1) for i in s)) + tuple(fp[:8]) for n, s, fp in oc.members]
            write_csv(args.csv, ["rep", "perm"] + ["v%d" % k for k in range(1, 9)], rows)
    elif a == "crosscheck":
        V.form_crosschecks(rep, ctx)


# ---------------------------------------------------------------------------
# stringy


def limit_nodes(base, s):
    """The scans expand in alpha' s; shrink the nodes when some s exceeds 1."""
    m = max(1.0, max(s))
    return tuple(a / m for a in base)


def cmd_stringy(rep, args, ctx):
    if args.action == "beta":
        s = parse_numbers(args.s or "2,3", 2, float)
        if any(x <= 0 for x in s):
            raise InputError("s must be positive")
        r = ST.beta_numeric(*s)
        lim = ST.beta_limit(s, limit_nodes(ST.DEFAULT_ALPHAS, s))
        rep.inputs["s"] = s
        rep.add("estimate", r.estimate)
        rep.add("exact", r.exact)
        rep.add("relative_error", r.relative)
        rep.add("limit_nodes", lim.alphas)
        rep.add("limit", lim.extrapolated)
        rep.add("limit_expected", lim.expected)
        rep.check("Beta integral to 1e-6", "beta-integral", r.relative < 1e-6)
        rep.check("field theory limit to 1e-3", "beta-limit", lim.deviation < 1e-3)
    else:
        s = parse_numbers(args.s or "1,1,1", 3, float)
        if any(x <= 0 for x in s):
            raise InputError("s must be positive")
        r = ST.triangle_numeric(s)
        lim = ST.triangle_limit(s, limit_nodes(ST.TRIANGLE_ALPHAS, s))
        rep.inputs["s"] = s
        rep.add("estimate", r.estimate)
        rep.add("exact", r.exact)
        rep.add("relative_error", r.relative)
        rep.add("limit_nodes", lim.alphas)
        rep.add("limit", lim.extrapolated)
        rep.add("limit_expected", lim.expected)
        rep.check("simplex integral to 1e-5", "simplex-integral", r.relative < 1e-5)
        rep.check("field theory limit to 1e-3", "triangle-limit", lim.deviation < 1e-3)


# ---------------------------------------------------------------------------
# verify


def cmd_verify(rep, args, ctx):
    nums = parse_numbers(args.criteria, kind=int) if args.criteria else None
    if nums and any(not 1 <= n <= 13 for n in nums):
        raise InputError("criteria are numbered 1..13")

    def progress(c, r):
        state = "PASS" if r.passed else "FAIL"
        print("criterion %2d %-26s %s  %.1f s" % (c.number, c.title, state, r.timings["total"]),
              file=sys.stderr, flush=True)

    total, _ = V.run_all(ctx, nums, progress)
    rep.results.update(total.results)
    rep.checks.extend(total.checks)
    rep.timings.update(total.timings)


COMMANDS = {
    "surface": (cmd_surface, ["build", "lines", "census", "orders", "eckardt"]),
    "group": (cmd_group, ["order", "orbits", "configs", "doublesix"]),
    "moduli": (cmd_moduli, ["uequations", "chambers", "signs", "eckardt-census", "clebsch"]),
    "pezzotope": (cmd_pezzotope, ["hull", "normals", "complex", "facets", "residue"]),
    "forms": (cmd_forms, ["surface-rank", "moduli-rank", "dedupe", "crosscheck"]),
    "stringy": (cmd_stringy, ["beta", "triangle"]),
    "verify": (cmd_verify, ["all"]),
}


def _common(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(2024), help="RNG seed (default 2024)")
    parser.add_argument("--samples", type=int, default=d(None), help="sample count override")
    parser.add_argument("--json", metavar="PATH", default=d(None), help="write the report as JSON")
    parser.add_argument("--fixtures", metavar="DIR", default=d(None), help="fixture directory")


def build_parser():
    top = argparse.ArgumentParser(prog="cubic27", description=__doc__.splitlines()[0], allow_abbrev=False)
    _common(top, False)
    groups = top.add_subparsers(dest="group", metavar="group", required=True)
    for name, (_, actions) in COMMANDS.items():
        g = groups.add_parser(name, help="%s commands" % name, allow_abbrev=False)
        acts = g.add_subparsers(dest="action", metavar="{%s}" % ",".join(actions), required=True)
        for a in actions:
            p = acts.add_parser(a, allow_abbrev=False)
            _common(p, True)
            p.add_argument("--csv", metavar="PATH", default=None, help="CSV export where available")
            if name in ("surface", "forms", "moduli"):
                p.add_argument("--points", metavar="FILE", help="six points, one per line")
                p.add_argument("--abcd", metavar="a,b,c,d", help="point of the (a,b,c,d) chart")
            if name == "stringy":
                p.add_argument("--s", metavar="S", help="comma separated exponents")
            if name == "pezzotope":
                p.add_argument("--facet", type=int, default=1, help="u-variable for the residue")
            if name == "forms":
                p.add_argument("--library", choices=["X", "Y"], default="Y")
            if name == "verify":
                p.add_argument("--criteria", help="comma separated criterion numbers")
    return top


def run(argv=None):
    """Parse argv, run one command; returns (exit code, Report or None)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (EXIT_OK if e.code == 0 else EXIT_INPUT), None
    command = "%s %s" % (args.group, args.action)
    rep = Report(command, {k: v for k, v in sorted(vars(args).items())
                           if k not in ("group", "action", "json") and v is not None}, args.seed)
    if args.samples is not None and args.samples <= 0:
        print("error: --samples must be positive", file=sys.stderr)
        return EXIT_INPUT, None
    if args.fixtures:
        if not Path(args.fixtures).is_dir():
            print("error: fixture directory not found: %s" % args.fixtures, file=sys.stderr)
            return EXIT_INPUT, None
        tables.set_fixture_dir(args.fixtures)
    ctx = V.Context(seed=args.seed, samples=args.samples or 200000)
    func = COMMANDS[args.group][0]
    try:
        with rep.timed("total"):
            func(rep, args, ctx)
    except (InputError, tables.FixtureError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INPUT, None
    finally:
        if args.fixtures:
            tables.set_fixture_dir(None)
    if args.json:
        rep.write(args.json)
    return rep.exit_code(), rep


def main(argv=None):
    code, rep = run(argv)
    if rep is not None:
        print(rep.summary())
    return code


if __name__ == "__main__":
    sys.exit(main())
