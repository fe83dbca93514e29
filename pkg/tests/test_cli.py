import csv
import json
import shutil

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubic27 import cli, tables
from cubic27.exact import Q
from cubic27.report import CLAIMS, Report, to_jsonable


def run(*argv):
    return cli.run(list(argv))


def test_group_order():
    code, rep = run("group", "order")
    assert code == 0 and rep.results["order"] == 51840


def test_surface_census_abcd():
    code, rep = run("surface", "census", "--abcd", "1,1,1,2")
    assert code == 0 and rep.results["census"] == {"3": 10, "4": 90, "5": 30}


def test_stringy_beta():
    code, rep = run("stringy", "beta", "--s", "2,3")
    assert code == 0 and abs(rep.results["estimate"] - 1 / 12) < 1e-12


def test_stringy_triangle():
    code, rep = run("stringy", "triangle", "--s", "1,2,3")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ("surface", "build"), ("surface", "lines"), ("surface", "orders"), ("surface", "eckardt"),
    ("group", "orbits"), ("group", "configs"), ("group", "doublesix"),
    ("moduli", "uequations"), ("moduli", "clebsch"),
    ("pezzotope", "hull"), ("pezzotope", "normals"), ("pezzotope", "complex"),
    ("pezzotope", "facets"), ("pezzotope", "residue", "--facet", "1"),
    ("forms", "crosscheck"),
])
def test_commands_pass(argv):
    code, rep = run(*argv)
    assert code == 0, rep.summary()
    assert rep.checks


def test_global_flags_before_and_after(tmp_path):
    out = tmp_path / "r.json"
    code, rep = run("--seed", "7", "group", "order", "--json", str(out))
    assert code == 0 and rep.seed == 7
    back = Report.loads(out.read_text())
    assert back.to_dict() == rep.to_dict()
    code, rep = run("group", "order", "--seed", "9")
    assert rep.seed == 9


def test_invalid_inputs():
    assert run("bogus")[0] == 2
    assert run("surface", "census", "--abcd", "1,2")[0] == 2
    assert run("surface", "census", "--abcd", "1,x,1,2")[0] == 2
    assert run("surface", "build", "--abcd", "1,0,1,2")[0] == 2
    # Eckardt point: not a general cubic
    assert run("surface", "census", "--abcd", "1,1,1,1")[0] == 2
    assert run("stringy", "beta", "--s", "-1,2")[0] == 2
    assert run("group", "order", "--fixtures", "/nonexistent")[0] == 2
    assert run("verify", "all", "--criteria", "14")[0] == 2


def test_points_file(tmp_path):
    f = tmp_path / "pts.txt"
    f.write_text("# running example\n1 0 0\n0 1 0\n0 0 1\n1 -1 1\n6 -4 3\n24 -11 8\n")
    code, rep = run("surface", "census", "--points", str(f))
    assert code == 0
    f.write_text("1 0 0\n0 1 0\n")
    assert run("surface", "census", "--points", str(f))[0] == 2
    f.write_text("1 0 0\n0 1 0\n0 0 1\n1 1 0\n6 -4 3\n24 -11 8\n")
    assert run("surface", "census", "--points", str(f))[0] == 2


def test_csv_export(tmp_path):
    out = tmp_path / "polys.csv"
    code, _ = run("surface", "census", "--csv", str(out))
    rows = list(csv.reader(out.open()))
    assert code == 0 and rows[0] == ["sides", "lines"] and len(rows) == 131


def test_fixture_override_detects_tampering(tmp_path):
    d = tmp_path / "fx"
    shutil.copytree(tables.fixture_dir(), d)
    code, _ = run("pezzotope", "normals", "--fixtures", str(d))
    assert code == 0
    text = (d / "facet_normals.txt").read_text().replace("-1", "-2", 1)
    (d / "facet_normals.txt").write_text(text)
    code, rep = run("pezzotope", "normals", "--fixtures", str(d))
    assert code == 1
    assert any(c.claim == "pezzotope-normals" for c in rep.failures())
    assert tables.fixture_dir() != d
    (d / "facet_normals.txt").unlink()
    assert run("pezzotope", "normals", "--fixtures", str(d))[0] == 2


def test_failed_check_names_claim():
    rep = Report("x")
    rep.check("order", "weyl-order", False, 1)
    assert rep.exit_code() == 1
    assert "weyl-order" in rep.failures()[0].message()
    with pytest.raises(KeyError):
        rep.check("bad", "no-such-claim", True)
    assert all(CLAIMS.values())


def test_verify_deterministic():
    a = run("verify", "all", "--criteria", "1,3,13")
    b = run("verify", "all", "--criteria", "1,3,13")
    assert a[0] == b[0] == 0
    assert a[1].results == b[1].results


json_values = st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=5)
    | st.fractions(max_denominator=100).map(lambda f: Q(f.numerator, f.denominator)),
    lambda inner: st.lists(inner, max_size=3) | st.dictionaries(st.text(max_size=3), inner, max_size=3),
    max_leaves=10)


@given(st.dictionaries(st.text(min_size=1, max_size=6), json_values, max_size=5), st.integers(0, 10**6))
def test_report_roundtrip(results, seed):
    rep = Report("test", {"seed": seed}, seed)
    for k, v in results.items():
        rep.add(k, v)
    rep.check("c", "timing", True, "ok")
    rep.timings["total"] = 0.5
    back = Report.loads(rep.dumps())
    assert back.to_dict() == rep.to_dict()
    assert json.loads(back.dumps()) == json.loads(rep.dumps())


def test_to_jsonable():
    assert to_jsonable(Q(3, 4)) == "3/4"
    assert to_jsonable(Q(4, 2)) == 2
    assert to_jsonable((1, (2, 3))) == [1, [2, 3]]
    assert to_jsonable({3: True}) == {"3": True}


def test_schema_mismatch():
    d = Report("x").to_dict()
    d["schema"] = 99
    with pytest.raises(ValueError):
        Report.from_dict(d)


def test_main_prints(capsys):
    assert cli.main(["group", "order"]) == 0
    assert "order = 51840" in capsys.readouterr().out
