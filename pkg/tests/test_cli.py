import json

import pytest

from speccert import graphs as gr
from speccert.cli import RecipeError, build_recipe, main
from speccert.families import catalog
from speccert.graphio import parse_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# recipe grammar


def test_recipe_constructions():
    assert build_recipe("complete(4)").m == 6
    assert build_recipe("kpq(2,3)").m == 6
    assert build_recipe("multipartite(2,2,2)").n == 6
    assert build_recipe("kminus(4)").m == 12
    assert build_recipe("cone(complete(4))").n == 5
    assert build_recipe("complement(complete(5))").m == 0
    assert build_recipe("line(complete(4))").n == 6
    assert build_recipe("tensorJ(complete(2),3)").n == 6
    assert build_recipe("starJ(complete(2),3)").m == 15  # K2 star-blowup is K6
    assert build_recipe("cartesian(complete(2),complete(2))").m == 4
    assert build_recipe("union(complete(2),complete(3))").n == 5
    assert build_recipe("ag3q(2)").n == 22
    assert build_recipe("cycle(5)").m == 5
    assert build_recipe("shrikhande").n == 16
    assert build_recipe("catalog:ag32").n == 22
    assert build_recipe("catalog:table2/LQ3").n == 12
    assert build_recipe("catalog:LK6").n == 15  # case-insensitive key fallback


def test_recipe_errors_carry_positions():
    for text, frag in [("bogus(3)", "position 0"),
                       ("cone(", "position"),
                       ("complete(2) junk", "trailing"),
                       ("cone(complete(2),2)", "cone expects"),
                       ("kpq(0,2)", "kpq"),
                       ("catalog:nope", "unknown catalog key")]:
        with pytest.raises(RecipeError) as exc:
            build_recipe(text)
        assert frag in str(exc.value)


def test_catalog_recipes_roundtrip():
    for key, entry in catalog().items():
        G = build_recipe(entry.recipe)
        assert gr.are_isomorphic(G, entry.graph()), key


# ---------------------------------------------------------------------------
# subcommands


def test_construct_and_spectrum_pipe(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "kpq(2,3)")
    assert code == 0
    g6 = out.strip()
    path = tmp_path / "g.g6"
    path.write_text(g6 + "\n")
    code, out, _ = run(capsys, "spectrum", str(path), "--exact")
    assert code == 0
    assert out.strip() == "sqrt(6)^1 0^3 -sqrt(6)^1"


def test_construct_edges_output(capsys):
    code, out, _ = run(capsys, "construct", "complete(3)", "--output", "edges")
    assert code == 0
    assert out.splitlines() == ["0 1", "0 2", "1 2"]


def test_spectrum_float_and_uncertified(capsys, tmp_path):
    path = tmp_path / "p4.txt"
    path.write_text("0 1\n1 2\n2 3\n")
    code, out, _ = run(capsys, "spectrum", str(path), "--format", "edges")
    assert code == 0
    assert "(uncertified)" in out
    code, out, _ = run(capsys, "spectrum", str(path), "--float", "--format", "edges")
    assert code == 0
    assert len(out.split()) == 4


def test_classify_json_stable(capsys, tmp_path):
    path = tmp_path / "ag32.g6"
    code, out, _ = run(capsys, "construct", "catalog:ag32")
    path.write_text(out)
    code, out1, _ = run(capsys, "classify", str(path), "--no-timestamp")
    assert code == 0
    doc = json.loads(out1)
    assert doc["schema"] == 1
    rep = doc["reports"][0]
    assert rep["in_G"] and rep["in_H"] and rep["pattern"] == "Case1b(14,2,14)"
    code, out2, _ = run(capsys, "classify", str(path), "--no-timestamp")
    assert out1 == out2  # byte-stable without the timestamp
    code, out3, _ = run(capsys, "classify", str(path))
    assert json.loads(out3).get("timestamp")


def test_classify_csv(capsys, tmp_path):
    path = tmp_path / "k4.g6"
    run(capsys, "construct", "complete(4)")
    path.write_text(capsys.readouterr() and "C~\n")
    code, out, _ = run(capsys, "classify", str(path), "--output", "csv",
                       "--no-timestamp")
    assert code == 0
    header = out.splitlines()[0]
    assert header.split(",")[:6] == ["n", "m", "regular", "connected",
                                     "spectrum", "pattern"]


def test_bounds_report(capsys, tmp_path):
    path = tmp_path / "sh.g6"
    code, out, _ = run(capsys, "construct", "shrikhande")
    path.write_text(out)
    code, out, _ = run(capsys, "bounds", str(path), "--no-timestamp")
    assert code == 0
    row = json.loads(out)["bounds"][0]
    assert row["energy"] == 36
    assert row["nikiforov_equal"] and row["km_equal"] and row["exact"]
    assert row["km_n_bound"] == 40


def test_scan_builtin(capsys):
    code, out, _ = run(capsys, "scan", "--n-min", "2", "--n-max", "4",
                       "--no-timestamp")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["graphs_scanned"] == 1 + 4 + 38
    assert doc["summary"]["failures"] == []


def test_scan_stream_with_skips(capsys, tmp_path):
    path = tmp_path / "mixed.g6"
    path.write_text("C~\nnot a record\n")
    code, out, _ = run(capsys, "scan", "--source", str(path), "--no-timestamp")
    assert code == 1  # skip forces a nonzero exit
    doc = json.loads(out)
    assert doc["summary"]["graphs_scanned"] == 1
    assert len(doc["summary"]["skips"]) == 1


def test_verify_builtin(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "2..4", "--all")
    assert code == 0
    assert "FAILURES" not in out
    assert "connected" in out and "all graphs" in out


def test_verify_stream(capsys, tmp_path):
    path = tmp_path / "cat.g6"
    code, out, _ = run(capsys, "construct", "catalog:table2/H33")
    path.write_text(out)
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0
    assert "0 failures" in out


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert "shrikhande" in out and "table2/LK6xJ2" in out


def test_error_exit_codes(capsys):
    code, _, err = run(capsys, "construct", "bogus(1)")
    assert code == 2 and "unknown construction" in err
    code, _, err = run(capsys, "construct", "catalog:nope")
    assert code == 2
