import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from vwidth.cli import main
from vwidth.errors import EmptyInput, InvalidParameter, ParseError
from vwidth.exact import solve_exact
from vwidth.generate import gen_instance
from vwidth.io import SCHEMA, ResultRecord, emit_result, parse_points, parse_text, write_points
from vwidth.oracle import brute_force_optimum

SVG = "{http://www.w3.org/2000/svg}"
BENT = np.array([(0, 0), (1, 0.1), (2, 0), (0, 1), (0, 2)], float)


def test_csv_with_comment():
    assert len(parse_text("0,0\n1,1\n# c\n2,0\n")) == 3


def test_duplicates_are_counted():
    rep = {}
    P = parse_text("0,0\n1,1\n0,0\n1,1 # again\n2,0\n", report=rep)
    assert len(P) == 3 and rep == {"read": 5, "duplicates": 2}


@pytest.mark.parametrize("text, line", [("0,0\n1,1\nfoo,2\n", 3), ("0,0\n\n# x\n1\n", 4),
                                        ("1,2,3\n", 1), ("0,0\n1,inf\n", 2)])
def test_malformed_row_reports_line(text, line):
    with pytest.raises(ParseError) as ei:
        parse_text(text)
    assert ei.value.line == line
    assert f"line {line}" in str(ei.value)


def test_json_input_and_errors():
    assert len(parse_text('{"points": [[0, 0], [1, 2]]}', "json")) == 2
    with pytest.raises(ParseError) as ei:
        parse_text('{"points": [[0, 0],\n [1, ]]}', "json")
    assert ei.value.line == 2
    with pytest.raises(ParseError):
        parse_text('{"pts": []}', "json")
    with pytest.raises(EmptyInput):
        parse_text("# nothing\n")


def test_file_round_trip(tmp_path):
    P = gen_instance("uniform", {"n": 30}, 3)
    for fmt in ("csv", "json"):
        f = tmp_path / f"p.{fmt}"
        f.write_text(write_points(P, fmt, {"seed": 3}))
        assert np.array_equal(parse_points(f), P)


def _record(P, balanced=False):
    return ResultRecord.from_report(solve_exact(P, balanced=balanced), 0.01, len(P))


def test_result_json_round_trip():
    rec = _record(BENT)
    data = emit_result(rec, BENT, "json")
    assert json.loads(data)["schema"] == SCHEMA
    assert ResultRecord.from_json(data.decode()) == rec
    with pytest.raises(ParseError):
        ResultRecord.from_json(json.dumps({"schema": "other/9"}))


def _polygons(svg):
    root = ET.fromstring(svg)
    arms = [e for e in root.iter(f"{SVG}polygon") if e.get("class") == "arm"]
    return [np.array([[float(c) for c in pt.split(",")] for pt in e.get("points").split()]) for e in arms]


def test_svg_is_well_formed_with_two_arms():
    P = gen_instance("noisy_corner", {"n": 40}, 1)
    svg = emit_result(_record(P), P, "svg")
    root = ET.fromstring(svg)
    assert root.tag == f"{SVG}svg"
    assert len(_polygons(svg)) == 2
    assert len(list(root.iter(f"{SVG}circle"))) == len(P)


@pytest.mark.parametrize("seed", range(4))
def test_balanced_svg_arms_have_equal_width(seed):
    P = gen_instance("uniform", {"n": 9}, seed)
    rec = _record(P, balanced=True)
    polys = _polygons(emit_result(rec, P, "svg"))
    out = []
    for poly, d in zip(polys, (rec.dir_left, rec.dir_right)):
        # screen space flips y; the scale factor is common to both arms
        n = np.array([d[1], d[0]])
        pr = poly @ n
        out.append(pr.max() - pr.min())
    assert out[0] == pytest.approx(out[1], rel=1e-6, abs=1e-3)


def test_generators_are_deterministic():
    a = gen_instance("uniform", {"n": 100}, 7)
    assert np.array_equal(a, gen_instance("uniform", {"n": 100}, 7))
    assert not np.array_equal(a, gen_instance("uniform", {"n": 100}, 8))
    # PCG64 seeded through SeedSequence(0); pinned so any platform drift shows up
    assert gen_instance("uniform", {"n": 2}, 0)[0, 0] == 0.6369616873214543


def test_noiseless_corner_has_zero_width():
    P = gen_instance("noisy_corner", {"n": 60, "sigma": 0.0}, 5)
    assert solve_exact(P).width <= 1e-9


def test_generator_parameter_checks():
    for kind, params in [("uniform", {"n": 0}), ("noisy_corner", {"sigma": -1}),
                         ("two_kgon", {"k": 2}), ("hexagon", {})]:
        with pytest.raises(InvalidParameter):
            gen_instance(kind, params)
    assert len(gen_instance("two_kgon", {"k": 6})) == 16


@pytest.fixture
def bent_csv(tmp_path):
    f = tmp_path / "bent.csv"
    f.write_text(write_points(BENT))
    return f


def test_cli_exact_matches_oracle(bent_csv, capsys):
    assert main(["solve", str(bent_csv), "--algorithm", "exact"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == SCHEMA
    assert doc["width"] == pytest.approx(brute_force_optimum(BENT).width, abs=1e-9)


def test_cli_ptas_echoes_guarantee(bent_csv, capsys):
    assert main(["solve", str(bent_csv), "--algorithm", "ptas", "--epsilon", "0.1"]) == 0
    assert json.loads(capsys.readouterr().out)["guarantee"] == pytest.approx(1.1)


def test_cli_svg_to_file(bent_csv, tmp_path):
    out = tmp_path / "v.svg"
    assert main(["solve", str(bent_csv), "--balanced", "--format", "svg", "--out", str(out)]) == 0
    ET.parse(out)


def test_cli_gen_and_oracle(tmp_path, capsys):
    f = tmp_path / "g.csv"
    assert main(["gen", "uniform", "--n", "6", "--seed", "2", "--out", str(f)]) == 0
    assert np.array_equal(parse_points(f), gen_instance("uniform", {"n": 6}, 2))
    capsys.readouterr()
    assert main(["oracle", str(f)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["width"] == pytest.approx(solve_exact(parse_points(f)).width, abs=1e-9)


def test_cli_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,0\nx,1\n")
    assert main(["solve", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["solve", str(tmp_path / "missing.csv")]) == 2
    ok = tmp_path / "ok.csv"
    ok.write_text(write_points(BENT))
    assert main(["solve", str(ok), "--algorithm", "ptas", "--epsilon", "-1"]) == 2
    with pytest.raises(SystemExit) as ei:
        main(["solve", str(ok), "--no-such-flag"])
    assert ei.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_cli_internal_failure_exits_3(bent_csv, monkeypatch):
    import vwidth.cli as cli
    monkeypatch.setattr(cli, "contains_all", lambda *a, **k: False)
    assert main(["solve", str(bent_csv)]) == 3


def test_threads_env_fallback(bent_csv, monkeypatch, capsys):
    monkeypatch.setenv("VSHAPE_THREADS", "0")
    assert main(["solve", str(bent_csv)]) == 2
    monkeypatch.setenv("VSHAPE_THREADS", "2")
    assert main(["solve", str(bent_csv)]) == 0
    capsys.readouterr()
    assert main(["--threads", "3", "solve", str(bent_csv)]) == 0
    assert math.isfinite(json.loads(capsys.readouterr().out)["width"])
