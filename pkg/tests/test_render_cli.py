import json
import os
from fractions import Fraction as Q

import pytest

from tropmirror.charges import ChargeMatrix, build_web
from tropmirror.cli import run
from tropmirror.diagram import TropicalDiagram, diagram_to_json
from tropmirror.render import RenderError, render

DIAGRAMS = os.path.join(os.path.dirname(__file__), "..", "diagrams")


def c3():
    return TropicalDiagram(2, ((Q(0), Q(0)),), (), ((0, (1, 0)), (0, (0, 1)), (0, (-1, -1))))


def conifold():
    return build_web(ChargeMatrix(((1, 1, -1, -1),), 4), [0, 1, 0, 0]).diagram


def path(name):
    return os.path.join(DIAGRAMS, name)


def test_svg_c3_has_three_ray_lines():
    svg = render(c3(), fmt="svg")
    assert svg.count("<line") == 3
    assert svg.count('class="ray"') == 3


def test_dot_conifold_structure():
    dot = render(conifold(), fmt="dot")
    assert dot.count("v0") >= 1 and dot.count("v1") >= 1
    assert dot.count("[class=edge]") == 1
    assert dot.count("[class=ray]") == 4
    assert dot.count("shape=point") == 4


def test_render_d1_number_line():
    svg = render(TropicalDiagram(1, ((Q(0),), (Q(2),))), fmt="svg")
    assert svg.count("<circle") == 2
    assert svg.count('class="axis"') == 1


def test_render_empty_and_unknown_format():
    with pytest.raises(RenderError, match="empty"):
        render(TropicalDiagram(2, ()), fmt="svg")
    with pytest.raises(RenderError, match="unknown format"):
        render(c3(), fmt="png")


def test_render_deterministic():
    a = render(conifold(), fmt="svg")
    b = render(conifold(), fmt="svg")
    assert a == b


def test_cli_validate_ok(capsys):
    assert run(["validate", path("c3.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] is True


def test_cli_validate_failure(tmp_path, capsys):
    bad = {"dim": 2, "vertices": [["0", "0"]], "edges": [],
           "rays": [{"at": 0, "dir": [1, 0]}, {"at": 0, "dir": [-1, 0]}]}
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(bad))
    assert run(["validate", str(f)]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["trivalent"] is False


def test_cli_mirror_focus_focus(capsys):
    assert run(["mirror", path("focus_focus.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["relation"] == "x*y - (1 + u)"


def test_cli_dual_c3(capsys):
    assert run(["dual", path("c3.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert sorted(map(tuple, out["lattice_points"])) == [(0, 0), (0, 1), (1, 0)]
    assert out["embedding_matches_subdivision"] is True
    assert out["smooth"] is True
    assert len(out["covectors"]) == 3


def test_cli_web_conifold(capsys):
    assert run(["web", "--charges", path("conifold.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["vertices"]) == 2
    assert out["simplicial"] is True


def test_cli_web_degenerate(tmp_path, capsys):
    f = tmp_path / "degenerate.json"
    f.write_text(json.dumps({"charges": [[1, 1, -1, -1]], "heights": ["0", "0", "0", "0"]}))
    assert run(["web", "--charges", str(f)]) == 1
    err = capsys.readouterr().err
    assert "degenerate Kähler parameters" in err
    assert run(["web", "--charges", str(f), "--allow-singular"]) == 0


def test_cli_wallcross_demo(capsys):
    assert run(["wallcross-demo", "-E", "10"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_cli_wallcross_demo_json(capsys):
    assert run(["wallcross-demo", "--json", "-E", "1/2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["passed"] is True


def test_cli_transport(tmp_path, capsys):
    pf = tmp_path / "path.json"
    pf.write_text(json.dumps({"path": [["-1", "-1"], ["1", "-1"], ["1", "1"], ["-1", "1"], ["-1", "-1"]]}))
    assert run(["transport", path("focus_focus.json"), "--path", str(pf), "--class", "0,1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["result"] == [1, 1]


def test_cli_eval(tmp_path, capsys):
    sf = tmp_path / "series.json"
    sf.write_text(json.dumps({
        "dim": 2, "chamber": "V_plus", "truncation": "10",
        "box": [["1/4", "2"], ["1/4", "2"]],
        "terms": [{"expo": [1, 0], "coeff": [{"exp": "0", "coeff": "1"}]}],
    }))
    assert run(["eval", str(sf), "--point", "1/2,3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["text"] == "1*t^{1/2}"


def test_cli_render_formats(capsys):
    assert run(["render", path("c3.json"), "--format", "svg"]) == 0
    svg = capsys.readouterr().out
    assert svg.startswith("<svg")
    assert run(["render", path("c3.json"), "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith("graph web")


def test_cli_usage_errors(capsys):
    assert run(["bogus-subcommand"]) == 2
    capsys.readouterr()
    assert run([]) == 2
    capsys.readouterr()


def test_cli_determinism(capsys):
    run(["mirror", path("kp2.json")])
    first = capsys.readouterr().out
    run(["mirror", path("kp2.json")])
    second = capsys.readouterr().out
    assert first == second
    run(["dual", path("c3.json")])
    third = capsys.readouterr().out
    run(["dual", path("c3.json")])
    assert third == capsys.readouterr().out


def test_cli_round_trip_web_then_mirror(tmp_path, capsys):
    assert run(["web", "--charges", path("conifold.json")]) == 0
    data = json.loads(capsys.readouterr().out)
    slim = {k: data[k] for k in ("dim", "vertices", "edges", "rays")}
    f = tmp_path / "conifold_web.json"
    f.write_text(json.dumps(slim))
    assert run(["mirror", str(f)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["relation"] == "x*y - (1 + u1 + u2 + t^{1}*u1*u2)"


def test_emitted_diagram_json_reparses():
    diag = conifold()
    text = json.dumps(diagram_to_json(diag))
    from tropmirror.diagram import diagram_from_json

    assert diagram_from_json(json.loads(text)) == diag


def test_cli_mirror_accepts_charge_files(capsys):
    assert run(["mirror", path("conifold.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["relation"] == "x*y - (1 + u1 + u2 + t^{1}*u1*u2)"


def test_cli_mirror_base_point_and_raw(capsys):
    assert run(["mirror", path("c3.json"), "--base-point", "5,7"]) == 0
    normalized = json.loads(capsys.readouterr().out)
    assert normalized["relation"] == "x*y - (1 + u1 + u2)"
    assert run(["mirror", path("c3.json"), "--base-point", "5,7", "--raw"]) == 0
    raw = json.loads(capsys.readouterr().out)
    assert raw["relation"] != normalized["relation"]  # unnormalized carries t-powers


def test_cli_mirror_corrections(tmp_path, capsys):
    cf = tmp_path / "corr.json"
    cf.write_text(json.dumps([{"vertex": [0, 0], "series": [{"exp": "2", "coeff": "3"}]}]))
    assert run(["mirror", path("c3.json"), "--corrections", str(cf)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert "(1 + 3*t^{2})" in out["relation"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([{"vertex": [0, 0], "series": [{"exp": "0", "coeff": "1"}]}]))
    assert run(["mirror", path("c3.json"), "--corrections", str(bad)]) == 1
    assert "positive valuation" in capsys.readouterr().err


def test_cli_dual_root_face_and_flip(capsys):
    assert run(["dual", path("c3.json"), "--flip-sign"]) == 0
    flipped = json.loads(capsys.readouterr().out)
    assert sorted(map(tuple, flipped["lattice_points"])) == [(0, 0), (1, -1), (1, 0)]
    assert run(["dual", path("c3.json"), "--root-face", "0"]) == 0
    rooted = json.loads(capsys.readouterr().out)
    assert rooted["root_face"] == 0
    assert rooted["lattice_points"][0] == [0, 0]


def test_cli_transport_tau(tmp_path, capsys):
    pf = tmp_path / "path.json"
    # the loop at height -1/2 circles the critical value; raising tau on the
    # cut to -2 moves the cut below the loop and kills the crossing
    pf.write_text(json.dumps({"path": [["-1", "-1/2"], ["1", "-1/2"], ["1", "1"], ["-1", "1"], ["-1", "-1/2"]]}))
    tf = tmp_path / "tau.json"
    tf.write_text(json.dumps({"point0": "-2"}))
    assert run(["transport", path("focus_focus.json"), "--path", str(pf), "--class", "0,1"]) == 0
    assert json.loads(capsys.readouterr().out)["result"] == [1, 1]
    assert run(["transport", path("focus_focus.json"), "--path", str(pf), "--class", "0,1", "--tau", str(tf)]) == 0
    assert json.loads(capsys.readouterr().out)["result"] == [0, 1]
