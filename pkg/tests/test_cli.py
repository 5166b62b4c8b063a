"""The ``pickpoly`` command line: outputs and exit codes."""

import json

import pytest

from pickpoly.cli import main
from pickpoly.engine import ProblemData
from pickpoly.mpoly import parse_poly
from pickpoly.rif import RationalInner

SQUARE = ProblemData(2, ((0.5, 0), (1 / 3, 0), (0, 0)), (0.25, 1 / 9, 0))
FAR = ProblemData(2, ((0.1, 0.05), (0.0, 0.1), (0, 0)), (0.95, -0.95, 0))


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_decide_and_verify(files, capsys):
    data = files("d.json", SQUARE.to_json())
    code, out = run(capsys, "decide", "--data", data, "--expand")
    assert code == 0
    report = json.loads(out.out)
    assert report["status"] == "Feasible" and report["witness"]["rank"] == 1
    assert "wall_time" not in report
    rep = files("r.json", out.out)
    code, out = run(capsys, "verify", "--data", data, "--interpolant", rep)
    assert code == 0 and json.loads(out.out)["passed"]
    moved = files("m.json", ProblemData(2, SQUARE.X, (0.3, 1 / 9, 0)).to_json())
    code, _ = run(capsys, "verify", "--data", moved, "--interpolant", rep)
    assert code == 3


def test_decide_is_byte_stable(files, capsys):
    data = files("d.json", SQUARE.to_json())
    _, a = run(capsys, "decide", "--data", data, "--seed", "3")
    _, b = run(capsys, "decide", "--data", data, "--seed", "3")
    assert a.out == b.out


def test_decide_unknown(files, capsys):
    code, out = run(capsys, "decide", "--data", files("d.json", FAR.to_json()), "--gen-count", "2")
    assert code == 3
    assert json.loads(out.out)["status"] == "Unknown"


def test_decide_with_candidate_file(files, capsys):
    data = ProblemData(2, ((0.5, 0.5), (1 / 3, 0), (0, 0)), (-0.5, -0.2, 0))
    cands = files("c.txt", "2 - z1 - z2\n")
    code, out = run(capsys, "decide", "--data", files("d.json", data.to_json()), "--candidates", cands, "--gen-count", "0")
    assert code == 0
    assert json.loads(out.out)["witness"]["rank"] == 0


def test_twopoint(files, capsys):
    code, out = run(capsys, "twopoint", "--data", files("d.json", SQUARE.to_json()))
    assert code == 0 and json.loads(out.out)["all_feasible"]
    code, out = run(capsys, "twopoint", "--data", files("f.json", FAR.to_json()))
    assert code == 3


def test_poly_commands(capsys):
    code, out = run(capsys, "poly", "reflect", "2 - z1 - z2")
    assert code == 0 and parse_poly(out.out.strip(), 2) == parse_poly("2z1z2 - z1 - z2")
    code, out = run(capsys, "poly", "nu", "z1^3 + z2")
    assert json.loads(out.out) == [3, 1]
    assert run(capsys, "poly", "deficient", "2 - z1 - z2")[0] == 0
    assert run(capsys, "poly", "deficient", "1 - z1z2")[0] == 3
    assert run(capsys, "poly", "irreducible", "2 - z1 - z2")[0] == 0
    code, out = run(capsys, "poly", "irreducible", "z1z2")
    assert code == 3 and json.loads(out.out)["status"] == "Reducible"
    assert run(capsys, "poly", "zerofree", "2 - z1 - z2")[0] == 0
    code, out = run(capsys, "poly", "zerofree", "1 - 2z1", "--n", "2")
    assert code == 3 and json.loads(out.out)["status"] == "ZeroFound"
    code, out = run(capsys, "poly", "factor", "6 - 5z1 - 7z2 + z1^2 + 3z1z2 + 2z2^2")
    assert code == 0 and len(json.loads(out.out)["factors"]) == 2


def test_inner_commands(files, capsys):
    Q = parse_poly("2 - z1 - z2")
    path = files("f.json", RationalInner(1, Q.nu(), Q).to_json())
    code, out = run(capsys, "inner", "canon", "--input", path)
    assert code == 0 and json.loads(out.out)["Qhat_text"] == "-2 + z1 + z2"
    code, out = run(capsys, "inner", "factor", "--input", path)
    assert code == 0 and len(json.loads(out.out)["factors"]) == 1
    code, out = run(capsys, "inner", "findzero", "--input", path)
    assert code == 0 and len(json.loads(out.out)["point"]) == 2
    code, out = run(capsys, "inner", "slice", "--input", path)
    B = json.loads(out.out)
    assert code == 0 and B["constant"] == {"re": -1.0, "im": 0.0}


def test_usage_errors(files, capsys):
    assert run(capsys, "decide", "--data", "/nonexistent.json")[0] == 2
    assert run(capsys, "poly", "nu", "z1 +* 2")[0] == 2
    bad = files("bad.json", {"n": 2, "X": [[0.5, 0], [0.5, 0], [0, 0]], "w": [0.1, 0.2, 0]})
    assert run(capsys, "decide", "--data", bad)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["decide"])
    assert exc.value.code == 2
