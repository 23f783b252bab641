"""The command-line front end: round trips, determinism, exit codes."""

import json
import subprocess
import sys

from isogeny_kit.cli import main

RUN = [sys.executable, "-m", "isogeny_kit.cli"]


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_classify_hyperbolic(tmp_path, capsys):
    path = write(tmp_path, "h.json", {"field": "Q", "gram": [[0, 1], [1, 0]]})
    assert main(["classify", path]) == 0
    out = capsys.readouterr().out
    assert "dim 2" in out and "disc 1" in out and "witt 1" in out


def test_classify_f3_diag111(tmp_path, capsys):
    path = write(tmp_path, "s.json",
                 {"field": "p=3", "gram": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    assert main(["classify", path]) == 0
    out = capsys.readouterr().out
    assert "witt 1" in out and "kernel dim 1" in out


def test_classify_degenerate(tmp_path, capsys):
    path = write(tmp_path, "bad.json",
                 {"field": "p=3", "gram": [[1, 1], [1, 1]]})
    assert main(["classify", path]) == 2
    assert "DegenerateSpace" in capsys.readouterr().err


def test_verify_unknown_suite(capsys):
    assert main(["verify", "bogus"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_verify_runs_and_reports(tmp_path, capsys):
    out = str(tmp_path / "report.jsonl")
    code = main(["verify", "BEpol,Sadjt", "--field", "p=3", "--trials", "10",
                 "--seed", "7", "--out", out])
    assert code == 0
    lines = open(out).read().strip().split("\n")
    summary = json.loads(lines[-1])
    assert summary["passed"] is True
    assert {s["suite"] for s in summary["suites"]} == {"BEpol", "Sadjt"}


def test_verify_deterministic(tmp_path):
    out1 = str(tmp_path / "r1.jsonl")
    out2 = str(tmp_path / "r2.jsonl")
    for out in (out1, out2):
        assert main(["verify", "normsq,vnorm8", "--field", "p=3",
                     "--trials", "15", "--seed", "3", "--out", out]) == 0
    assert open(out1, "rb").read() == open(out2, "rb").read()


def test_decompose_roundtrip(tmp_path, capsys):
    # the swap matrix as a GSp element over F5 with B = (2,-1), C = (1,2)
    blocks = [[0] * 16, [0] * 16, [0] * 16, [0] * 16]
    blocks[1][0] = 1
    blocks[2][0] = 1
    path = write(tmp_path, "gsp.json",
                 {"field": "p=5", "B": [2, -1], "C": [1, 2], "blocks": blocks})
    assert main(["decompose", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["multiplier"] == "1"
    assert report["phi"] == "1"


def test_decompose_non_member(tmp_path, capsys):
    blocks = [[0] * 16 for _ in range(4)]
    blocks[0][0] = 1
    blocks[1][5] = 1   # i (x) i in the b-block
    blocks[3][0] = 1
    path = write(tmp_path, "bad.json",
                 {"field": "p=5", "B": [2, -1], "C": [1, 2], "blocks": blocks})
    assert main(["decompose", path]) == 1


def test_lift_dim3(tmp_path, capsys):
    # identity isometry of B_0 for B = (2, -1) over F5
    path = write(tmp_path, "iso.json", {
        "field": "p=5",
        "gram": [[-2, 0, 0], [0, 1, 0], [0, 0, -2]],
        "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    })
    assert main(["lift", path, "--model", "dim3", "--B", "2,-1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["model"] == "dim3"


def test_lift_dim6d1(tmp_path, capsys):
    from isogeny_kit.exactfield import GF
    from isogeny_kit.algebras import BiquatAlg, QuatAlg
    from isogeny_kit.quadforms import random_isometry
    import random
    field = GF(5)
    algebra = BiquatAlg(QuatAlg(field, 2, -1), QuatAlg(field, 1, 2))
    space = algebra.albert_space()
    t = random_isometry(space, random.Random(0), special=True)
    path = write(tmp_path, "iso6.json", {
        "field": "p=5",
        "gram": [[repr(e) for e in row] for row in space.gram.rows],
        "matrix": [[repr(e) for e in row] for row in t.matrix.rows],
    })
    assert main(["lift", path, "--model", "dim6d1", "--B", "2,-1",
                 "--C", "1,2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["model"] == "dim6d1"


def test_census_cli(tmp_path, capsys):
    out = str(tmp_path / "census.json")
    assert main(["census", "3", "3", "--out", out]) == 0
    text = capsys.readouterr().out
    assert "24" in text
    data = json.loads(open(out).read())
    assert data["field"] == "p=3"
    rows = {(r["dim"], r["disc"]): r for r in data["rows"]}
    assert rows[(3, "1")]["SO"] == 24


def test_console_entry_point():
    proc = subprocess.run(RUN + ["verify", "Sadjt", "--field", "p=3",
                                 "--trials", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "Sadjt" in proc.stdout
