import json
import subprocess
import sys

import pytest

from surgerykit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def ok(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return out


# documented examples


def test_classify(capsys):
    assert ok(capsys, "classify", "hopf+")["manifold"] == "#^3 CP2 # #^3 CP2bar"
    assert ok(capsys, "classify", "unknot")["manifold"] == "#^1 S2xS2"
    out = ok(capsys, "classify", "BR[3: ]")
    assert out["manifold"] == "#^5 S2xS2" and out["parity_vector"] == [0, 0, 0]


def test_alexander(capsys):
    assert ok(capsys, "alexander", "trefoil")["polynomial"] == "t - 1 + t^-1"
    assert ok(capsys, "alexander", "unknot")["polynomial"] == "1"
    assert ok(capsys, "alexander", "fig8")["polynomial"] == "-t + 3 - t^-1"
    out = ok(capsys, "alexander", "whitehead", "--raw")
    assert out["raw"] is True and out["variables"] == ["t1", "t2"]
    assert ok(capsys, "alexander", "trefoil", "--column", "2")["polynomial"] == "t - 1 + t^-1"


def test_group(capsys):
    out = ok(capsys, "group", "classes")
    assert out["order"] == 120 and out["class_count"] == 9
    assert sorted(c["order"] for c in out["classes"]) == sorted([1, 2, 4, 10, 5, 10, 5, 6, 3])
    assert sum(c["normal_generator"] for c in out["classes"]) == 7
    assert ok(capsys, "group", "conjugate", "y^-1 x^2", "x y")["conjugate"] is True
    assert ok(capsys, "group", "order-of", "x y")["order"] == 6
    assert ok(capsys, "group", "order")["order"] == 120
    assert ok(capsys, "group", "order", "--presentation", "< a | a^7 >")["order"] == 7


def test_scharlemann(capsys):
    out = ok(capsys, "scharlemann", "1", "x")
    assert out["status"] == "known" and out["manifold"] == "#^1 S2xS2 # #^1 S3xS1"
    assert ok(capsys, "scharlemann", "0", "x^2")["status"] == "open"
    assert ok(capsys, "scharlemann", "1", "x y")["status"] == "known"


def test_linking_parity_twist(capsys):
    assert ok(capsys, "linking", "hopf+")["linking_matrix"] == [[0, 1], [1, 0]]
    out = ok(capsys, "parity", "borromean")
    assert out["parity_vector"] == [0, 0, 0] and out["delta_class"]["class_count"] == 4
    out = ok(capsys, "twist", "BR[3: ]")
    assert out["braid"] == "BR[3: 1 2 1 2 1 2]"
    assert out["parity_before"] == out["parity_after"] == [0, 0, 0]
    assert out["manifold_before"] == out["manifold_after"] == "#^5 S2xS2"


def test_forms(capsys):
    h = '{"n": 2, "rows": [[0, 1], [1, 0]]}'
    d = '{"n": 2, "rows": [[1, 0], [0, -1]]}'
    assert ok(capsys, "forms", "invariants", h) == {"rank": 2, "signature": 0, "parity": "even",
                                                   "unimodular": True, "definiteness": "indefinite"}
    assert ok(capsys, "forms", "name", h)["manifold"] == "#^1 S2xS2"
    assert ok(capsys, "forms", "equivalent", h, d)["equivalent"] is False
    assert ok(capsys, "forms", "sum", h, d)["form"]["n"] == 4
    slid = ok(capsys, "forms", "slide", '{"n": 2, "rows": [[-1, 0], [0, 0]]}', "--i", "0", "--j", "1")
    assert slid["form"]["rows"] == [[-1, -1], [-1, -1]]
    assert ok(capsys, "forms", "e1")["manifold"] == "#^3 CP2 # #^11 CP2bar"


def test_forms_from_file(capsys, tmp_path):
    f = tmp_path / "h.json"
    f.write_text('{"n": 2, "rows": [[0, 1], [1, 0]]}')
    assert ok(capsys, "forms", "name", f"@{f}")["manifold"] == "#^1 S2xS2"


def test_sw(capsys):
    assert ok(capsys, "sw", "knot", "1", "t - 1 + t^-1")["sw"] == "t - 1 + t^-1"
    assert ok(capsys, "sw", "knot", "0", "t - 1 + t^-1")["sw"] == "0"
    assert ok(capsys, "sw", "link", "t1*t2 - t1 - t2 + 1", "1", "0")["sw"] == "0"
    assert ok(capsys, "sw", "link", "1", "1", "1")["sw"] == "1"


# exit codes


@pytest.mark.parametrize("argv", [
    ["classify", "PD[X(1,2,3)]"],
    ["alexander", "nonsense"],
    ["group", "conjugate", "x"],
    ["group", "order-of", "x z"],
    ["forms", "name", "not json"],
    ["forms", "sum", '{"n": 1, "rows": [[1]]}'],
    ["sw", "knot", "t^"],
])
def test_parse_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out is None
    assert "error" in json.loads(err)


@pytest.mark.parametrize("argv", [
    ["classify", "PD[X(1,2,3,4)]"],
    ["forms", "name", '{"n": 1, "rows": [[2]]}'],
    ["forms", "name", '{"n": 2, "rows": [[0, 1], [2, 0]]}'],
    ["twist", "BR[2: 1 1]"],
])
def test_invariant_errors_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3, err


def test_resource_limit_exit_4(capsys, monkeypatch):
    code, _, _ = run(capsys, "group", "order", "--presentation", "< a, b | >", "--max-cosets", "1000")
    assert code == 4
    monkeypatch.setenv("SURGERYKIT_MAX_COSETS", "50")
    code, _, _ = run(capsys, "group", "order")
    assert code == 4


# corpus and determinism


def test_golden_corpus(capsys, corpus):
    for entry in corpus.values():
        exp = entry.expected
        if "classification" in exp:
            assert ok(capsys, "classify", entry.name)["manifold"] == exp["classification"]
        if "alexander" in exp:
            assert ok(capsys, "alexander", entry.name)["polynomial"] == exp["alexander"]
        if "linking" in exp:
            assert ok(capsys, "linking", entry.name)["linking_matrix"] == exp["linking"]
        if "parity" in exp:
            assert ok(capsys, "parity", entry.name)["parity_vector"] == exp["parity"]


def test_corpus_override(capsys, tmp_path):
    f = tmp_path / "links.json"
    f.write_text(json.dumps({"links": [{"name": "mine", "braid": "BR[2: 1 1 1 1]"}]}))
    assert ok(capsys, "--corpus", str(f), "classify", "mine")["manifold"] == "#^3 S2xS2"
    code, _, _ = run(capsys, "--corpus", str(f), "classify", "hopf+")
    assert code == 2


def test_deterministic_output(capsys):
    for argv in (["group", "classes"], ["alexander", "borromean"], ["classify", "whitehead"]):
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first


def test_pretty_flag(capsys):
    main(["--pretty", "classify", "unknot"])
    out = capsys.readouterr().out
    assert out.count("\n") > 2
    main(["classify", "unknot"])
    assert capsys.readouterr().out.count("\n") == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "surgerykit", "classify", "hopf+"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["manifold"] == "#^3 CP2 # #^3 CP2bar"
    proc = subprocess.run([sys.executable, "-m", "surgerykit", "classify", "BR[2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
