import json
import subprocess
import sys

import pytest

from linord.classes import parse_class, verify_witness, witness_from_json
from linord.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rel_fails_exit_2(capsys):
    code, out, _ = run(capsys, "rel", "--class", "le:n:2", "z*3", "(z+1)*3")
    assert code == 2
    assert out.startswith("Fails")


def test_rel_modes(capsys):
    assert run(capsys, "rel", "--embed", "w", "z")[0] == 0
    assert run(capsys, "rel", "--convex", "z*2", "z+1+z")[0] == 2
    assert run(capsys, "rel", "--bi", "--class", "fin", "z", "z")[0] == 0
    assert run(capsys, "rel", "--class", "le:n:2", "z*3", "z+1+z*2")[0] == 0


def test_ccs_witness_json(capsys):
    code, out, _ = run(capsys, "--json", "ccs", "le:n:3", "--witness")
    assert code == 2
    data = json.loads(out)
    assert data["verdict"] == "fails"
    assert (data["indexOrder"], data["host"], data["sum"]) == ("2", "3", "4")
    assert data["verified"] is True
    assert verify_witness(parse_class("le:n:3"), witness_from_json(data))


@pytest.mark.parametrize("cls", ["le:n:2", "le:n:6", "lt:ord:w*2", "lt:ord:w^2+w", "lt:ord:w^3*2+1"])
def test_ccs_json_round_trip(capsys, cls):
    code, out, _ = run(capsys, "ccs", cls, "--witness", "--json")
    assert code == 2
    assert verify_witness(parse_class(cls), witness_from_json(json.loads(out)))


def test_ccs_holds(capsys):
    assert run(capsys, "ccs", "fin")[0] == 0
    assert run(capsys, "ccs", "lt:ord:w+1")[0] == 0


def test_ccs_search(capsys, monkeypatch):
    code, out, _ = run(capsys, "--json", "ccs-search", "le:n:2", "--budget", "100")
    assert code == 2 and json.loads(out)["sum"] == "3"
    monkeypatch.setenv("LINORD_BUDGET", "50")
    assert run(capsys, "ccs-search", "fin")[0] == 3
    monkeypatch.setenv("LINORD_BUDGET", "lots")
    assert run(capsys, "ccs-search", "fin")[0] == 1


def test_rank(capsys):
    code, out, _ = run(capsys, "rank", "zpow(2)")
    assert code == 0 and out.strip() == "2"
    code, out, _ = run(capsys, "--json", "rank", "w^2+1")
    assert code == 0 and json.loads(out)["value"] == "3"
    assert run(capsys, "rank", "q")[0] == 3


def test_member_and_iso(capsys):
    assert run(capsys, "member", "scat", "q")[0] == 2
    assert run(capsys, "member", "lt:ord:w^2", "w*5+3")[0] == 0
    assert run(capsys, "iso", "w*+w", "z")[0] == 0
    assert run(capsys, "iso", "z+z", "z")[0] == 2


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "cong", "w", "q")
    assert code == 0 and out.strip() == "(1+z*w+1)*q"
    code, out, _ = run(capsys, "--json", "construct", "coloured", "ab")
    assert json.loads(out)["value"]["term"] == "shuffle(3)+q+shuffle(4)+q"
    assert run(capsys, "construct", "threshold", "w", "w*2")[0] == 1
    assert run(capsys, "construct", "nope")[0] == 1


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "ishuffle", "0", "1")
    assert code == 0 and out.strip() == "ishuffle(0,1)"
    code, out, _ = run(capsys, "gen", "shuffle", "|01")
    assert code == 0 and out.strip() == "shuffle(per:|01)"
    a = run(capsys, "--seed", "4", "gen", "random", "3")[1]
    b = run(capsys, "--seed", "4", "gen", "random", "3")[1]
    assert a == b and len(a.split()) == 3


def test_probe_transitivity(capsys, tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("# the standard triple\nz*3\nz+1+z*2\n(z+1)*3\n")
    code, out, _ = run(capsys, "--json", "probe-transitivity", "le:n:2", "--corpus", str(corpus))
    assert code == 2
    assert json.loads(out)["violations"] == [["z*3", "z+1+z*2", "(z+1)*3"]]
    assert run(capsys, "probe-transitivity", "fin", "--corpus", str(corpus))[0] == 0
    assert run(capsys, "probe-transitivity", "fin", "--corpus", str(tmp_path / "missing"))[0] == 1


def test_errors(capsys):
    code, _, err = run(capsys, "iso", "z++", "z")
    assert code == 1 and "column 3" in err
    assert run(capsys, "member", "le:q", "1")[0] == 1
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys)[0] == 1


def test_exit_code_depends_only_on_verdict(capsys):
    for argv in (["iso", "z", "z"], ["rel", "--embed", "w*", "w"], ["rel", "--class", "wo", "z*w", "z*w+z*w"]):
        code, out, _ = run(capsys, "--json", *argv)
        assert code == {"holds": 0, "fails": 2, "unknown": 3}[json.loads(out)["verdict"]]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "linord.cli", "rel", "--class", "le:n:2", "z*3", "(z+1)*3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
