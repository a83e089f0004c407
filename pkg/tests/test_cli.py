import json
import subprocess
import sys

import pytest

from kronslocc.cli import dump_state, load_state, run
from kronslocc import ghz_state


def invoke(capsys, *argv):
    code = run([str(a) for a in argv])
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip() else None
    return code, doc, out.err


def test_invariants_ghz(capsys, fixtures):
    code, doc, _ = invoke(capsys, "invariants", fixtures / "ghz.json")
    assert code == 0
    assert doc["local_ranks"] == [2, 2, 2]
    assert doc["tensor_rank"] == 2
    assert doc["invariants"]["finite_divisors"] == [{"point": "0", "degrees": [1]}]
    assert doc["invariants"]["infinite_divisor_degrees"] == [1]


def test_canonical_regularized(capsys, fixtures):
    code, doc, _ = invoke(capsys, "canonical", fixtures / "ghz.json", "--regularize")
    assert code == 0
    assert doc["regularizing_lft"] == ["1", "1", "0", "1"]
    assert doc["invariants"]["infinite_divisor_degrees"] == []


def test_equiv_ghz_w(capsys, fixtures):
    code, doc, _ = invoke(capsys, "equiv", fixtures / "ghz.json", fixtures / "w.json")
    assert code == 1
    assert doc == {"equivalent": False, "reason": "elementary divisors"}


def test_equiv_verified_witness(capsys, fixtures, tmp_path):
    other = tmp_path / "other.json"
    other.write_text(json.dumps({"R": [["1", "0"], ["0", "1"]], "S": [["1", "0"], ["0", "-1"]]}))
    code, doc, _ = invoke(capsys, "equiv", fixtures / "ghz.json", other, "--verify")
    assert code == 0
    assert doc["equivalent"] and doc["verified"]


def test_classify_w(capsys, fixtures):
    code, doc, _ = invoke(capsys, "classify", fixtures / "w.json")
    assert code == 0
    assert "W" in doc["aliases"] and doc["tensor_rank"] == 3


def test_enumerate(capsys):
    code, doc, _ = invoke(capsys, "enumerate", "--dims", 2, 2, 4)
    assert code == 0 and doc["count"] == 9
    code, doc, _ = invoke(capsys, "enumerate", "--dims", 2, 4, 4)
    assert code == 2 and doc["infinite_families"]


def test_convert_and_obstruction(capsys, fixtures):
    code, doc, _ = invoke(capsys, "convert", fixtures / "ghz.json", fixtures / "prod.json", "--verify")
    assert code == 0 and doc["verdict"] == "Convertible" and doc["verified"]
    code, doc, _ = invoke(capsys, "convert", fixtures / "ghz.json", fixtures / "w.json")
    assert code == 1 and doc["reason"] == "tensor-rank"
    code, doc, _ = invoke(capsys, "convert", fixtures / "w.json", fixtures / "ghz.json")
    assert code == 1 and doc["reason"] == "local-rank"


def test_hierarchy_dot(capsys, tmp_path):
    dot = tmp_path / "h.dot"
    code, doc, _ = invoke(capsys, "hierarchy", "--dims", 2, 2, 2, "--budget", 100, "--verify", "--dot", dot)
    assert code == 0 and doc["verified"]
    assert len(doc["edges"]) == 11
    assert dot.read_text().startswith("digraph")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["frobnicate"], 64),
        (["enumerate", "--dims", "3", "2", "2"], 64),
        (["invariants", "{fixtures}/bad.json"], 65),
        (["invariants", "{fixtures}/missing.json"], 65),
        (["invariants", "{fixtures}/irr.json"], 70),
    ],
)
def test_exit_codes(capsys, fixtures, argv, code):
    got, _, err = invoke(capsys, *[a.format(fixtures=fixtures) for a in argv])
    assert got == code
    assert err


def test_irrational_spectrum_names_factor(capsys, fixtures):
    _, _, err = invoke(capsys, "invariants", fixtures / "irr.json")
    assert "irreducible factor" in err


def test_state_file_round_trip(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(dump_state(ghz_state())))
    assert load_state(str(path)) == ghz_state()


def test_module_entry_point(fixtures):
    proc = subprocess.run([sys.executable, "-m", "kronslocc", "classify", str(fixtures / "ghz.json")],
                          capture_output=True, text=True, check=True)
    assert "GHZ" in json.loads(proc.stdout)["aliases"]


def test_output_is_deterministic(capsys):
    first = invoke(capsys, "hierarchy", "--dims", 2, 2, 3, "--budget", 50)
    second = invoke(capsys, "hierarchy", "--dims", 2, 2, 3, "--budget", 50)
    assert first == second
