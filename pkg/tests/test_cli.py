import io
import json
import subprocess
import sys

import pytest

from lagquasimap.cli import run, CACHE_ENV


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_degree_lg2():
    assert call("degree", "0", "2")[:2] == (0, "2\n")


def test_hilbert_fixtures():
    assert call("hilbert", "barbell", "--quiet")[1] == "2w + 1\n"
    code, out, _ = call("hilbert", "diamond", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["degree"] == 4 and data["dimension"] == 2
    assert data["hilbert_polynomial"] == ["1", "3", "2"]


def test_hilbert_schubert():
    code, out, _ = call("hilbert", "0", "2", "--schubert", r"\bar21", "0", "--dual", "--format", "json")
    assert code == 0 and json.loads(out)["degree"] == 2


def test_verify_ok():
    code, out, _ = call("verify", "0", "2", "--points", "3")
    assert code == 0 and "PASS" in out


def test_verify_json():
    code, out, _ = call("verify", "1", "2", "--points", "2", "--format", "json")
    assert code == 0 and json.loads(out)["passed"] is True


def test_usage_errors():
    assert call()[0] == 2
    assert call("bogus")[0] == 2
    assert call("degree", "0")[0] == 2
    assert call("poset", "-1", "2")[0] == 2
    assert call("pieri", r"\bar22", "2")[0] == 2
    assert call("hilbert", "0", "2", "--dual")[0] == 2


def test_resource_cap():
    assert call("poset", "3", "6", "--max-elements", "10")[0] == 3
    assert call("straighten", "2", "4")[0] == 3


def test_pieri_commands():
    assert call("pieri", r"\bar21", "2")[1] == "2·σ[2,1]\n"
    assert call("qpieri", "2,1", "0", "2", "1")[1] == "1·σ[2,2] + 1·σ[]·q^1\n"
    assert call("schubert-degree", "[]", "1", "2")[1] == "8\n"
    code, out, _ = call("qpieri", r"\bar12", "0", "2", "1", "--format", "json")
    assert json.loads(out)["terms"] == [[[2, 2], 0, 1], [[], 1, 1]]


def test_structure_commands():
    code, out, _ = call("doset", "0", "2", "--format", "json")
    assert code == 0 and len(json.loads(out)["pairs"]) == 1
    code, out, _ = call("hasse", "1", "2", "--dot")
    assert out.startswith("digraph") and "black:invis:black" in out
    assert call("poset", "0", "2", "--format", "dot")[1].startswith("digraph")
    code, out, _ = call("normal-form", "0", "4")
    assert r"p[\bar2\bar112]^(0) = p[\bar4\bar334]" in out
    code, out, _ = call("straighten", "0", "2")
    assert code == 0 and "p[\\bar21,\\bar12]^(0)*p[\\bar21,\\bar12]^(0) =" in out


def test_eval_point():
    a = call("eval-point", "2", "1", "--seed", "3", "--format", "json")[1]
    b = call("eval-point", "2", "1", "--seed", "3", "--format", "json")[1]
    assert a == b
    assert len(json.loads(a)["coordinates"]) == 12


def test_determinism_and_sorted_json():
    for argv in (["doset", "1", "2", "--format", "json"], ["straighten", "1", "2", "--format", "json"],
                 ["normal-form", "1", "3", "--format", "json"]):
        a, b = call(*argv)[1], call(*argv)[1]
        assert a == b
        json.loads(a)


def test_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    first = call("hilbert", "1", "2", "--format", "json")[1]
    files = sorted(p.name for p in tmp_path.iterdir())
    assert any(f.startswith("doset-d1-n2-") for f in files)
    assert any(f.startswith("chains-d1-n2-") for f in files)
    assert call("hilbert", "1", "2", "--format", "json")[1] == first
    other = tmp_path / "other"
    assert call("degree", "0", "2", "--cache-dir", str(other))[1] == "2\n"
    assert other.exists()


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lagquasimap", "degree", "0", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "2\n"
