import json
import subprocess
import sys

import pytest

from toralcs import cli
from toralcs.cyclo import Phase, PhaseArray
from toralcs.disc import DiscGroup
from toralcs.exactlin import e8_cartan


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
    return str(p)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def golden_file(tmp_path):
    return write(tmp_path, "k.json", {"entries": [[2, 1], [1, 2]]})


# -- analyze -------------------------------------------------------------------


def test_analyze_golden(capsys, golden_file):
    code, out, err = run(capsys, "analyze", golden_file, "--json")
    assert code == 0 and err == ""
    rep = json.loads(out)
    assert rep["det"] == 3
    assert rep["invariant_factors"] == [3]
    assert rep["q"] == ["0/1", "2/3", "2/3"]
    assert rep["omega"] == [["0/1", "0/1", "0/1"], ["0/1", "4/3", "2/3"], ["0/1", "2/3", "4/3"]]
    assert rep["genus1"]["t"] == ["0/1", "2/3", "2/3"]
    assert rep["genus1"]["norm"] == {"base": 3, "half_exponent": -1}
    assert rep["c_mod8"] == 2 and rep["gauss_milgram_verified"]
    assert rep["dimensions"] == {"0": 1, "1": 3, "2": 9, "3": 27}
    assert rep["cylinder_factors"]["1"] == {"base": 3, "half_exponent": 1}
    assert rep["z_s3"] == {"base": 3, "half_exponent": -1}
    assert rep["modular_relations"] == {"s2_is_charge_conjugation": True, "st_cubed_matches": True}
    assert rep["signature"] == {"n_plus": 2, "n_minus": 0, "n_zero": 0, "sigma": 2}


def test_analyze_round_trips_phases(capsys, golden_file):
    _, out, _ = run(capsys, "analyze", golden_file)
    rep = json.loads(out)
    G = DiscGroup(cli.validate_k_matrix(rep["k"]["entries"]))
    assert PhaseArray.from_strings(rep["omega"]).same_phases(G.omega_table())
    assert all(str(Phase.from_string(s)) == s for s in rep["q"])


def test_analyze_genus_max(capsys, golden_file):
    _, out, _ = run(capsys, "analyze", golden_file, "--genus-max", "5")
    assert json.loads(out)["dimensions"]["5"] == 243


def test_analyze_is_deterministic(capsys, golden_file):
    first = run(capsys, "analyze", golden_file)[1]
    assert run(capsys, "analyze", golden_file)[1] == first


def test_analyze_table(capsys, golden_file):
    code, out, _ = run(capsys, "analyze", golden_file, "--table")
    assert code == 0
    assert "G = Z/3" in out
    assert "w^2" in out
    assert "Z(S^3) = 3^(-1/2)" in out


def test_analyze_e8(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", write(tmp_path, "e8.json", {"entries": [list(r) for r in e8_cartan()]}))
    rep = json.loads(out)
    assert code == 0
    assert rep["order"] == 1 and rep["invariant_factors"] == []
    assert rep["c_mod8"] == 0
    assert set(rep["dimensions"].values()) == {1}


def test_analyze_odd_diagonal(capsys, tmp_path):
    code, out, err = run(capsys, "analyze", write(tmp_path, "odd.json", {"entries": [[1]]}))
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "OddDiagonal"


@pytest.mark.parametrize(
    "payload",
    ["not json", {"rows": [[2]]}, {"entries": [[2.5]]}, {"entries": "x"}, {"entries": [[True]]}],
)
def test_analyze_parse_errors(capsys, tmp_path, payload):
    code, _, err = run(capsys, "analyze", write(tmp_path, "bad.json", payload))
    assert code == 3
    assert json.loads(err)["error"] == "ParseError"


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "analyze", str(tmp_path / "absent.json"))
    assert code == 3


def test_capacity(capsys, golden_file, monkeypatch):
    code, _, err = run(capsys, "analyze", golden_file, "--cap", "2")
    assert code == 4 and json.loads(err)["error"] == "CapacityExceeded"
    monkeypatch.setenv("KMATRIX_CAP", "2")
    assert run(capsys, "analyze", golden_file)[0] == 4


def test_not_symmetric_and_degenerate(capsys, tmp_path):
    assert run(capsys, "analyze", write(tmp_path, "a.json", {"entries": [[2, 1], [0, 2]]}))[0] == 2
    assert run(capsys, "analyze", write(tmp_path, "b.json", {"entries": [[2, 2], [2, 2]]}))[0] == 2


# -- modular and reconstruct -----------------------------------------------------


def test_modular_then_reconstruct(capsys, tmp_path, golden_file):
    code, out, _ = run(capsys, "modular", golden_file)
    assert code == 0
    md = write(tmp_path, "m.json", out)
    code, out, _ = run(capsys, "reconstruct", md)
    assert code == 0
    rep = json.loads(out)
    assert rep["order"] == 3 and rep["invariant_factors"] == [3]
    assert rep["q"] == ["0/1", "2/3", "2/3"]
    assert rep["c_mod8"] == 2


def test_modular_genus_two(capsys, golden_file):
    _, out, _ = run(capsys, "modular", golden_file, "--genus", "2")
    data = json.loads(out)
    assert len(data["labels"]) == 9 and data["norm"] == {"base": 3, "half_exponent": -2}


def test_reconstruct_trivial(capsys, tmp_path):
    f = write(tmp_path, "t.json", {"omega": [["0/1"]], "t": ["0/1"], "norm": {"base": 1, "half_exponent": 0}})
    code, out, _ = run(capsys, "reconstruct", f)
    assert code == 0 and json.loads(out)["order"] == 1


def test_reconstruct_corrupted(capsys, tmp_path):
    data = {
        "omega": [["0/1", "0/1", "0/1"], ["0/1", "4/3", "0/1"], ["0/1", "2/3", "4/3"]],
        "t": ["0/1", "2/3", "2/3"],
        "norm": {"base": 3, "half_exponent": -1},
    }
    code, _, err = run(capsys, "reconstruct", write(tmp_path, "c.json", data))
    assert code == 5 and json.loads(err)["error"] == "NotClosed"
    data["omega"][1][2] = "2/3"
    data["t"][2] = "0/1"
    code, _, err = run(capsys, "reconstruct", write(tmp_path, "p.json", data))
    assert code == 5 and json.loads(err)["error"] == "PolarizationViolation"
    data["norm"]["base"] = 2
    assert run(capsys, "reconstruct", write(tmp_path, "n.json", data))[0] == 5


def test_reconstruct_parse_error(capsys, tmp_path):
    assert run(capsys, "reconstruct", write(tmp_path, "x.json", {"omega": [["a/b"]]}))[0] == 3


# -- equiv -----------------------------------------------------------------------


def test_equiv(capsys, tmp_path, golden_file):
    other = write(tmp_path, "k2.json", {"entries": [[2, -1], [-1, 2]]})
    code, out, _ = run(capsys, "equiv", golden_file, other)
    assert code == 0
    assert json.loads(out) == {"equivalent": True, "phi": [[1]], "sigma_mod8": [2, 2]}

    neg = write(tmp_path, "neg.json", {"entries": [[-2, -1], [-1, -2]]})
    code, out, err = run(capsys, "equiv", golden_file, neg)
    rep = json.loads(out)
    assert code == 0 and rep["equivalent"] is False
    assert rep["reason"] == "CentralChargeMismatch"
    assert json.loads(err)["reasons"][0] == "CentralChargeMismatch"


def test_equiv_self_gives_identity(capsys, golden_file):
    _, out, _ = run(capsys, "equiv", golden_file, golden_file)
    assert json.loads(out)["phi"] == [[1]]


# -- maslov ----------------------------------------------------------------------


def test_maslov_triple(capsys, tmp_path):
    f = write(
        tmp_path,
        "m.json",
        {"dim": 2, "lagrangians": [[[1, 0]], [[0, 1]], [[1, 1]]], "k": {"entries": [[2, 1], [1, 2]]}},
    )
    code, out, _ = run(capsys, "maslov", f)
    assert code == 0
    assert json.loads(out) == {"mu_sigma": -1, "mu_k": -2, "phase": "3/2"}


def test_maslov_repeated(capsys, tmp_path):
    f = write(tmp_path, "m.json", {"form": [[0, 1], [-1, 0]], "lagrangians": [[[1, 0]]] * 3})
    assert json.loads(run(capsys, "maslov", f)[1]) == {"mu_sigma": 0}


def test_maslov_quadruple(capsys, tmp_path):
    f = write(tmp_path, "m.json", {"dim": 2, "lagrangians": [[[1, 0]], [[0, 1]], [[1, 1]], [[1, "-1/2"]]]})
    rep = json.loads(run(capsys, "maslov", f)[1])
    assert rep["cocycle_sum"] == 0
    assert set(rep["indices"]) == {"123", "124", "134", "234"}


def test_maslov_errors(capsys, tmp_path):
    f = write(tmp_path, "a.json", {"dim": 2, "lagrangians": [[[1, 0], [0, 1]], [[1, 0]], [[0, 1]]]})
    code, _, err = run(capsys, "maslov", f)
    assert code == 2 and json.loads(err)["error"] == "NotLagrangian"
    assert run(capsys, "maslov", write(tmp_path, "b.json", {"dim": 3, "lagrangians": []}))[0] == 3
    assert run(capsys, "maslov", write(tmp_path, "c.json", {"dim": 2, "lagrangians": [[[1, 0]]]}))[0] == 3


# -- selftest --------------------------------------------------------------------


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("PASS")
    for suite in ("golden", "unitarity", "reconstruction", "equivalence", "maslov"):
        assert f"PASS {suite}:" in out


def test_selftest_catches_inverted_bicharacter(capsys, monkeypatch):
    original_table = DiscGroup.omega_table
    original_pair = DiscGroup.bicharacter
    monkeypatch.setattr(DiscGroup, "omega_table", lambda self, cap=None: original_table(self, cap).conjugate())
    monkeypatch.setattr(DiscGroup, "bicharacter", lambda self, u, v: original_pair(self, u, v).conjugate())
    code, out, _ = run(capsys, "selftest")
    assert code != 0
    assert "FAIL golden" in out


def test_module_entry_point(golden_file):
    proc = subprocess.run(
        [sys.executable, "-m", "toralcs", "analyze", golden_file, "--table"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and "Z/3" in proc.stdout


def test_phase_symbols():
    from fractions import Fraction

    assert cli.phase_symbol(Phase(0)) == "1"
    assert cli.phase_symbol(Phase(1)) == "-1"
    assert cli.phase_symbol(Phase(Fraction(1, 2))) == "i"
    assert cli.phase_symbol(Phase(Fraction(2, 3))) == "w"
    assert cli.phase_symbol(Phase(Fraction(1, 12))) == "z24^1"
    assert cli.phase_symbol(Phase(Fraction(2, 5))) == "2/5"
