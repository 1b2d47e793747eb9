"""CLI surface: subcommands, exit codes, stdin handling."""

import json

import pytest

from spectralcert.cli import RunConfig, _bipartition, main
from spectralcert.errors import GraphInputError
from spectralcert.families import matching_extremal
from spectralcert.graphs import (
    complete_graph,
    cycle_graph,
    disjoint_union,
    path_graph,
    to_graph6,
)


def _g6(g):
    return to_graph6(g).decode()


def test_run_config_validation():
    RunConfig()
    with pytest.raises(GraphInputError):
        RunConfig(tolerance=1e-6, margin=1e-8)
    with pytest.raises(GraphInputError):
        RunConfig(workers=0)
    with pytest.raises(GraphInputError):
        RunConfig(caps={"win_n_cap": 0, "brute_matching_cap": 8})


def test_spectral_subcommand(capsys):
    assert main(["spectral", _g6(complete_graph(4))]) == 0
    out = capsys.readouterr().out
    assert "rho_a=3" in out
    assert "hong=3" in out
    assert "das=6" in out


def test_spectral_from_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(f"{_g6(path_graph(3))}\n\n{_g6(complete_graph(2))}\n"))
    assert main(["spectral", "-", "--a", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2


def test_closed_form_subcommand(capsys):
    assert main(["closed-form", "rho", "--n", "3", "--delta", "1"]) == 0
    out = capsys.readouterr().out
    assert "value=2.0" in out
    diff = float(out.split("difference=")[1].strip())
    assert diff <= 1e-8


def test_gen_family_roundtrip(capsys):
    assert main(["gen-family", "matching", "--n", "3", "--s", "1"]) == 0
    line = capsys.readouterr().out.strip()
    assert line == _g6(matching_extremal(3, 1).to_graph())
    assert main(["gen-family", "ktree", "--n", "8", "--k", "3"]) == 0
    assert main(["gen-family", "win", "--s", "2", "--parts", "3,1,1"]) == 0


def test_gen_family_to_file(tmp_path, capsys):
    out = tmp_path / "fam.g6"
    assert main(["gen-family", "ktree", "--n", "8", "--k", "3", "--out", str(out)]) == 0
    capsys.readouterr()
    assert out.read_text().strip()


def test_certify_matching_hall_violator(capsys):
    g6 = _g6(matching_extremal(3, 1).to_graph())
    assert main(["certify", "matching", g6]) == 0
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["type"] == "hall_violator"
    assert len(payload["data"]) == 2


def test_certify_ktree(capsys):
    assert main(["certify", "ktree", "--k", "2", _g6(path_graph(5))]) == 0
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["type"] == "ktree"
    assert len(payload["data"]) == 4


def test_certify_ktree_absent_prints_null(capsys):
    from spectralcert.families import ktree_extremal

    assert main(["certify", "ktree", "--k", "3", _g6(ktree_extremal(8, 3))]) == 0
    assert capsys.readouterr().out.strip() == "null"


def test_certify_win(capsys):
    from spectralcert.families import ktree_extremal

    assert main(["certify", "win", "--k", "3", _g6(ktree_extremal(8, 3))]) == 0
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload == {"type": "win_violator", "data": [0]}


def test_quotient_subcommand(capsys):
    assert main(["quotient", "--n", "3", "--s", "1", "--a", "0"]) == 0
    out = capsys.readouterr().out
    assert "lambda1=2.0" in out


def test_verify_bounds_exit_zero(capsys):
    assert main(["verify", "bounds", "--min-n", "1", "--max-n", "5"]) == 0
    assert "violated=0" in capsys.readouterr().out


def test_verify_report_and_csv(tmp_path, capsys):
    report = tmp_path / "r.json"
    rows = tmp_path / "r.csv"
    code = main(["verify", "hamilton-rho", "--min-n", "4", "--max-n", "5",
                 "--report", str(report), "--csv", str(rows)])
    capsys.readouterr()
    assert code == 0
    payload = json.loads(report.read_text())
    assert payload["counts"]["violated"] == 0
    assert rows.read_text().splitlines()[0].startswith("graph6,")


def test_verify_matching_small(capsys):
    assert main(["verify", "matching", "--nx", "3", "--delta", "1", "--a", "0"]) == 0
    assert "violated=0" in capsys.readouterr().out


def test_verify_stream_from_file(tmp_path, capsys):
    stream = tmp_path / "in.g6"
    stream.write_text(f"{_g6(complete_graph(5))}\n{_g6(cycle_graph(5))}\n")
    assert main(["verify", "bounds", "--stream", str(stream)]) == 0
    assert "checked=2" in capsys.readouterr().out


def test_usage_errors_exit_one(capsys):
    assert main([]) == 1
    assert main(["verify", "nonsense"]) == 1
    assert main(["spectral", "not-a-graph6-\x01"]) == 1
    assert main(["closed-form", "rho", "--n", "3", "--delta", "9"]) == 1
    capsys.readouterr()


def test_violation_exit_code_mapping():
    # honest harnesses cannot violate, so check the mapping at the report level
    from spectralcert.verify import VerificationReport

    report = VerificationReport(
        theorem_id="t", population="p",
        counts={"checked": 1, "vacuous": 0, "confirmed": 0,
                "extremal_equality": 0, "violated": 1},
        violations=[{"graph6": "A_"}], tolerances={}, seed=None, config={})
    assert not report.ok


def test_bipartition_recovers_parts():
    b = matching_extremal(4, 1)
    rebuilt = _bipartition(b.to_graph())
    assert rebuilt.nx == rebuilt.ny == 4
    assert rebuilt.m == b.m


def test_bipartition_balances_components():
    # K_{1,2} plus K_{2,1}: balanced only with opposite orientations
    g = disjoint_union([complete_graph(1), complete_graph(1)])  # placeholder
    from spectralcert.graphs import build_graph

    g = build_graph(6, [(0, 1), (0, 2), (3, 4), (3, 5)])
    b = _bipartition(g)
    assert b.nx == b.ny == 3


def test_bipartition_rejects_odd_cycles_and_imbalance():
    with pytest.raises(GraphInputError):
        _bipartition(cycle_graph(5))
    with pytest.raises(GraphInputError):
        _bipartition(path_graph(3))  # 2-1 split cannot balance
