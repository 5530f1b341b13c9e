"""End-to-end command line behavior, run in process."""

import json

import pytest

from invar.chern import chern_invariant
from invar.cli import main
from invar.invariants import monomial_invariant
from invar.monomials import PHI, PSI, scalar_monomial
from invar.solver import Decomposition

SQ = monomial_invariant(scalar_monomial(PHI, ((2, 0), (0, 2))))


def write_inv(tmp_path, inv, name="inv.json"):
    path = tmp_path / name
    path.write_text(json.dumps(inv.to_json_dict()))
    return str(path)


def report_lines(out):
    rows = [json.loads(line) for line in out.strip().splitlines()]
    for row in rows:
        assert set(row) == {"check", "status", "lhs", "rhs", "dim", "seed"}
    return rows


def test_bergman_fubini_study_chain(capsys):
    assert main(["bergman", "--dim", "1", "--fubini-study", "--order", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["a_0 = 1", "a_1 = 1", "a_2 = 0", "a_3 = 0"]
    assert main(["bergman", "--dim", "2", "--fubini-study", "--order", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["a_0 = 1", "a_1 = 3", "a_2 = 2", "a_3 = 0"]


def test_bergman_json_format(capsys):
    assert (
        main(
            [
                "bergman",
                "--dim",
                "1",
                "--fubini-study",
                "--order",
                "1",
                "--format",
                "json",
            ]
        )
        == 0
    )
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 1 and payload["order"] == 1
    assert payload["coefficients"][0] == {"re": "1", "im": "0"}
    assert payload["coefficients"][1] == {"re": "1", "im": "0"}


def test_bergman_symbolic_json_lists_monomials(capsys):
    assert (
        main(
            [
                "bergman",
                "--dim",
                "1",
                "--symbolic",
                "--order",
                "1",
                "--format",
                "json",
            ]
        )
        == 0
    )
    payload = json.loads(capsys.readouterr().out)
    a1 = payload["coefficients"][1]
    assert isinstance(a1, list) and a1
    assert all("monomial" in t and "re" in t and "im" in t for t in a1)


def test_bergman_truncation_audit(capsys, monkeypatch):
    monkeypatch.setenv("INVAR_TRUNCATION_AUDIT", "1")
    assert main(["bergman", "--dim", "1", "--fubini-study", "--order", "2"]) == 0
    assert "truncation audit passed" in capsys.readouterr().err


def test_verify_a1_exact(capsys):
    assert main(["verify", "a1", "--dim", "2"]) == 0
    captured = capsys.readouterr()
    assert "a1 == S/2: exact [1 checks: ok]" in captured.err
    rows = report_lines(captured.out)
    assert len(rows) == 1
    assert rows[0]["check"] == "a1" and rows[0]["status"] == "ok"
    assert rows[0]["dim"] == 2


def test_verify_roundtrip_suite(capsys):
    assert main(["verify", "roundtrip", "--trials", "3", "--seed", "4"]) == 0
    captured = capsys.readouterr()
    rows = report_lines(captured.out)
    assert len(rows) == 3
    assert all(r["status"] == "ok" for r in rows)
    assert "decompose/verify round-trip [3 checks: ok]" in captured.err


def test_decompose_chern_combination(tmp_path, capsys):
    path = write_inv(tmp_path, chern_invariant((2,)))
    assert main(["decompose", path]) == 0
    captured = capsys.readouterr()
    assert "decomposed: witness verified exactly" in captured.err
    dec = Decomposition.from_json_dict(json.loads(captured.out))
    assert dec.chern == {(2,): 1}
    assert not dec.t_hol and not dec.t_anti


def test_decompose_rejects_non_coexact(tmp_path, capsys):
    path = write_inv(tmp_path, SQ)
    assert main(["decompose", path]) == 1
    err = capsys.readouterr().err
    assert "not co-exact" in err
    residue_line = [l for l in err.splitlines() if l.startswith("{")]
    assert residue_line
    residue = json.loads(residue_line[0])
    assert residue["terms"][0]["monomial"]["kind"] == PSI
    assert residue["terms"][0]["monomial"]["edges"] == [[4]]


def test_chern_then_decompose(tmp_path, capsys):
    out = tmp_path / "chern.json"
    assert main(["chern", "--partition", "2,1", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["decompose", str(out)]) == 0
    dec = Decomposition.from_json_dict(json.loads(capsys.readouterr().out))
    assert dec.chern == {(2, 1): 1}


def test_canon_is_stable(tmp_path, capsys):
    mono = scalar_monomial(PHI, ((2, 0), (1, 1)))
    raw = {
        "valence": [0, 0],
        "terms": [
            {"monomial": mono.to_json_dict(), "coeff": "1"},
            {
                "monomial": mono.apply_permutation((1, 0)).to_json_dict(),
                "coeff": "1",
            },
        ],
    }
    path = tmp_path / "raw.json"
    path.write_text(json.dumps(raw))
    assert main(["canon", str(path)]) == 0
    first = capsys.readouterr().out
    parsed = json.loads(first)
    assert len(parsed["terms"]) == 1
    assert parsed["terms"][0]["coeff"] == "2/1"
    # canonical output is a fixed point, byte for byte
    path.write_text(first)
    assert main(["canon", str(path)]) == 0
    assert capsys.readouterr().out == first


def test_out_flag_writes_file(tmp_path, capsys):
    path = write_inv(tmp_path, chern_invariant((1,)))
    target = tmp_path / "canon.json"
    assert main(["canon", path, "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text()) == chern_invariant((1,)).to_json_dict()


def test_oracle_formal_zero(tmp_path, capsys):
    path = write_inv(tmp_path, chern_invariant((2,)))
    assert main(["oracle", path, "--dim", "2", "--trials", "3"]) == 0
    captured = capsys.readouterr()
    rows = report_lines(captured.out)
    assert len(rows) == 3
    assert all(r["status"] == "ok" and r["lhs"] == "0" for r in rows)
    assert "formally zero; 3 trials evaluated [3 checks: ok]" in captured.err


def test_oracle_nonzero_witness(tmp_path, capsys):
    path = write_inv(tmp_path, SQ)
    assert main(["oracle", path, "--dim", "1", "--trials", "4"]) == 0
    captured = capsys.readouterr()
    rows = report_lines(captured.out)
    trial_rows = [r for r in rows if r["check"] == "oracle-trial"]
    witness_rows = [r for r in rows if r["check"] == "oracle-witness"]
    assert len(trial_rows) == 4 and len(witness_rows) == 1
    assert all(r["rhs"] == "generically nonzero" for r in trial_rows)
    assert witness_rows[0]["status"] == "ok"
    assert "formally nonzero" in captured.err


def test_oracle_multilinear_input(tmp_path, capsys):
    pol = chern_invariant((2,)).polarize()
    path = write_inv(tmp_path, pol)
    assert main(["oracle", path, "--dim", "2", "--trials", "2"]) == 0
    rows = report_lines(capsys.readouterr().out)
    assert all(r["status"] == "ok" for r in rows)


def test_missing_file_is_input_error(tmp_path, capsys):
    assert main(["canon", str(tmp_path / "absent.json")]) == 2
    assert "error:" in capsys.readouterr().err


def test_malformed_json_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["decompose", str(path)]) == 2
    path.write_text(json.dumps({"valence": [0, 0]}))
    assert main(["canon", str(path)]) == 2
    capsys.readouterr()


def test_bad_partition_is_input_error(capsys):
    assert main(["chern", "--partition", "2,0"]) == 2
    assert main(["chern", "--partition", "x"]) == 2
    capsys.readouterr()


def test_unknown_arguments_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["oracle", "file.json"])
    assert exc.value.code == 2
