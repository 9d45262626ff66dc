"""Exit-code contract, JSON round-trips and subcommand wiring."""
import json

import numpy as np
import pytest

from submaj.cli import main
from submaj.matrices import StochMatrix
from submaj.preservers import TruncatedOperator
from submaj.relations import chain_product_from_parts, TTransformChain, TTransformStep


@pytest.fixture()
def files(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    return write, tmp_path


def test_check_weak_holds(files, capsys):
    write, _ = files
    f = write("f.json", {"dim": 2, "values": [0.3, 0.2]})
    g = write("g.json", {"dim": 2, "values": [1.0, 0.0]})
    assert main(["check", "--relation", "weak", f, g]) == 0
    assert "holds" in capsys.readouterr().out


def test_check_majorize_fails_with_named_index(files, capsys):
    write, _ = files
    f = write("f.json", {"dim": 2, "values": [0.3, 0.2]})
    g = write("g.json", {"dim": 2, "values": [1.0, 0.0]})
    assert main(["check", "--relation", "majorize", f, g]) == 1
    assert "position 2" in capsys.readouterr().out


def test_check_emits_witness_with_certificate(files):
    write, tmp = files
    f = write("f.json", {"dim": 2, "values": [0.5, 0.5]})
    g = write("g.json", {"dim": 2, "values": [2.0, 0.0]})
    out = tmp / "w.json"
    assert main(["check", "--relation", "sub", f, g, "--emit-witness", str(out)]) == 0
    payload = json.loads(out.read_text())
    witness = StochMatrix.from_json_dict(payload["witness"])
    assert np.max(np.abs(witness.data @ [2, 0] - [0.5, 0.5])) <= 1e-9
    assert payload["certificate"]["completion"]["class"] == "doubly-stochastic"


def test_check_json_output(files, capsys):
    write, _ = files
    f = write("f.json", {"dim": 1, "values": [1.0]})
    assert main(["--json", "check", "--relation", "weak", f, f]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["holds"] is True and payload["relation"] == "weak"


def test_malformed_json_is_input_error(files, capsys):
    _, tmp = files
    bad = tmp / "bad.json"
    bad.write_text("{not json")
    ok = tmp / "ok.json"
    ok.write_text(json.dumps({"dim": 1, "values": [1.0]}))
    assert main(["check", "--relation", "weak", str(bad), str(ok)]) == 2
    assert "malformed" in capsys.readouterr().err


def test_missing_file_is_input_error(files, capsys):
    write, _ = files
    ok = write("ok.json", {"dim": 1, "values": [1.0]})
    assert main(["check", "--relation", "weak", "/nonexistent.json", ok]) == 2


def test_negative_vector_is_input_error(files, capsys):
    write, _ = files
    bad = write("bad.json", {"dim": 2, "values": [1.0, -1.0]})
    assert main(["check", "--relation", "weak", bad, bad]) == 2
    assert "nonnegative" in capsys.readouterr().err


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2


def test_witness_chain_reconstructs(files, capsys):
    write, tmp = files
    f = write("f.json", {"dim": 3, "values": [1.0, 1.0, 1.0]})
    g = write("g.json", {"dim": 3, "values": [3.0, 0.0, 0.0]})
    out = tmp / "chain.json"
    assert main(["witness", f, g, "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    chain = TTransformChain(
        steps=tuple(TTransformStep(s["i"], s["j"], s["t"]) for s in payload["steps"]),
        pre_perm=tuple(payload["pre_perm"]),
        post_perm=tuple(payload["post_perm"]),
        product=StochMatrix.from_json_dict(payload["product"]),
    )
    assert len(chain.steps) <= 2
    assert np.max(np.abs(chain_product_from_parts(chain) - chain.product.data)) <= 1e-12


def test_witness_fails_when_relation_fails(files, capsys):
    write, _ = files
    f = write("f.json", {"dim": 2, "values": [2.0, 0.0]})
    g = write("g.json", {"dim": 2, "values": [1.0, 1.0]})
    assert main(["witness", f, g]) == 1
    assert "fails" in capsys.readouterr().err


def test_complete_doubly_stochastic_is_fixed_point(files, capsys):
    write, _ = files
    d = write("d.json", {"n": 2, "data": [0.5, 0.5, 0.5, 0.5]})
    assert main(["complete", d]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["completion"]["data"] == [0.5, 0.5, 0.5, 0.5]
    assert payload["steps"] == []


def test_complete_rejects_general_matrix(files, capsys):
    write, _ = files
    d = write("d.json", {"n": 2, "data": [0.6, 0.6, 0.6, 0.6]})
    assert main(["complete", d]) == 2
    assert "substochastic" in capsys.readouterr().err


def test_classify_accept_and_reject(files, capsys):
    write, _ = files
    good = write("good.json", {"rows": 3, "cols": 2, "entries": [[2, 1, 0.5], [3, 2, 0.5]]})
    bad = write("bad.json", {"rows": 3, "cols": 2, "entries": [[1, 1, 0.5], [1, 2, 0.9]]})
    assert main(["classify", "--space", "lp", good]) == 0
    assert main(["classify", "--space", "lp", bad]) == 1


def test_build_preserver_round_trip(files, capsys):
    write, tmp = files
    spec = write(
        "spec.json",
        {"p": 2.0, "weights": [0.5, 0.25], "injections": [[2, 3, 5], [4, 6, 9]]},
    )
    out = tmp / "t.json"
    assert main(["build-preserver", spec, "--rows", "9", "--cols", "3", "--out", str(out)]) == 0
    op = TruncatedOperator.from_json_dict(json.loads(out.read_text()))
    assert op.entries[(2, 1)] == 0.5 and op.entries[(9, 3)] == 0.25
    assert main(["classify", "--space", "lp", str(out)]) == 0


def test_preserve_test_identity_spec(files, capsys):
    write, _ = files
    spec = write("spec.json", {"p": 2.0, "weights": [1.0], "injections": [[1, 2, 3, 4, 5]]})
    assert main(["preserve-test", spec, "--trials", "20", "--dim", "5"]) == 0
    assert "20/20" in capsys.readouterr().out


def test_demo_shift_exact_window(files, capsys):
    assert main(["--json", "demo", "shift", "--n", "6"]) == 0
    payload = json.loads(capsys.readouterr().out)
    op = TruncatedOperator.from_json_dict(payload["forced"])
    expected = np.eye(6, k=-1)
    assert np.array_equal(op.to_dense(), expected)
    assert payload["fully_determined"] is True
    assert payload["conclusion"] == "equals-right-shift"
    assert "annotation" in payload


def test_demo_paper_matrix_t1(files, capsys):
    assert main(["--json", "demo", "paper-matrix", "--which", "T1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    op = TruncatedOperator.from_json_dict(payload["operator"])
    dense = op.to_dense()
    assert dense.shape == (16, 5)
    assert dense[1, 0] == 0.5 and dense[15, 0] == 0.03125 and dense[0].tolist() == [0] * 5


def test_demo_paper_matrix_custom_lambda(files, capsys):
    write, _ = files
    lam = write("lam.json", [0.9, 0.1])
    assert main(["--json", "demo", "paper-matrix", "--which", "T", "--lambda", lam, "--a", "0.4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    dense = TruncatedOperator.from_json_dict(payload["operator"]).to_dense()
    assert np.all(dense[0] == 0.4)
    assert dense[1, 0] == 0.9 and dense[3, 0] == 0.1


def test_demo_recip_square(files, capsys):
    assert main(["--json", "demo", "recip-square", "--n", "4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["partial_matched_support"] == [1, 2, 3]
    assert payload["weak_g_under_f_holds"] is True
    assert payload["weak_f_under_g_holds"] is False


def test_maj_tol_env_override(files, monkeypatch, capsys):
    write, _ = files
    f = write("f.json", {"dim": 2, "values": [1.0, 0.0]})
    g = write("g.json", {"dim": 2, "values": [1.0001, 0.0]})
    assert main(["check", "--relation", "majorize", f, g]) == 1
    monkeypatch.setenv("MAJ_TOL", "0.01")
    assert main(["check", "--relation", "majorize", f, g]) == 0


def test_selftest_passes_and_prints_per_criterion(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 13 and "[FAIL]" not in out


def test_bad_tolerance_combo_is_usage_error(files, capsys):
    write, _ = files
    f = write("f.json", {"dim": 1, "values": [1.0]})
    assert main(["--tol", "1e-13", "check", "--relation", "weak", f, f]) == 2
    assert "tol" in capsys.readouterr().err
