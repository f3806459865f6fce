from typing import Any, Dict, Optional, Tuple

import json

import pytest

from puflock.cli import main

from puflock.model import load_model

def _run(capsys, *argv: str, environ: Optional[Dict[str, str]] = None) -> Tuple[int, Any, str]:
    code = main([ "--json", *map(str, argv) ], environ={ } if environ is None else environ)

    captured = capsys.readouterr()

    return code, json.loads(captured.out) if captured.out else None, captured.err

@pytest.fixture(name="workspace")
def fixture_workspace(tmp_path, capsys):
    assert _run(capsys, "gen-data", "--seed", 3, "--classes", 4, "--dim", 8, "--per-class", 50,
        "--out", tmp_path / "train.npz", "--test-out", tmp_path / "test.npz")[0] == 0

    code, result, _ = _run(capsys, "train", "--data", tmp_path / "train.npz", "--hidden", 32,
        "--epochs", 10, "--seed", 1, "--out", tmp_path / "model.nnbm")

    assert code == 0 and result["layers"] == 2

    return tmp_path

def _encrypt(capsys, workspace, *extra: str, environ: Optional[Dict[str, str]] = None) -> Tuple[int, Any, str]:
    return _run(capsys, "encrypt", "--model", workspace / "model.nnbm", "--layer", 1, "--pct", 20,
        "--seed", 5, "--out", workspace / "locked.nnbm", "--helper", workspace / "locked.nnhd",
        "--data", workspace / "test.npz", *extra, environ=environ)

def test_bound_model_only_runs_on_its_machine(capsys, workspace) -> None:
    code, encrypted, _ = _encrypt(capsys, workspace, "--machine-seed", 42)

    assert code == 0 and encrypted["encrypted_weights"] == [ 25 ]

    run = [ "run", "--model", workspace / "locked.nnbm", "--helper", workspace / "locked.nnhd",
        "--data", workspace / "test.npz" ]

    code, target, _ = _run(capsys, *run, "--machine-seed", 42)

    assert code == 0 and target["accuracy"] == encrypted["accuracy_before"]

    code, clone, _ = _run(capsys, *run, "--machine-seed", 43)

    assert code == 0 and clone["accuracy"] < target["accuracy"]

    code, from_env, _ = _run(capsys, *run, environ={ "PUFLOCK_MACHINE_SEED": "42" })

    assert code == 0 and from_env["accuracy"] == target["accuracy"]

    code, flag_wins, _ = _run(capsys, *run, "--machine-seed", 43, environ={ "PUFLOCK_MACHINE_SEED": "42" })

    assert flag_wins["accuracy"] == clone["accuracy"]

def test_human_output_has_four_decimals(capsys, workspace) -> None:
    assert main([ "encrypt", "--model", str(workspace / "model.nnbm"), "--layer", "1", "--pct", "20",
        "--machine-seed", "42", "--out", str(workspace / "locked.nnbm"),
        "--helper", str(workspace / "locked.nnhd"), "--data", str(workspace / "test.npz") ], environ={ }) == 0

    lines = capsys.readouterr().out.splitlines()

    assert lines[0] == "Encrypted weights = 25"
    assert lines[1].startswith("Accuracy before = ") and len(lines[1].split(" = ")[1]) == 6

def test_missing_machine_seed_is_refused(capsys, workspace) -> None:
    code, _, err = _encrypt(capsys, workspace)

    assert code == 5

    assert json.loads(err)["error"] == "missing_machine_seed"

    assert not (workspace / "locked.nnbm").exists()

    code, _, _ = _encrypt(capsys, workspace, environ={ "PUFLOCK_MACHINE_SEED": "not-a-seed" })

    assert code == 5

def test_error_categories_map_to_exit_codes(capsys, workspace) -> None:
    (workspace / "broken.nnbm").write_bytes(b"NNBM\x01")

    code, _, err = _run(capsys, "run", "--model", workspace / "broken.nnbm", "--helper", workspace / "x.nnhd",
        "--data", workspace / "test.npz", "--machine-seed", 1)

    assert code == 3 and json.loads(err)["error"] == "parse"

    assert _run(capsys, "gen-data", "--dim", 5, "--out", workspace / "narrow.npz")[0] == 0

    _encrypt(capsys, workspace, "--machine-seed", 42)

    code, _, err = _run(capsys, "run", "--model", workspace / "locked.nnbm", "--helper", workspace / "locked.nnhd",
        "--data", workspace / "narrow.npz", "--machine-seed", 42)

    assert code == 4 and json.loads(err)["error"] == "dimension"

    code, _, err = _run(capsys, "run", "--model", workspace / "missing.nnbm", "--helper", workspace / "locked.nnhd",
        "--data", workspace / "test.npz", "--machine-seed", 42)

    assert code == 7 and json.loads(err)["error"] == "io"

    code, _, err = _encrypt(capsys, workspace, "--machine-seed", 42, "--pct", 150)

    assert code == 6 and json.loads(err)["error"] == "configuration"

    assert _run(capsys, "encrypt", "--pct", "lots")[0] == 2

    assert _run(capsys, "frobnicate")[0] == 2

def test_plaintext_is_written_only_on_request(capsys, workspace) -> None:
    _encrypt(capsys, workspace, "--machine-seed", 42)

    decrypt = [ "decrypt", "--model", workspace / "locked.nnbm", "--helper", workspace / "locked.nnhd",
        "--data", workspace / "test.npz", "--machine-seed", 42 ]

    assert _run(capsys, *decrypt)[0] == 0

    assert sorted(path.name for path in workspace.iterdir()) == \
        [ "locked.nnbm", "locked.nnhd", "model.nnbm", "test.npz", "train.npz" ]

    code, _, err = _run(capsys, *decrypt, "--emit-plaintext", workspace / "plain.nnbm")

    assert code == 0 and "DECRYPTED" in err

    assert load_model(workspace / "plain.nnbm").bit_equal(load_model(workspace / "model.nnbm"))

def test_rebind_and_recorded_responses(capsys, workspace) -> None:
    _encrypt(capsys, workspace, "--machine-seed", 42)

    code, result, _ = _run(capsys, "rebind", "--model", workspace / "locked.nnbm",
        "--helper", workspace / "locked.nnhd", "--machine-seed", 42, "--new-machine-seed", 77,
        "--out", workspace / "moved.nnbm", "--helper-out", workspace / "moved.nnhd")

    assert code == 0 and result == { "rebound_weights": 25, "layer": 1 }

    run = [ "run", "--model", workspace / "moved.nnbm", "--helper", workspace / "moved.nnhd",
        "--data", workspace / "test.npz" ]

    _, baseline, _ = _run(capsys, "run", "--model", workspace / "locked.nnbm",
        "--helper", workspace / "locked.nnhd", "--data", workspace / "test.npz", "--machine-seed", 42)

    assert _run(capsys, *run, "--machine-seed", 77)[1]["accuracy"] == baseline["accuracy"]
    assert _run(capsys, *run, "--machine-seed", 42)[1]["accuracy"] < baseline["accuracy"]

    assert _run(capsys, "record-crps", "--machine-seed", 42, "--seed", 5, "--layer", 1, "--count", 25,
        "--out", workspace / "table.crp")[1] == { "recorded": 25 }

    code, _, _ = _run(capsys, "encrypt", "--model", workspace / "model.nnbm", "--layer", 1, "--pct", 20,
        "--seed", 5, "--crp-table", workspace / "table.crp", "--out", workspace / "offline.nnbm",
        "--helper", workspace / "offline.nnhd")

    assert code == 0

    assert (workspace / "offline.nnbm").read_bytes() == (workspace / "locked.nnbm").read_bytes()
    assert (workspace / "offline.nnhd").read_bytes() == (workspace / "locked.nnhd").read_bytes()

def test_experiments_write_reports(capsys, workspace) -> None:
    common = [ "--model", workspace / "model.nnbm", "--data", workspace / "test.npz", "--layer", 0,
        "--percentages", "0,10,20", "--trials", 2, "--machine-seed", 42 ]

    code, sweep, _ = _run(capsys, "sweep", *common, "--csv", workspace / "sweep.csv",
        "--json-out", workspace / "sweep.json")

    assert code == 0 and sweep["means"]["0.0"] == sweep["original_accuracy"]

    assert len((workspace / "sweep.csv").read_text(encoding="utf-8").splitlines()) == 1 + 6 + 3

    assert json.loads((workspace / "sweep.json").read_text(encoding="utf-8"))["kind"] == "sweep"

    code, clone, _ = _run(capsys, "clone-eval", *common, "--csv", workspace / "clone.csv")

    assert code == 0 and sorted(clone["means"]) == [ "clone-1", "clone-2", "encrypted", "target" ]

    assert clone["means"]["target"]["20.0"] == clone["original_accuracy"]

def test_puf_stats(capsys) -> None:
    code, stats, _ = _run(capsys, "--noise", 0.5, "--noise-seed", 1, "puf-stats", "--machine-seed", 9,
        "--pairs", 5, "--challenges", 200, "--repeats", 3)

    assert code == 0

    assert 0.4 <= stats["uniqueness"] <= 0.6 and 0.4 <= stats["balance"] <= 0.6

    assert 0.5 < stats["reliability"] < 1.0

def test_log_file(capsys, workspace) -> None:
    log = workspace / "puflock.log"

    code, _, _ = _run(capsys, "--log-level", "INFO", "--log-file", log, "encrypt", "--model", workspace / "model.nnbm",
        "--layer", 1, "--pct", 20, "--out", workspace / "locked.nnbm", "--helper", workspace / "locked.nnhd",
        "--machine-seed", 42)

    assert code == 0 and "encrypted 25 weights of layer 1" in log.read_text(encoding="utf-8")

    assert "\033[" not in log.read_text(encoding="utf-8")

    code, _, err = _run(capsys, "--log-file", workspace / "no" / "such" / "dir.log", "puf-stats", "--machine-seed", 1)

    assert code == 7 and json.loads(err)["error"] == "io"
