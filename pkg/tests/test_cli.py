import json

import pytest

from workbench.cli.common import FAILED, OK, USAGE
from workbench.core.config import settings
from workbench.main import main


def _json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_rsa_keygen_from_primes(capsys):
    assert main(["rsa", "keygen", "--p", "11", "--q", "23", "--e", "3"]) == OK
    assert capsys.readouterr().out.strip() == "n=0xfd e=0x3 d=0x93 p=0xb q=0x17 phi=0xdc"


def test_caesar_golden(capsys):
    assert main(["classical", "caesar", "--key", "11", "--encrypt", "SUMMER"]) == OK
    assert capsys.readouterr().out.strip() == "DFXXPC"


def test_caesar_both_ways(capsys):
    assert main(["classical", "caesar", "--key", "3", "ATTACK"]) == OK
    assert main(["classical", "caesar", "--key", "3", "--decrypt", "DWWDFN"]) == OK
    assert capsys.readouterr().out.split() == ["DWWDFN", "ATTACK"]


def test_gmw_run_is_accepted(capsys):
    assert main(["zk", "gmw", "--vertices", "6", "--rounds", "20", "--seed", "42", "--json"]) == OK
    records = _json_lines(capsys.readouterr().out)
    assert len(records) == 21
    assert all(r["verdict"] for r in records[:-1])
    assert records[-1]["accepted"] is True
    assert records[-1]["seed"] == "0x2a"


def test_gmw_impostor_fails_with_exit_three(capsys):
    assert main(["zk", "gmw", "--impostor", "--rounds", "20", "--seed", "5", "--json"]) == FAILED
    assert _json_lines(capsys.readouterr().out)[-1]["accepted"] is False


def test_invalid_signature_exit_code(capsys):
    assert main(["rsa", "verify", "--n", "253", "--e", "3", "5", "5"]) == FAILED
    assert capsys.readouterr().out.strip() == "false"


@pytest.mark.parametrize("argv", [
    ["rsa", "nonsense"],
    ["rsa", "encrypt", "--n", "253", "--e", "3", "-7"],
    ["classical", "caesar", "--key", "30", "ABC"],
    ["zk", "gmw", "--rounds", "3"],
])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == USAGE


def test_missing_seed_is_explained(capsys):
    main(["zk", "fs", "--rounds", "3"])
    assert "--seed" in capsys.readouterr().err


def test_seed_from_environment_settings(monkeypatch, capsys):
    monkeypatch.setattr(settings, "WORKBENCH_SEED", 11)
    assert main(["zk", "fs", "--rounds", "4", "--json"]) == OK
    assert _json_lines(capsys.readouterr().out)[-1]["seed"] == "0xb"


def test_same_seed_same_output(capsys):
    argv = ["zk", "fs", "--bits", "32", "--rounds", "8", "--seed", "7", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_dh_transcript_to_file(tmp_path, capsys):
    path = tmp_path / "dh.jsonl"
    assert main(["protocol", "dh", "--seed", "3", "--out", str(path)]) == OK
    header = json.loads(path.read_text().splitlines()[0])
    assert header["type"] == "header" and header["seed"] == 3
    assert "transcript=" in capsys.readouterr().out


def test_runs_are_archived(monkeypatch, capsys):
    monkeypatch.setattr(settings, "ARCHIVE_RUNS", True)
    assert main(["classical", "caesar", "--key", "1", "HAL"]) == OK
    capsys.readouterr()
    assert main(["runs", "list", "--json", "--limit", "1000"]) == OK
    run = _json_lines(capsys.readouterr().out)[-1]
    run_id = str(int(run["id"], 16))
    assert run["subcommand"] == "classical"
    assert json.loads(run["argv"]) == ["classical", "caesar", "--key", "1", "HAL"]
    assert run["exit_code"] == "0x0"

    assert main(["runs", "show", run_id]) == OK
    assert "IBM" in capsys.readouterr().out
    assert main(["runs", "delete", run_id]) == OK
    capsys.readouterr()
    assert main(["runs", "show", run_id]) == FAILED
