import json
import subprocess
import sys

import pytest

from leglab.cli import EXIT_DOMAIN, EXIT_OK, EXIT_RESOURCE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lfunction_text(capsys):
    code, out, _ = run(capsys, "lfunction", "--p", "3", "--q", "3", "--d", "4", "--verify", "3")
    assert code == EXIT_OK
    assert "1 - 9T^2" in out and "analytic rank 1" in out and "oracle OK" in out


def test_points_text(capsys):
    code, out, _ = run(capsys, "points", "--p", "3", "--f", "1", "--q", "9")
    assert code == EXIT_OK
    assert "2 points verified, Selmer dim 2, det 9, constraint 16" in out


def test_json_shape_and_determinism(capsys):
    args = ("rank", "--p", "7", "--qmod", "1 mod 39", "--d", "39", "--output", "json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    doc = json.loads(a)
    assert set(doc) == {"command", "params", "result", "checks"}
    assert doc["result"]["rank"] == 36


def test_csv_flattens_checks(capsys):
    code, out, _ = run(capsys, "correspondence", "--p", "5", "--q", "5", "--d", "4", "--output", "csv")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "command,name,status,details"
    assert all(line.startswith("correspondence,") for line in lines[1:])


def test_balanced(capsys):
    code, out, _ = run(capsys, "balanced", "--d", "39", "--gens", "16", "--output", "json")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["balanced"] is False


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "lfunction", "--p", "4", "--q", "16", "--d", "3")
    assert code == EXIT_DOMAIN and err


def test_resource_exit_code(capsys):
    code, _, err = run(capsys, "lfunction", "--p", "3", "--q", "3", "--d", "4", "--verify", "9", "--max-ops", "1000")
    assert code == EXIT_RESOURCE and "bound" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["rank", "--p", "3"])
    assert exc.value.code == EXIT_DOMAIN


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "leglab", "scan", "--p", "3", "--X", "40", "--output", "json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(r.stdout)["command"] == "scan"


@pytest.mark.parametrize(
    "argv,key,expected",
    [
        (("balanced", "--d", "39", "--p", "7"), "balanced", True),
        (("balanced", "--d", "39", "--gens", "16"), "balanced", False),
        (("balanced", "--d", "8", "--gens", "5"), "classification", "HalfPlusOne"),
        (("lfunction", "--p", "5", "--q", "5", "--d", "4"), "analytic_rank", 0),
        (("lfunction", "--p", "3", "--q", "9", "--d", "4"), "analytic_rank", 2),
    ],
)
def test_documented_examples(capsys, argv, key, expected):
    code, out, _ = run(capsys, *argv, "--output", "json")
    assert code == EXIT_OK
    assert json.loads(out)["result"][key] == expected


def test_scan_census(capsys):
    code, out, _ = run(capsys, "scan", "--p", "3", "--X", "100", "--output", "json")
    result = json.loads(out)["result"]
    assert code == EXIT_OK
    assert sum(result["counts"].values()) == len(result["classes"])
    assert 55 in result["sporadic"]


def test_qmod_only_for_rank():
    with pytest.raises(SystemExit) as exc:
        main(["lfunction", "--p", "7", "--qmod", "1 mod 39", "--d", "39"])
    assert exc.value.code == EXIT_DOMAIN


def test_falsification_exit_code(capsys, monkeypatch):
    from leglab import cli
    from leglab.errors import ConsistencyError

    def boom(args):
        raise ConsistencyError("injected")

    monkeypatch.setitem(cli.COMMANDS, "balanced", boom)
    code, _, err = run(capsys, "balanced", "--d", "7", "--p", "2")
    assert code == cli.EXIT_FALSIFIED and "injected" in err
