import csv
import io
import json
import os
import subprocess
import sys

import pytest

from qcong.cli import (
    EXIT_FAIL,
    EXIT_ILL_POSED,
    EXIT_PASS,
    EXIT_USAGE,
    RECORD_FIELDS,
    UsageError,
    exit_code,
    main,
    parse_range,
    sweep_jobs,
)
from qcong.congruence import Status


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


# --- helpers ------------------------------------------------------------------------------

def test_exit_code_priorities():
    assert exit_code([Status.PASS, Status.PASS]) == EXIT_PASS
    assert exit_code([Status.PASS, Status.ILL_POSED]) == EXIT_ILL_POSED
    assert exit_code([Status.ILL_POSED, Status.FAIL]) == EXIT_FAIL
    assert (EXIT_PASS, EXIT_FAIL, EXIT_ILL_POSED, EXIT_USAGE) == (0, 1, 2, 64)


def test_parse_range():
    assert parse_range("1:5") == range(1, 6)
    with pytest.raises(UsageError):
        parse_range("1-5")


def test_sweep_jobs_select_odd_n_and_primes():
    jobs = sweep_jobs(["plus-sum"], list(range(1, 8)), None, [1])
    assert [kw["n"] for _, kw in jobs] == [1, 3, 5, 7]
    jobs = sweep_jobs(["qint-vanishing"], [3], None, [1, -1])
    assert [kw for _, kw in jobs] == [{"n": 3, "r": 1}, {"n": 3, "r": -1}]
    assert len(sweep_jobs(["corollary-plus"], None, [5, 7], [1])) == 2


# --- verify ---------------------------------------------------------------------------------

def test_verify_pass(capsys):
    code, out, _ = run(["verify", "plus-sum", "--n", "5"], capsys)
    assert code == 0
    assert out.startswith("PASS  plus-sum n=5  mod [5]·Φ₅(q)²")
    assert "witness " in out


@pytest.mark.parametrize("argv", [
    ["verify", "minus-sum", "--n", "3"],
    ["verify", "plus-sum", "--n", "4"],
    ["verify", "no-such-target", "--n", "5"],
    ["verify", "plus-sum"],
    [],
])
def test_verify_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 64
    assert err


def test_verify_fail_and_ill_posed_codes(capsys):
    assert run(["verify", "pairing", "--n", "5", "--d", "3", "--r", "1"], capsys)[0] == 1
    assert run(["verify", "pairing", "--n", "5", "--d", "3", "--r", "-1"], capsys)[0] == 2


def test_verify_json(capsys):
    code, out, _ = run(["verify", "minus-sum", "--n", "7", "--format", "json"], capsys)
    rec = json.loads(out)
    assert code == 0 and rec["status"] == "pass" and rec["modulus"] == "[7]·Φ₇(q)²"
    assert set(rec) == {"theorem", "instance", "modulus", "status", "witness", "notes", "parts"}


def test_seed_points_changes_witness_only(capsys):
    args = ["verify", "plus-param", "--n", "5", "--format", "json"]
    a = json.loads(run(args, capsys)[1])
    b = json.loads(run(["--seed-points", "3"] + args, capsys)[1])
    c = json.loads(run(args + ["--seed-points", "3"], capsys)[1])
    assert a["status"] == b["status"] == "pass"
    assert a["witness"] != b["witness"] == c["witness"]
    assert b["instance"]["seed"] == 3


# --- sweep ----------------------------------------------------------------------------------

def test_sweep_json_records(capsys):
    code, out, _ = run(["sweep", "plus-sum", "--n-range", "1:25", "--format", "json", "--jobs", "2"], capsys)
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(recs) == 13
    assert all(tuple(r) == RECORD_FIELDS for r in recs)
    assert [r["instance"]["n"] for r in recs] == list(range(1, 26, 2))
    assert all(r["verdict"] == "pass" for r in recs)


def test_sweep_corollaries_csv(capsys):
    code, out, _ = run(["sweep", "corollary-plus,corollary-minus", "--p-set", "5,7,11,13",
                        "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert tuple(rows[0]) == RECORD_FIELDS
    assert len(rows) == 9
    assert [r[0] for r in rows[1:]] == ["corollary-minus"] * 4 + ["corollary-plus"] * 4
    assert rows[1][1] == "p=5" and rows[1][2] == "5^3"


def test_sweep_order_is_independent_of_workers(capsys):
    argv = ["sweep", "half-sum,lcm", "--n-range", "3:15", "--format", "json"]
    one = [json.loads(x) for x in run(argv + ["--jobs", "1"], capsys)[1].splitlines()]
    many = [json.loads(x) for x in run(argv + ["--jobs", "3"], capsys)[1].splitlines()]
    strip = [[{k: v for k, v in r.items() if k != "runtime_ms"} for r in rs] for rs in (one, many)]
    assert strip[0] == strip[1]


def test_sweep_partial_failure_still_reports(capsys):
    code, out, err = run(["sweep", "minus-sum", "--n-range", "1:7", "--format", "json"], capsys)
    # n = 1 and 3 break the precondition and are skipped, the rest pass
    assert code == 0 and len(out.splitlines()) == 2
    assert err.count("skipped") == 2


@pytest.mark.parametrize("argv", [
    ["sweep", "plus-sum", "--n-range", "9:3"],
    ["sweep", "plus-sum", "--n-range", "2:2"],
    ["sweep", "plus-sum"],
    ["sweep", "plus-sum", "--n-range", "1:3", "--p-set", "5"],
    ["sweep", "bogus", "--n-range", "1:3"],
    ["sweep", "minus-sum", "--n-range", "1:3"],
])
def test_sweep_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 64


# --- conjecture and identity ------------------------------------------------------------------

def test_conjecture_rows(capsys):
    code, out, _ = run(["conjecture", "--p-set", "3,5,7", "--r-set", "1,2", "--format", "json"], capsys)
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 6
    by = {(r["p"], r["r"]): r for r in rows}
    assert by[(3, 1)]["threshold"] == 3
    assert by[(5, 1)]["threshold"] == 4


def test_conjecture_guard_skips(capsys):
    code, out, _ = run(["conjecture", "--p-set", "3", "--r-set", "9"], capsys)
    assert code == 0 and "skipped" in out


def test_identity_single_and_corpus(capsys):
    code, out, _ = run(["identity", "pfaff", "--a", "2", "--b", "3", "--c", "5", "--m", "2"], capsys)
    assert code == 0 and out.strip().endswith("1/1 hold")
    code, out, _ = run(["identity", "phi43t"], capsys)
    assert code == 0 and out.strip().endswith("21/21 hold")
    code, out, _ = run(["identity", "watson", "--a", "2", "--b", "3", "--c", "5", "--d", "7",
                        "--e", "11", "--m", "2", "--q", "1/3"], capsys)
    assert code == 0


def test_identity_usage(capsys):
    assert run(["identity", "pfaff", "--a", "2"], capsys)[0] == 64
    assert run(["identity", "pfaff", "--a", "x"], capsys)[0] == 64


# --- installed entry point and cache -------------------------------------------------------------

def test_console_script_and_cache_dir(tmp_path):
    env = dict(os.environ, QC_CACHE_DIR=str(tmp_path))
    cmd = [sys.executable, "-m", "qcong.cli", "verify", "lcm", "--n", "15"]
    first = subprocess.run(cmd, env=env, capture_output=True, text=True)
    assert first.returncode == 0
    cache = (tmp_path / "cyclotomic.txt").read_text().splitlines()
    assert cache[0] == "qcong-cyclotomic-cache v1"
    assert "15: 1 -1 0 1 -1 1 0 -1 1" in cache
    second = subprocess.run(cmd, env=env, capture_output=True, text=True)
    assert second.returncode == 0 and second.stdout.split("witness")[1] == first.stdout.split("witness")[1]
