"""Command-line surface: schemas, exit codes, piping, determinism."""

from __future__ import annotations

import io
import json

from posetlab.cli import main
from posetlab.posets import chain
from posetlab.search import Certificate, verify_certificate


def run_cli(argv, stdin_text: str = ""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin_text), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def chain3_json() -> str:
    obj = chain(3).to_json_obj()
    obj["z"] = [0, 1, 2]
    return json.dumps(obj)


def test_table_on_chain(tmp_path):
    path = tmp_path / "chain3.json"
    path.write_text(chain3_json())
    code, out, _ = run_cli(["table", "--poset", str(path)])
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == "posetlab/1"
    assert obj["F"] == [[1, 1, "1"]]


def test_table_reads_stdin():
    code, out, _ = run_cli(["table"], stdin_text=chain3_json())
    assert code == 0 and json.loads(out)["F"] == [[1, 1, "1"]]


def test_family_pipe_check_matches_in_process():
    code, family_out, _ = run_cli(["family", "--id", "cpc2-witness", "--k", "1", "--l", "2"])
    assert code == 0
    code, piped, _ = run_cli(["check", "--ineq", "cpc2", "--all"], stdin_text=family_out)
    assert code == 1  # a failing comparison was found
    reports = [json.loads(line) for line in piped.splitlines()]
    failing = [r for r in reports if r["verdict"] == "fails"]
    assert any(r["k"] == 1 and r["l"] == 2 and r["ratio"] == "2/3" for r in failing)


def test_shell_pipeline_bytes_match_in_process():
    import subprocess
    import sys

    shell = (
        f"{sys.executable} -m posetlab family --id cpc2-witness --k 1 --l 2 | "
        f"{sys.executable} -m posetlab check --ineq cpc2 --all"
    )
    proc = subprocess.run(shell, shell=True, capture_output=True, text=True)
    assert proc.returncode == 1
    _, family_out, _ = run_cli(["family", "--id", "cpc2-witness", "--k", "1", "--l", "2"])
    _, in_process, _ = run_cli(["check", "--ineq", "cpc2", "--all"], stdin_text=family_out)
    assert proc.stdout == in_process


def test_two_of_three_exits_zero():
    _, family_out, _ = run_cli(["family", "--id", "cpc2-witness", "--k", "1", "--l", "2"])
    code, out, _ = run_cli(["check", "--ineq", "two-of-three", "--all"], stdin_text=family_out)
    assert code == 0
    assert all(json.loads(line)["verdict"] != "fails" for line in out.splitlines())


def test_vanish_command():
    code, out, _ = run_cli(["vanish", "--k", "1", "--l", "1"], stdin_text=chain3_json())
    assert code == 0
    obj = json.loads(out)
    assert obj["member"] is True
    assert set(obj["bounds"]) == {"k_lo", "k_hi", "l_lo", "l_hi", "s_lo", "s_hi"}


def test_verify_injections_command():
    _, family_out, _ = run_cli(["family", "--id", "cpc2-witness", "--k", "1", "--l", "2"])
    code, out, _ = run_cli(["verify-injections", "--map", "transfer"], stdin_text=family_out)
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert lines and all(obj["ok"] for obj in lines)
    assert all(obj["map"] == "transfer" for obj in lines)


def test_search_command_with_out_file(tmp_path):
    out_path = tmp_path / "found.jsonl"
    code, out, _ = run_cli(
        ["search", "--target", "cpc2", "--n-max", "6", "--seed", "42",
         "--budget", "3000", "--out", str(out_path)]
    )
    assert code == 0
    summary = json.loads(out.splitlines()[-1])
    assert summary["type"] == "summary" and summary["instances"] == 3000
    certs = [Certificate.from_json_obj(json.loads(line)) for line in out_path.read_text().splitlines()]
    assert len(certs) == summary["certificates"] > 0
    assert all(verify_certificate(c) for c in certs)


def test_volume_mc_command():
    _, family_out, _ = run_cli(["family", "--id", "cpc2-witness", "--k", "1", "--l", "2"])
    code, out, _ = run_cli(
        ["volume-mc", "--s", "1/5", "--t", "1/5", "--samples", "60000", "--seed", "7"],
        stdin_text=family_out,
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["formula"] == "42/625" and obj["samples"] == 60000


def test_usage_errors_exit_two(tmp_path):
    code, _, _ = run_cli(["check", "--ineq", "not-an-ineq"], stdin_text=chain3_json())
    assert code == 2
    code, _, err = run_cli(["table", "--poset", str(tmp_path / "missing.json")])
    assert code == 2 and "error" in err
    code, _, err = run_cli(["table"], stdin_text=json.dumps({"n": 2, "covers": []}))
    assert code == 2  # no marked triple


def test_human_mode_renders():
    code, out, _ = run_cli(["--human", "table"], stdin_text=chain3_json())
    assert code == 0 and "F=" in out and "{" not in out.splitlines()[0][:1]


def test_every_json_line_carries_schema():
    _, family_out, _ = run_cli(["family", "--id", "converse-tight", "--n", "8", "--k", "2", "--l", "1"])
    for argv in (
        ["check", "--ineq", "cpc", "--all"],
        ["check", "--ineq", "stanley"],
        ["table"],
        ["verify-injections"],
    ):
        code, out, _ = run_cli(argv, stdin_text=family_out)
        assert code in (0, 1)
        for line in out.splitlines():
            assert json.loads(line)["schema"] == "posetlab/1"
