"""Black-box checks of the replay CLI: exit codes, schema validity, determinism."""
import json
import subprocess
import sys
from pathlib import Path

import jsonschema

REPLAY, DATA, CASE = sys.argv[1], Path(sys.argv[2]), sys.argv[3]


def run(*args):
    return subprocess.run([REPLAY, *args], capture_output=True, text=True, timeout=120)


def expect(cond, msg):
    if not cond:
        print("FAILED:", msg)
        sys.exit(1)


def case_schema():
    schema = json.loads((DATA / "report.schema.json").read_text())
    for extra in ([], ["--fields", "F2,F7(i),F101"], ["--checks", "GENFREE", "--seed", "5"]):
        p = run("run", "--format", "json", *extra)
        expect(p.returncode == 0, f"run {extra} exited {p.returncode}: {p.stderr}")
        jsonschema.validate(json.loads(p.stdout), schema)
    bad = {"run": {"seed": 0, "fields": ["Q"], "version": "0.1.0"}, "checks": [{"id": "X", "verdict": "MAYBE"}]}
    try:
        jsonschema.validate(bad, schema)
        expect(False, "schema accepted a malformed report")
    except jsonschema.ValidationError:
        pass


def case_deterministic():
    a = run("run", "--format", "json", "--no-timing")
    b = run("run", "--format", "json", "--no-timing")
    expect(a.returncode == 0 and b.returncode == 0, "run failed")
    expect(a.stdout == b.stdout, "json differs between runs")


def case_run_ok():
    p = run("run")
    expect(p.returncode == 0, f"exit {p.returncode}")
    expect("no FAIL in 21 checks" in p.stdout, p.stdout)


def case_perturbed():
    p = run("certificate", str(DATA / "fixtures" / "kbu_sigma_perturbed.cert"), "--field", "Q")
    expect(p.returncode == 1, f"exit {p.returncode}")
    expect("(1) FAIL" in p.stdout, p.stdout)
    good = run("certificate", str(DATA / "certificates" / "kbu_sigma.cert"))
    expect(good.returncode == 0, f"good certificate exit {good.returncode}")


def case_usage():
    for args in (["run", "--format", "xml"], ["nonsense"], ["run", "--checks", "NOPE"], ["run", "--fields", "F5(i)"], ["check-identity", "--field", "Q"]):
        p = run(*args)
        expect(p.returncode == 2, f"{args} exit {p.returncode}")


def case_identity():
    p = run("check-identity", "--field", "Q", "--lhs", "(x^2-1)/(x-1)", "--rhs", "x+1")
    expect(p.returncode == 0 and "EQUAL" in p.stdout and "NOT" not in p.stdout, p.stdout)
    p = run("check-identity", "--field", "F2", "--lhs", "(x+y)^2", "--rhs", "x^2+y^2")
    expect(p.returncode == 0, p.stdout)
    p = run("check-identity", "--field", "Q", "--lhs", "a", "--rhs", "1-a")
    expect(p.returncode == 1 and "NOT EQUAL" in p.stdout, p.stdout)


def case_tools():
    p = run("subgroups")
    expect(p.returncode == 0 and "30" in p.stdout, p.stdout)
    p = run("stabilizer", "--field", "F5", "--points", "0,1,2,3")
    expect(p.returncode == 0, p.stdout + p.stderr)
    p = run("conic", "decide", "--help")
    expect(p.returncode == 0, p.stderr)


globals()["case_" + CASE.replace("-", "_")]()
print("ok", CASE)
