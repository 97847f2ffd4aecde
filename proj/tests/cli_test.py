"""End-to-end checks of the circuitkit command line: outputs and exit codes."""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = []


def run(*args, stdin=None):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, input=stdin)
    return p.returncode, p.stdout, p.stderr


def check(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL", what)


def write(tmp, name, obj):
    path = os.path.join(tmp, name)
    with open(path, "w") as f:
        f.write(obj if isinstance(obj, str) else json.dumps(obj))
    return path


with tempfile.TemporaryDirectory() as tmp:
    app = write(tmp, "app.json", {"A": [[1, 3, 4, 3], [0, 13, 9, 10]]})
    app_csv = write(tmp, "app.csv", "1,3,4,3\n0,13,9,10\n")

    for path in (app, app_csv):
        rc, out, _ = run("analyze", path)
        check(rc == 0, "analyze exit code")
        r = json.loads(out)
        check(r["kind"] == "analyze" and r["schema_version"] == 1, "report header")
        check((r["kappa"], r["kappa_dot"], r["kappa_bar"]) == ("25/9", "5850", "25"), "A_app measures")

    out_path = os.path.join(tmp, "out.json")
    rc, _, _ = run("analyze", "--input", app, "--output", out_path)
    check(rc == 0 and json.load(open(out_path))["kappa_dot"] == "5850", "--output file")

    rc, out, _ = run("generate", "--family", "dumbbell")
    check(rc == 0, "generate exit code")
    db = write(tmp, "db.json", out)
    rc, out, _ = run("analyze", db)
    check(rc == 0 and json.loads(out)["kappa_dot"] == "2", "dumbbell kappa_dot")

    rc, out, _ = run("generate", "--family", "flow", "--nodes", "4", "--arcs", "6", "--seed", "3")
    flow = write(tmp, "flow.json", out)
    rc, out, _ = run("solve", flow, "--rule", "steepest", "--check")
    r = json.loads(out)
    check(rc == 0 and r["terminated"] == "optimal" and "steps" in r["audit"], "solve --check")
    rc, out, _ = run("solve", flow, "--rule", "ratio", "--format", "csv")
    check(rc == 0 and out.startswith("step,objective"), "solve csv")

    rc, out, _ = run("appendix")
    check(rc == 0 and json.loads(out)["pass"] is True, "appendix")

    rc, out, _ = run("graver", write(tmp, "int.json", {"A": [[1, 1, 0], [0, 1, 1]]}), "--format", "csv")
    check(rc == 0 and sorted(out.split()) == ["-1,1,-1", "1,-1,1"], "graver csv")

    rc, out, _ = run("conjecture", app, "--target", "[3, 0, 0, 0]")
    check(rc == 2, "conjecture rejects a non-kernel target")
    rc, out, _ = run("conjecture", write(tmp, "k.json", {"A": [[1, 2, 1]]}))
    check(rc == 0 and json.loads(out)["violated"] == 0, "conjecture sweep")

    prox = write(tmp, "prox.json", {"A": [[1, 3, 4, 3], [0, 13, 9, 10]], "d": ["-1/2", 1, 1, 1], "c": [0, 1, 0, 1]})
    rc, out, _ = run("prox", prox)
    check(rc == 0 and json.loads(out)["within_bounds"], "prox")
    rc, out, _ = run("blackbox", prox, "--seed", "4")
    check(rc == 0 and "feasibility" in json.loads(out), "blackbox")

    cube = write(tmp, "cube.json", {"A": [[0, 0, 1]], "b": [0], "c": [0, 0, 0], "u": [1, 1, 5]})
    rc, out, _ = run("diameter", cube)
    check(rc == 0 and json.loads(out)["vertices"] == 4 and json.loads(out)["diameter"] == 2, "diameter")

    # input errors exit with 2
    check(run("analyze", os.path.join(tmp, "missing.json"))[0] == 2, "missing file")
    check(run("analyze", write(tmp, "bad.json", "{not json"))[0] == 2, "malformed json")
    check(run("analyze", write(tmp, "float.json", {"A": [[0.5, 1]]}))[0] == 2, "float entry")
    check(run("analyze", app, "--bogus")[0] == 2, "unknown flag")
    check(run("solve", flow, "--rule", "fastest")[0] == 2, "unknown rule")
    check(run("blackbox", prox, "--epsilon", "1/2")[0] == 2, "epsilon too large")

    wide = write(tmp, "wide.json", {"A": [[1] * 13]})
    check(run("analyze", wide)[0] == 2, "envelope exceeded")

print("cli: %d failure(s)" % len(failures))
sys.exit(1 if failures else 0)
