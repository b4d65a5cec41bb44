#!/usr/bin/env python3
"""End-to-end checks of the spinorsym CLI: exit codes, report schema, determinism, cache."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

CLI = sys.argv[1]
SCHEMA = json.load(open(sys.argv[2]))
failures = []


def run(*args, env=None):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, env=env)
    return proc.returncode, proc.stdout, proc.stderr


def lines(out):
    rows = [json.loads(line) for line in out.splitlines() if line.strip()]
    for row in rows:
        jsonschema.validate(row, SCHEMA)
    return rows


def expect(name, cond, detail=""):
    print(("PASS " if cond else "FAIL ") + name + (f"  ({detail})" if detail and not cond else ""))
    if not cond:
        failures.append(name)


def check(name, args, code, **fields):
    rc, out, err = run("--format", "json", *args)
    rows = lines(out) if out else []
    items = [r for r in rows if not r.get("summary")]
    ok = rc == code
    for key, value in fields.items():
        got = [r.get(key) for r in items]
        ok = ok and got and all(g == value for g in got)
    expect(name, ok, f"exit {rc}, stderr {err.strip()[:200]}")
    return rows


check("killing 1,1 has dimension 15", ["killing", "--type", "1,1"], 0, rank=15, expected=15)
check("killing 0,4 has dimension 35", ["killing", "--type", "0,4"], 0, rank=35, expected=35)
rows = check("killing 3,0 has no formula", ["killing", "--type", "3,0"], 4, expected=None)
expect("killing 3,0 still prints a dimension", rows and rows[0]["rank"] == 20)

rows = check("verify spin 1 chiral", ["verify", "--spin", "1", "--family", "chiral"], 0, **{"pass": True})
expect("verify spin 1 chiral covers 35 items", rows[-1]["total"] == 35 and rows[-1]["passed"] == 35)
rows = check("verify spin 3/2 conformal", ["verify", "--spin", "3/2", "--family", "conformal"], 0, **{"pass": True})
expect("verify spin 3/2 conformal covers 15 items", rows[-1]["total"] == 15)
rows = check("corrupted c21 fails", ["verify", "--spin", "1", "--family", "chiral", "--corrupt", "c21"], 1)
expect("corrupted c21 leaves nonzero residuals", any(r.get("residual_terms", 0) > 0 for r in rows))

rows = check("dimensions spin 1", ["dimensions", "--spin", "1", "--max-r", "3"], 0)
expect("dimensions spin 1 values", [r["expected"] for r in rows[:-1]] == [2, 32, 270, 1248])
rows = check("constructive spin 1/2", ["dimensions", "--spin", "1/2", "--max-r", "1", "--constructive"], 0)
expect("constructive spin 1/2 rank 52", rows[1]["rank"] == 52 and rows[1]["expected"] == 52)
rows = check("constructive weyl system", ["dimensions", "--system", "dirac", "--max-r", "1", "--constructive"], 0)
expect("weyl system rank 208", rows[1]["rank"] == 208)

rc, _, err = run("verify", "--spin", "1", "--family", "conformal", "--order", "3", "--max-order", "2")
expect("capacity error exit 3 with hint", rc == 3 and "max-order" in err, err)
expect("unknown subcommand exit 2", run("bogus")[0] == 2)
expect("bad spin exit 2", run("verify", "--spin", "x")[0] == 2)

a = run("--format", "json", "--seed", "11", "verify", "--spin", "1", "--family", "conformal", "--order", "2")
b = run("--format", "json", "--seed", "11", "--threads", "3", "verify", "--spin", "1", "--family", "conformal",
        "--order", "2")
expect("fixed seed gives byte-identical reports", a[1] == b[1] and a[0] == 0)

with tempfile.TemporaryDirectory() as tmp:
    env = dict(os.environ, SPINORSYM_CACHE_DIR=tmp)
    first = run("--format", "json", "killing", "--type", "0,2", env=env)
    files = [f for f in os.listdir(tmp) if f.endswith(".json")]
    second = run("--format", "json", "killing", "--type", "0,2", env=env)
    expect("cache file written", len(files) == 1)
    expect("cached answer matches", first[1] == second[1] and second[0] == 0)
    doc = json.load(open(os.path.join(tmp, files[0])))
    expect("cache document fields", {"version", "type", "degree_bound", "convention_hash", "basis"} <= set(doc))
    expect("cache holds 10 basis elements", len(doc["basis"]) == 10)

sys.exit(1 if failures else 0)
