#!/usr/bin/env python3
"""Validates every JSON document the CLI emits against the shipped schemas.

Usage: schema_check.py <path-to-cli> <schema-dir>
Exit codes: 0 all documents conform, 1 mismatch or CLI misbehavior,
77 jsonschema unavailable (skip).
"""

import json
import os
import subprocess
import sys
import tempfile

try:
    import jsonschema
except ImportError:
    sys.exit(77)


def fail(msg):
    print("schema_check: " + msg, file=sys.stderr)
    sys.exit(1)


def run(cli, args, expect_code):
    proc = subprocess.run([cli] + args, capture_output=True, text=True)
    if proc.returncode != expect_code:
        fail("%s exited %d (expected %d); stderr: %s"
             % (" ".join(args), proc.returncode, expect_code, proc.stderr.strip()))
    return proc


def validate(doc, schema, label):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as err:
        fail("%s does not conform: %s" % (label, err.message))


def main():
    if len(sys.argv) != 3:
        fail("usage: schema_check.py <cli> <schema-dir>")
    cli, schema_dir = sys.argv[1], sys.argv[2]

    def schema(name):
        with open(os.path.join(schema_dir, name)) as fh:
            return json.load(fh)

    report_schema = schema("validation_report.schema.json")
    trace_schema = schema("trace.schema.json")
    connect_schema = schema("connect.schema.json")

    with tempfile.TemporaryDirectory(prefix="heiscone_schema_") as tmp:
        # Validation reports: a fast structure run and the completeness suite
        # (the latter carries notes).
        for args, code in [
            (["validate", "--suite", "structures", "--seed", "7", "--n", "50"], 0),
            (["validate", "--suite", "completeness", "--seed", "42"], 0),
        ]:
            out = os.path.join(tmp, "report.json")
            run(cli, args + ["--out", out], code)
            with open(out) as fh:
                validate(json.load(fh), report_schema, " ".join(args))

        # Traces: closed-form heisenberg, cone with both integrators, and a
        # breached radial trace (exit 2, breach object populated).
        cases = [
            (["trace", "--space", "heisenberg", "--base", "0,0,0",
              "--dir", "1,0,0", "--s", "0:2", "--n", "9"], 0),
            (["trace", "--space", "cone", "--base", "0,0,0,1",
              "--dir", "0,0,1,0", "--s", "-1:3", "--n", "41",
              "--method", "both"], 0),
            (["trace", "--space", "cone", "--base", "0,0,0,1",
              "--dir", "0,0,0,-1", "--s", "0:2", "--n", "11"], 2),
        ]
        for args, code in cases:
            out = os.path.join(tmp, "trace.json")
            run(cli, args + ["--format", "json", "--out", out], code)
            with open(out) as fh:
                doc = json.load(fh)
            validate(doc, trace_schema, " ".join(args))
            if code == 2 and doc["breach"] is None:
                fail("breached trace lacks a breach object")

        # Connect results: a converged radial segment and a documented
        # non-convergence (exit 3) at an unreachable tolerance.
        conv = run(cli, ["connect", "0,0,0,1", "0,0,0,3"], 0)
        validate(json.loads(conv.stdout), connect_schema, "connect converged")
        stuck = run(cli, ["connect", "0.1,-0.2,0.3,1", "0.4,0.25,-0.7,1.6",
                          "--tol", "1e-20"], 3)
        doc = json.loads(stuck.stdout)
        validate(doc, connect_schema, "connect non-converged")
        if doc["converged"]:
            fail("non-converged connect reported converged=true")

    print("schema_check: all emitted documents conform")
    return 0


if __name__ == "__main__":
    sys.exit(main())
