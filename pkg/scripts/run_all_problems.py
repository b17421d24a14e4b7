#!/usr/bin/env python3
"""Run every problem in problems/ and summarize the outcomes.

Problems that need extra options (depth bounds, inlining) are run with them;
sq and badd are expected to fail, everything else to succeed.
"""

import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"

# (file, extra CLI options, expected exit code)
RUNS = [
    ("add.tl", [], 0),
    ("size.tl", [], 0),
    ("size.tl", ["--depth", "3"], 0),
    ("size.tl", ["--depth", "2"], 1),
    ("rev.tl", [], 0),
    ("dup.tl", [], 0),
    ("dup.tl", ["--inline", "--whole-set-lgg"], 0),
    ("lgth.tl", ["--inline", "--whole-set-lgg"], 0),
    ("sq.tl", [], 1),
    ("badd.tl", [], 1),
]


def main() -> int:
    failures = 0
    for name, opts, expected in RUNS:
        cmd = [sys.executable, "-m", "rwlearn.cli", str(PROBLEMS / name), "--no-trace", *opts]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        ok = proc.returncode == expected
        failures += not ok
        label = " ".join([name, *opts])
        print(f"{'ok  ' if ok else 'FAIL'} {label} (exit {proc.returncode}, expected {expected})")
        if not ok:
            print(proc.stdout)
            print(proc.stderr, file=sys.stderr)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
