#!/usr/bin/env python3
"""Drive the full verification battery through the CLI.

Runs the d^2, chain-map, quasi-isomorphism and quotient suites for both
parities at desk scale and reports a one-line verdict each.
"""

import subprocess
import sys

RUNS = [
    ("d^2 = 0 (connected, even)", ["--command", "verify-dsq", "--n", "0", "--colors", "1",
                                   "--vertices-max", "5", "--edges-max", "8",
                                   "--constraints", "connected"]),
    ("d^2 = 0 (connected, odd)", ["--command", "verify-dsq", "--n", "1", "--colors", "1",
                                  "--vertices-max", "5", "--edges-max", "8",
                                  "--constraints", "connected"]),
    ("d^2 = 0 (reduced, even)", ["--command", "verify-dsq", "--n", "0", "--colors", "1",
                                 "--vertices-max", "5", "--edges-max", "8"]),
    ("d^2 = 0 (reduced, odd)", ["--command", "verify-dsq", "--n", "1", "--colors", "1",
                                "--vertices-max", "5", "--edges-max", "8"]),
    ("chain map (even)", ["--command", "verify-chain", "--n", "0"]),
    ("chain map (odd)", ["--command", "verify-chain", "--n", "1"]),
    ("quasi-isomorphism (even)", ["--command", "verify-thm1", "--n", "0"]),
    ("quasi-isomorphism (odd)", ["--command", "verify-thm1", "--n", "1"]),
    ("subcomplex properties (even)", ["--command", "verify-props", "--n", "0", "--colors", "0"]),
    ("subcomplex properties (odd)", ["--command", "verify-props", "--n", "1", "--colors", "1"]),
]


def main():
    failures = 0
    for label, argv in RUNS:
        proc = subprocess.run(
            [sys.executable, "-m", "ogc.cli"] + argv, capture_output=True, text=True
        )
        verdict = "PASS" if proc.returncode == 0 else f"FAIL (exit {proc.returncode})"
        print(f"{label:<35} {verdict}")
        if proc.returncode != 0:
            failures += 1
            sys.stderr.write(proc.stdout + proc.stderr)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
