"""Run the command-line interface across the bundled fixture corpus.

A quick end-to-end demonstration: each entry below is a full command
line, executed in-process, with its exit code echoed.  Nonzero codes
are expected for the deliberately broken or truncation-limited inputs
and do not abort the run.

    python3 scripts/verify_corpus.py
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from torsionlab.cli import run_command

COMMANDS = [
    ["tau", "--fixture", "circle_cw.json"],
    ["tau", "--fixture", "circle_cw.json", "--order", "4"],
    ["tau-hat", "--fixture", "circle_cw.json"],
    ["validate", "--fixture", "circle_cw.json"],
    ["validate", "--fixture", "broken_dsq.json"],
    ["canon", "--fixture", "rational_sample.json", "--order", "5"],
    ["zeta", "--method", "lefschetz", "--fixture", "catmap_returnmaps.json"],
    ["zeta", "--method", "trace", "--fixture", "catmap_returnmaps.json", "--order", "6"],
    ["zeta", "--method", "product", "--fixture", "torus_orbits.json"],
    ["zeta", "--method", "exp", "--fixture", "torus_orbits.json", "--order", "6"],
    ["assemble", "--fixture", "circle_scenario.json"],
    ["assemble", "--fixture", "catmap_scenario.json"],
    ["verify-main", "--fixture", "circle_scenario.json"],
    ["verify-main", "--fixture", "circle_crit_scenario.json"],
    ["verify-main", "--fixture", "catmap_scenario.json"],
    ["verify-main", "--fixture", "stabilized_pair.json"],
    ["check-k", "--fixture", "stabilized_pair.json"],
    ["i3", "--fixture", "catmap_scenario.json"],
    ["tau", "--fixture", "trefoil_surgery_cw.json"],
    ["validate", "--fixture", "trefoil_novikov.json"],
]


def main():
    fixture_dir = os.path.join(os.path.dirname(__file__), "..", "fixtures")
    os.environ["TORSIONLAB_FIXTURE_DIR"] = fixture_dir
    failures = 0
    for argv in COMMANDS:
        print("$ torsionlab " + " ".join(argv))
        code = run_command(argv)
        print("exit=%d" % code)
        print()
        if code not in (0, 2):
            failures += 1
    if failures:
        print("%d command(s) exited outside the expected 0/2 range" % failures)
        return 1
    print("corpus sweep complete")
    return 0


if __name__ == "__main__":
    sys.exit(main())
