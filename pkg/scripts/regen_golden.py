"""Rewrite tests/golden/*.json from the current build. Review the diff before committing."""

import io
import os

from cellkit.cli import main

ROOT = os.path.join(os.path.dirname(__file__), "..")

for name in ["tl_q1"]:
    out = io.StringIO()
    code = main(["analyze", os.path.join(ROOT, "aca", f"{name}.aca"), "--json"], out=out)
    with open(os.path.join(ROOT, "tests", "golden", f"{name}.json"), "w") as fh:
        fh.write(out.getvalue())
    print(f"{name}: exit {code}")
