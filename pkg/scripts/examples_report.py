"""Analyze every .aca document in a directory and print a one-line summary each.

    python3 scripts/examples_report.py aca/ [--json-dir out/]
"""

import argparse
import glob
import os

from cellkit.aca import load
from cellkit.chain import AnalysisConfig, analyze_chain


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("directory", nargs="?", default=os.path.join(os.path.dirname(__file__), "..", "aca"))
    ap.add_argument("--json-dir", default=None, help="also write each JSON report here")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if args.json_dir:
        os.makedirs(args.json_dir, exist_ok=True)
    for path in sorted(glob.glob(os.path.join(args.directory, "*.aca"))):
        with open(path) as fh:
            chain = load(fh.read()).target_chain()
        report = analyze_chain(chain, AnalysisConfig(seed=args.seed))
        verdicts = ", ".join(f"{k}={v.label}" for k, v in report.chain.items())
        print(f"{os.path.basename(path):<20} exit={report.exit_code()} m={report.m} ({report.m_provenance}) {verdicts}")
        if args.json_dir:
            out = os.path.join(args.json_dir, os.path.basename(path).replace(".aca", ".json"))
            with open(out, "w") as fh:
                fh.write(report.dumps() + "\n")


if __name__ == "__main__":
    main()
