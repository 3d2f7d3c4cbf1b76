"""Scan the rank-two affine TL example over a range of parameters q and fields.

For each (field, q) prints det(psi), idempotency, semiprimeness, cyclicity and
the analysis exit code.

    python3 scripts/tl_scan.py --qmin -3 --qmax 3 --fields QQ GF(2) GF(3)
"""

import argparse

from cellkit.chain import AnalysisConfig, analyze_chain
from cellkit.cli import _field
from cellkit.group import tl_builtin
from cellkit.swich import idempotent_generator, is_idempotent_ideal, is_semiprime


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qmin", type=int, default=-2)
    ap.add_argument("--qmax", type=int, default=2)
    ap.add_argument("--fields", nargs="+", default=["QQ", "GF(2)", "GF(3)"])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'field':<7}{'q':>4}  {'det(psi)':<14}{'idem':<6}{'semiprime':<14}{'cyclic':<10}exit")
    for ftext in args.fields:
        F = _field(ftext)
        for q in range(args.qmin, args.qmax + 1):
            A = tl_builtin(q, F)
            L = A.layer
            report = analyze_chain(A.chain(), AnalysisConfig(seed=args.seed, pi_trials=2))
            print(
                f"{ftext:<7}{q:>4}  {str(L.det):<14}{str(is_idempotent_ideal(L)):<6}"
                f"{is_semiprime(L).label:<14}{idempotent_generator(L).label:<10}{report.exit_code()}"
            )


if __name__ == "__main__":
    main()
