"""Command-line front end: ``cellkit analyze|gb|construct|center-check|pi-test``.

Exit codes: 0 all gating verdicts affirmed, 1 some verdict refuted, 2 only
indeterminate verdicts remain, 3 parse errors or an exhausted step budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .aca import load, parse_element, tl_source
from .affine_ring import AffineRing
from .chain import AnalysisConfig, analyze_chain
from .coeffs import GF, QQ, Field
from .groebner import BudgetExceeded, Ideal, budget_scope, reduced_groebner_basis
from .group import is_central
from .multipoly import GREVLEX, LEX
from .swich import MatrixOverB, SwichLayer, pi_check_matrix, pi_check_swich
from .syntax import ParseError, TokenStream, parse_expr, tokenize

EXIT_OK, EXIT_REFUTED, EXIT_INDETERMINATE, EXIT_ERROR = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _field(text: str) -> Field:
    t = text.strip()
    if t == "QQ":
        return QQ
    if t.startswith("GF(") and t.endswith(")"):
        return GF(int(t[3:-1]))
    raise argparse.ArgumentTypeError(f"unknown field {text!r} (use QQ or GF(p))")


def _report(report, as_json: bool, out) -> int:
    print(report.dumps() if as_json else report.render(), file=out)
    return report.exit_code()


def cmd_analyze(args, out) -> int:
    model = load(_read(args.file))
    config = AnalysisConfig(seed=args.seed, pi_trials=args.trials, budget=args.budget)
    return _report(analyze_chain(model.target_chain(), config), args.json, out)


def cmd_gb(args, out) -> int:
    model = load(_read(args.file))
    if not model.rings:
        raise ValueError("document declares no rings")
    name = args.ring or next(iter(model.rings))
    if name not in model.rings:
        raise ValueError(f"unknown ring {name!r}")
    R = model.rings[name]
    order = LEX if args.order == "lex" else GREVLEX
    with budget_scope(args.budget):
        basis = reduced_groebner_basis(Ideal(R.poly_ring, R.ideal.generators), order)
    for g in basis:
        print(g, file=out)
    return EXIT_OK


def cmd_construct(args, out) -> int:
    source = tl_source(args.q, args.field)
    if args.aca:
        print(source, end="", file=out)
        return EXIT_OK
    model = load(source)
    config = AnalysisConfig(seed=args.seed, pi_trials=args.trials, budget=args.budget)
    return _report(analyze_chain(model.target_chain(), config), args.json, out)


def cmd_center_check(args, out) -> int:
    model = load(_read(args.file))
    if not model.extensions:
        raise ValueError("center-check needs an 'extend' declaration")
    A = model.extensions[args.algebra] if args.algebra else next(iter(model.extensions.values()))
    u = parse_element(args.element, A)
    with budget_scope(args.budget):
        central = is_central(u, A)
    if args.json:
        print(json.dumps({"element": str(u), "central": central}), file=out)
    else:
        print(f"{u} is {'central' if central else 'not central'} in {A.name}", file=out)
    return EXIT_OK if central else EXIT_REFUTED


def _parse_psi(text: str, B: AffineRing, n: int) -> MatrixOverB:
    tokens, diags = tokenize(text)
    ts = TokenStream(tokens, diags)
    rows = []
    ts.expect("[")
    while not ts.diagnostics:
        ts.expect("[")
        row = [parse_expr(ts)]
        while ts.accept(","):
            row.append(parse_expr(ts))
        ts.expect("]")
        rows.append(row)
        if not ts.accept(","):
            break
    ts.expect("]")
    if ts.diagnostics:
        raise ParseError(ts.diagnostics)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"--psi must be {n}x{n}")
    return MatrixOverB(B, [[B.poly_ring.from_ast(e) for e in r] for r in rows])


def cmd_pi_test(args, out) -> int:
    B = AffineRing(tuple(args.vars.split(",")), field=args.field, name=f"k[{args.vars}]", domain=True)
    if args.psi:
        psi = _parse_psi(args.psi, B, args.n)
    else:
        x = B.gen(B.variables[0])
        psi = MatrixOverB(B, [[B.one if i == j else x for j in range(args.n)] for i in range(args.n)])
    layer = SwichLayer(B, psi, name="J")
    results = []
    with budget_scope(args.budget):
        if args.n <= 3:
            results.append(("matrix", pi_check_matrix(args.n, B)))
        results.append(("swich", pi_check_swich(layer, args.trials, args.seed)))
    ok = all(r for _, r in results)
    if args.json:
        print(json.dumps({k: r.to_json() for k, r in results}, indent=2), file=out)
    else:
        for k, r in results:
            print(f"{k}: {'pass' if r else 'FAIL'} ({r.mode}, {r.tuples_checked} unit tuples, {r.trials} trials, seed {r.seed})", file=out)
    return EXIT_OK if ok else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cellkit", description="Swich algebras and affine cell chains.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--budget", type=int, default=None, help="Groebner step budget (default CELLKIT_BUDGET or 10^6)")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--trials", type=int, default=10, help="random trials for PI phase two")

    a = sub.add_parser("analyze", help="analyze the chain of an .aca document")
    a.add_argument("file")
    common(a)
    a.set_defaults(fn=cmd_analyze)

    g = sub.add_parser("gb", help="print the reduced Groebner basis of a declared ring's ideal")
    g.add_argument("file")
    g.add_argument("--ring", default=None)
    g.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    g.add_argument("--budget", type=int, default=None)
    g.set_defaults(fn=cmd_gb)

    c = sub.add_parser("construct", help="build a named example algebra")
    c.add_argument("kind", choices=("tl",))
    c.add_argument("--q", default="1", help="an integer, or a name for a symbolic parameter")
    c.add_argument("--field", default="QQ", help="QQ or GF(p)")
    c.add_argument("--aca", action="store_true", help="print the .aca document instead of analyzing")
    common(c)
    c.set_defaults(fn=cmd_construct)

    z = sub.add_parser("center-check", help="test whether an element of an extension algebra is central")
    z.add_argument("file")
    z.add_argument("--element", required=True, help='e.g. "(0, psi_adj)" or "tau + tau^-1"')
    z.add_argument("--algebra", default=None)
    common(z, seed=False)
    z.set_defaults(fn=cmd_center_check)

    t = sub.add_parser("pi-test", help="check the standard identities s_2n and s_2n^2")
    t.add_argument("--n", type=int, default=2)
    t.add_argument("--vars", default="x", help="comma-separated variables of B")
    t.add_argument("--field", type=_field, default=QQ)
    t.add_argument("--psi", default=None, help="psi as a matrix literal, default 1 on the diagonal and x elsewhere")
    common(t)
    t.set_defaults(trials=100)
    t.set_defaults(fn=cmd_pi_test)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    filename = getattr(args, "file", "<input>")
    try:
        return args.fn(args, out)
    except ParseError as e:
        for d in e.diagnostics:
            print(d.render(filename), file=sys.stderr)
        return EXIT_ERROR
    except BudgetExceeded as e:
        print(f"error: step budget exhausted: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
