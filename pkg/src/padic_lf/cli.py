"""The ``padic-lf`` command line: verification suites, local factors, D-matrices and tables."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .exact import CycNum
from .factors import epsilon, lfactor, meta_gamma, tate_gamma, theta, theta_tilde
from .local import AddChar, FieldCtx, MultChar, PadicNum, eta_pi
from .metaplectic import ENTRY_METHODS, canonical_case, dmatrix, plancherel
from .suites import DEFAULT_SUITES, SUITES, JobConfig, canonical_characters, run_suite
from .tables import KINDS, default_outdir, dump_json, emit_table


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _add_field(parser: argparse.ArgumentParser, with_n: bool = True) -> None:
    parser.add_argument("--p", type=int, required=True, help="odd prime")
    if with_n:
        parser.add_argument("--n", type=int, default=1, help="degree of the cover, n | p - 1")


def _add_chars(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--chi-unit", type=Fraction, default=Fraction(0),
                        help="angle of chi on the unit generator, e.g. 1/4")
    parser.add_argument("--chi-pi", type=Fraction, default=Fraction(0),
                        help="chi(varpi) as an angle in Q/Z")
    parser.add_argument("--chi-case", choices=("trivial", "eta", "ramified"),
                        help="use a canonical representative instead of --chi-unit/--chi-pi")
    parser.add_argument("--psi-conductor", type=int, default=0, help="e(psi)")


def _chi(args, ctx: FieldCtx) -> MultChar:
    if args.chi_case == "eta":
        if ctx.n % 2:
            raise ValueError("eta_varpi is a canonical case only for even n")
        return eta_pi(ctx)
    if args.chi_case:
        for chi in canonical_characters(ctx):
            if canonical_case(chi, ctx) == args.chi_case:
                return chi
    return MultChar.from_pi_value(ctx, args.chi_unit, CycNum.root_of_unity(args.chi_pi))


def _psi(args, p: int) -> AddChar:
    return AddChar(p, PadicNum(p, -args.psi_conductor, 1))


def _output(data, path: str | None) -> None:
    if path is None:
        sys.stdout.write(dump_json(data))
        return
    target = Path(path)
    if not target.is_absolute():
        target = default_outdir() / target
    dump_json(data, target)


# -- verbs ------------------------------------------------------------------------

def cmd_verify(args) -> int:
    suites = []
    for s in args.suite or []:
        suites += [t for t in s.split(",") if t]
    if args.all:
        suites = DEFAULT_SUITES
    config = JobConfig(args.p, args.n, args.conductor_bound, args.phis, args.seed, suites, args.psi_conductor)
    report = run_suite(config)
    _output(report.to_json(), args.json)
    if args.timings:
        for name, secs in report.timings.items():
            print(f"{name}: {secs:.2f}s", file=sys.stderr)
    for rec in report.failures[:20]:
        print(f"FAIL {rec.suite}/{rec.identity} {rec.params}", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_factor(args) -> int:
    ctx = FieldCtx(args.p, args.n)
    chi, psi = _chi(args, ctx), _psi(args, args.p)
    kinds = {"L": lambda: lfactor(chi, ctx), "epsilon": lambda: epsilon(chi, psi, ctx),
             "gamma": lambda: tate_gamma(chi, psi, ctx), "gamma-tilde": lambda: meta_gamma(chi, psi, ctx)}
    value = kinds[args.kind]()
    _output({"kind": args.kind, "chi": chi.to_json(ctx), "psi": psi.to_json(), "value": value.to_json(),
             "text": repr(value)}, args.json)
    return 0


def cmd_theta(args) -> int:
    ctx = FieldCtx(args.p, args.n)
    chi, psi = _chi(args, ctx), _psi(args, args.p)
    fn = theta_tilde if args.tilde else theta
    value = fn(args.m, chi, psi, args.n, ctx)
    _output({"m": args.m, "n": args.n, "tilde": args.tilde, "chi": chi.to_json(ctx), "value": value.to_json(),
             "text": repr(value)}, args.json)
    return 0


def cmd_dmatrix(args) -> int:
    ctx = FieldCtx(args.p, args.n)
    D = dmatrix(_chi(args, ctx), AddChar.standard(args.p), ctx, args.method)
    _output(D.to_json(), args.json)
    return 0


def cmd_plancherel(args) -> int:
    ctx = FieldCtx(args.p, args.n)
    chi = _chi(args, ctx)
    value = plancherel(chi, _psi(args, args.p), ctx, args.method)
    _output({"method": args.method, "chi": chi.to_json(ctx), "mu_inverse": value.to_json(), "text": repr(value)},
            args.json)
    return 0


def cmd_table(args) -> int:
    paths = emit_table(args.kind, args.p, _int_list(args.n_list), args.out, args.latex, args.conductor_bound)
    for path in paths.values():
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-lf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run identity suites and write a JSON report")
    _add_field(p)
    p.add_argument("--suite", action="append", help=f"suite name(s), comma separated: {', '.join(SUITES)}")
    p.add_argument("--all", action="store_true", help="run every default suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--conductor-bound", type=int, default=2)
    p.add_argument("--phis", type=int, default=10, help="random Schwartz functions per character")
    p.add_argument("--psi-conductor", type=int, default=0)
    p.add_argument("--json", help="report path (relative paths go under $PADIC_LF_OUTDIR)")
    p.add_argument("--timings", action="store_true", help="print wall time per suite to stderr")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("factor", help="L, epsilon, gamma or the metaplectic gamma factor")
    _add_field(p)
    _add_chars(p)
    p.add_argument("--kind", choices=("L", "epsilon", "gamma", "gamma-tilde"), required=True)
    p.add_argument("--json")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("theta", help="coefficients of the valuation-restricted functional equations")
    _add_field(p)
    _add_chars(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--tilde", action="store_true", help="the metaplectic family (n even)")
    p.add_argument("--json")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("dmatrix", help="the local coefficient matrix D(chi, s)")
    _add_field(p)
    _add_chars(p)
    p.add_argument("--method", choices=sorted(ENTRY_METHODS), default="integral")
    p.add_argument("--json")
    p.set_defaults(func=cmd_dmatrix)

    p = sub.add_parser("plancherel", help="the inverse Plancherel measure")
    _add_field(p)
    _add_chars(p)
    p.add_argument("--method", choices=("formula", "matrices"), default="formula")
    p.add_argument("--json")
    p.set_defaults(func=cmd_plancherel)

    for name, kind in (("table", None), ("reducibility-table", "reducibility")):
        p = sub.add_parser(name, help="emit a deterministic JSON table (optionally LaTeX)")
        p.add_argument("--p", type=int, required=True)
        if kind is None:
            p.add_argument("--kind", choices=KINDS, required=True)
        else:
            p.set_defaults(kind=kind)
        p.add_argument("--n-list", default="1", help="comma separated degrees")
        p.add_argument("--conductor-bound", type=int, default=2)
        p.add_argument("--out", type=Path, help="output directory (default $PADIC_LF_OUTDIR or .)")
        p.add_argument("--latex", action="store_true")
        p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"padic-lf: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
