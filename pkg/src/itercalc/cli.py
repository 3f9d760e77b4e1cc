"""Command-line front end: ``itercalc <verb> ...``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence, TextIO

from .derivations import partial, partial_zc
from .errors import ExpressionSyntaxError, ItercalcError, ToleranceNotReached
from .ncalgebra import NcPoly
from .numeric import RelationReport, check_diff_formula, check_relation_numeric, eval_L
from .parsing import format_expr, format_hexpr, parse_expr, parse_hexpr, parse_matrix, parse_rational, parse_ratfun
from .products import hbar_stuffle, shuffle, stuffle
from .ratfield import GradingMap
from .transforms import gamma_star, tau_z
from .verify import THEOREMS, default_workers, run_theorem

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_grading(text: str) -> GradingMap:
    """``at:<rational>``, ``inf`` or ``trivial``."""
    text = text.strip()
    if text == "inf":
        return GradingMap.infinity()
    if text == "trivial":
        return GradingMap.trivial()
    if text.startswith("at:"):
        return GradingMap.at(parse_rational(text[3:]))
    raise UsageError(f"bad grading {text!r}: expected at:<alpha>, inf or trivial")


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"bad complex number {text!r}") from None


def format_number(x: complex, tol: float) -> str:
    digits = min(15, max(1, math.ceil(-math.log10(tol)))) if tol > 0 else 15
    if abs(x.imag) <= tol:
        return f"{x.real:.{digits}f}"
    return f"{x.real:.{digits}f}{x.imag:+.{digits}f}i"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="itercalc", description="Exact word-algebra calculus and iterated integrals.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    for name in ("shuffle", "stuffle"):
        q = sub.add_parser(name, parents=[common], help=f"{name} product of two expressions")
        q.add_argument("u")
        q.add_argument("v")

    q = sub.add_parser("partial", parents=[common], help="derivation with boundary letters s, t")
    q.add_argument("expr")
    q.add_argument("--s", default="0")
    q.add_argument("--t", default="1")
    q.add_argument("--grading", default="at:0")

    q = sub.add_parser("partial-zc", parents=[common], help="z-derivative component at c")
    q.add_argument("expr")
    q.add_argument("--c", type=int, choices=(0, 1), required=True)

    q = sub.add_parser("dual", parents=[common], help="duality map tau_z")
    q.add_argument("expr")

    q = sub.add_parser("mobius", parents=[common], help="pullback along a Mobius map")
    q.add_argument("expr")
    q.add_argument("--matrix", required=True, help='"a,b;c,d"')

    q = sub.add_parser("verify", parents=[common], help="run a theorem sweep")
    q.add_argument("--theorem", choices=THEOREMS, required=True)
    q.add_argument("--part", type=int, choices=(1, 2, 3))
    q.add_argument("--max-degree", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--all-cases", action="store_true", help="list every case in JSON output")

    q = sub.add_parser("eval-l", parents=[common], help="numeric iterated integral")
    q.add_argument("word")
    q.add_argument("--z", default="0")
    q.add_argument("--tol", type=float, default=1e-10)

    q = sub.add_parser("check", help="numeric relation checks")
    kinds = q.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for name, nargs in (("shuffle", 2), ("stuffle", 2), ("duality", 1), ("diff", 1)):
        k = kinds.add_parser(name, parents=[common])
        k.add_argument("u")
        if nargs == 2:
            k.add_argument("v")
        k.add_argument("--z", default="-1")
        k.add_argument("--tol", type=float, default=1e-3 if name == "diff" else 1e-6)
        if name == "diff":
            k.add_argument("--h", type=float, default=1e-4)
    return p


def _emit(out: TextIO, args, text: str, payload: dict | None = None) -> None:
    if args.json:
        body = {"schema": SCHEMA, "command": args.verb}
        body.update(payload if payload is not None else {"result": text})
        out.write(json.dumps(body, indent=2) + "\n")
    else:
        out.write(text + "\n")


def _algebra(args, out: TextIO) -> int:
    verb = args.verb
    if verb in ("shuffle", "stuffle"):
        hu, hv = args.u.lstrip().startswith("y["), args.v.lstrip().startswith("y[")
        if hu or hv:
            if not (hu and hv and verb == "stuffle"):
                raise UsageError("y[k,a] letters are only accepted by stuffle, and then on both sides")
            _emit(out, args, format_hexpr(hbar_stuffle(parse_hexpr(args.u), parse_hexpr(args.v))))
            return EXIT_OK
        op = shuffle if verb == "shuffle" else stuffle
        res = op(parse_expr(args.u), parse_expr(args.v))
    elif verb == "partial":
        g = parse_grading(args.grading)
        res = partial(g, parse_ratfun(args.s), parse_ratfun(args.t), parse_expr(args.expr))
    elif verb == "partial-zc":
        res = partial_zc(args.c, parse_expr(args.expr))
    elif verb == "dual":
        res = tau_z(parse_expr(args.expr))
    else:
        res = gamma_star(parse_matrix(args.matrix), parse_expr(args.expr))
    _emit(out, args, format_expr(res))
    return EXIT_OK


def _verify(args, out: TextIO) -> int:
    if args.part is not None and args.theorem != "6.1":
        raise UsageError("--part applies to theorem 6.1 only")
    if args.max_degree < 1:
        raise UsageError("--max-degree must be positive")
    rep = run_theorem(args.theorem, args.max_degree, args.part, args.seed, default_workers())
    if args.json:
        body = rep.to_json(include_cases=args.all_cases)
        if not args.all_cases:
            body["results"] = [r.to_json() for r in rep.failures]
        out.write(json.dumps(body, indent=2) + "\n")
    else:
        status = "PASS" if rep.passed else "FAIL"
        out.write(f"{rep.theorem}: {len(rep.reports)} cases, {len(rep.failures)} failures [{status}]\n")
        for k, v in rep.counters.items():
            out.write(f"  {k}: {v}\n")
        for r in rep.failures[:20]:
            out.write(f"  residual {format_expr(r.residual)} at {r.inputs}\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _eval(args, out: TextIO) -> int:
    z0 = parse_complex(args.z)
    res = eval_L(parse_expr(args.word), z0, args.tol)
    payload = {
        "value": [res.value.real, res.value.imag],
        "est_error": res.est_error,
        "evaluations": res.evaluations,
    }
    _emit(out, args, format_number(res.value, args.tol), payload)
    return EXIT_OK


def _check(args, out: TextIO) -> int:
    z0 = parse_complex(args.z)
    u = parse_expr(args.u)
    if args.kind == "diff":
        rep: RelationReport = check_diff_formula(u, z0, args.h, args.tol)
    else:
        v: NcPoly | None = parse_expr(args.v) if args.kind != "duality" else None
        rep = check_relation_numeric(args.kind, u, v, z0, args.tol)
    args.verb = f"check {args.kind}"
    text = (
        f"{args.kind}: lhs {format_number(rep.lhs, 1e-12)}, rhs {format_number(rep.rhs, 1e-12)}, "
        f"error {rep.error:.3g} (tol {rep.tol:g}) [{'PASS' if rep.passed else 'FAIL'}]"
    )
    _emit(out, args, text, rep.to_json())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _report_error(exc: Exception, err: TextIO) -> None:
    err.write(f"itercalc: error: {exc}\n")
    if isinstance(exc, ExpressionSyntaxError) and exc.text is not None:
        col = len(exc.text.encode()[: exc.offset].decode(errors="ignore"))
        err.write(f"  {exc.text}\n  {' ' * col}^\n")


def run_command(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Run one command and return its exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.verb == "verify":
            return _verify(args, out)
        if args.verb == "eval-l":
            return _eval(args, out)
        if args.verb == "check":
            return _check(args, out)
        return _algebra(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except ToleranceNotReached as exc:
        _report_error(exc, err)
        return EXIT_FAIL
    except (ItercalcError, ZeroDivisionError, ValueError) as exc:
        _report_error(exc, err)
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
