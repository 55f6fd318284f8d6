"""Command line front end: ``hahnexp eval | check | demo``.

Output is one JSON object per line.  Exit codes: 0 when every check
passed, 1 when some check failed, 2 on parse or configuration errors,
3 when comparisons stayed undecided (and nothing failed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import exp_field, exp_structure, scalars, series_field, suites, worked
from .chains import PLAutomorphism
from .errors import HahnExpError, ParseError, UndecidedSign
from .hahn_group import HahnElement, cmp_group, e, group_arith, pseudo_limit, valuation_vG
from .serialize import parse_element
from .series_field import SeriesElement

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational(text, what):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what} must be a rational, got {text!r}") from None


def parse_cutoff(text):
    """A rational ``q`` (meaning ``q e_0``) or Hahn element JSON."""
    text = text.strip()
    if text.startswith("{"):
        g = parse_element(text)
        if not isinstance(g, HahnElement):
            raise UsageError("cutoff must be a Hahn element")
    else:
        g = e(0, _rational(text, "cutoff"))
    if not g > HahnElement.zero():
        raise UsageError("cutoff must be positive")
    return g


def _read(arg):
    if arg == "-":
        return sys.stdin.read()
    if arg.lstrip().startswith("{"):
        return arg
    try:
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {arg}: {exc.strerror}") from None


def _sign_text(decision):
    return decision.outcome.name.lower()


def _as_series(x):
    if isinstance(x, SeriesElement):
        return x
    raise UsageError("this operation needs series operands")


def _as_group(x):
    if isinstance(x, HahnElement):
        return x
    raise UsageError("this operation needs Hahn element operands")


def _arity(args, n):
    if len(args) != n:
        raise UsageError(f"expected {n} operand(s), got {len(args)}")
    return args


def _json(x):
    if isinstance(x, (HahnElement, SeriesElement)):
        return x.to_json()
    if hasattr(x, "to_json"):
        return x.to_json()
    return scalars.format_scalar(x) if scalars.is_scalar(x) else x


def evaluate(op, elements, opts):
    """Apply ``op`` to parsed elements; returns a JSON-ready result."""
    if op in ("add", "sub", "mul"):
        a, b = _arity(elements, 2)
        if isinstance(a, HahnElement) and isinstance(b, HahnElement) and op != "mul":
            return _json(group_arith(op, a, b))
        return _json(series_field.field_arith(op, _as_series(a), _as_series(b)))
    if op == "neg":
        (a,) = _arity(elements, 1)
        return _json(-a)
    if op == "cmp":
        a, b = _arity(elements, 2)
        if isinstance(a, HahnElement) and isinstance(b, HahnElement):
            return _sign_text(cmp_group(a, b))
        return _sign_text(series_field.cmp_series(_as_series(a), _as_series(b)))
    if op == "valuation":
        (a,) = _arity(elements, 1)
        v = valuation_vG(a) if isinstance(a, HahnElement) else series_field.valuation_v(a)
        return _json(v) if isinstance(v, HahnElement) else (v.to_json() if hasattr(v, "to_json") else str(v))
    if op == "divide-by-n":
        (a,) = _arity(elements, 1)
        return _json(_as_group(a).divide_by_n(opts.n))
    if op == "residue":
        (a,) = _arity(elements, 1)
        return _json(series_field.residue(_as_series(a)))
    if op == "invert":
        (a,) = _arity(elements, 1)
        return _json(series_field.invert(_as_series(a), opts.cutoff))
    if op == "root":
        (a,) = _arity(elements, 1)
        return _json(series_field.nth_root_positive(_as_series(a), opts.n, opts.cutoff, symbolic=True))
    if op == "derivative":
        (a,) = _arity(elements, 1)
        return _json(series_field.formal_derivative(_as_series(a)))
    if op == "decompose-add":
        (a,) = _arity(elements, 1)
        d = series_field.additive_decompose(_as_series(a))
        return {"infinite": _json(d.infinite_part), "constant": _json(d.constant),
                "infinitesimal": _json(d.infinitesimal)}
    if op == "decompose-mul":
        (a,) = _arity(elements, 1)
        d = series_field.multiplicative_decompose(_as_series(a))
        return {"monomial": _json(d.monomial_exponent), "constant": _json(d.unit_constant),
                "one_plus_eps": _json(d.one_plus_eps)}
    if op == "exp-right":
        (a,) = _arity(elements, 1)
        return _json(exp_field.exp_right(_as_series(a), opts.cutoff))
    if op == "log-right":
        (a,) = _arity(elements, 1)
        return _json(exp_field.log_right(_as_series(a), opts.cutoff))
    if op == "pseudo-limit":
        limit, report = pseudo_limit([_as_group(x) for x in elements])
        return {"limit": _json(limit), "report": report.to_dict()}
    if op == "lift":
        (a,) = _arity(elements, 1)
        if opts.sigma is None:
            raise UsageError("lift needs --sigma")
        try:
            sigma = PLAutomorphism.from_json(json.loads(opts.sigma))
        except (ValueError, TypeError, IndexError) as exc:
            raise UsageError(f"bad --sigma: {exc}") from None
        return _json(exp_structure.lift_chain_automorphism(sigma, _as_group(a)))
    raise UsageError(f"unknown operation {op!r}")


EVAL_OPS = ("add", "sub", "mul", "neg", "cmp", "valuation", "divide-by-n", "residue", "invert",
            "root", "derivative", "decompose-add", "decompose-mul", "exp-right", "log-right",
            "pseudo-limit", "lift")


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _exit_code(reports):
    if any(r.failures for r in reports):
        return EXIT_FAIL
    if any(r.undecided for r in reports):
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_eval(opts, out):
    elements = [parse_element(_read(arg), lenient=opts.lenient) for arg in opts.operands]
    result = evaluate(opts.op, elements, opts)
    _emit({"op": opts.op, "result": result}, out)
    return EXIT_UNDECIDED if result == "undecided" else EXIT_OK


def _suite_config(opts):
    return suites.SuiteConfig(seed=opts.seed, samples=opts.samples, cutoff=opts.cutoff,
                              middle=opts.middle, fixture=opts.fixture, direction=opts.direction,
                              precision=opts.precision)


def cmd_check(opts, out):
    names = opts.suites
    if names == ["all"]:
        names = list(suites.SUITES)
    unknown = [n for n in names if n not in suites.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
    cfg = _suite_config(opts)
    reports = []
    for name in names:
        report = suites.run_suite(name, cfg)
        reports.append(report)
        _emit(report.to_dict(), out)
    return _exit_code(reports)


DEMOS = tuple(worked.DEMOS)


def cmd_demo(opts, out):
    reports = worked.run(opts.name, lambda obj: _emit(obj, out))
    return _exit_code(reports)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hahnexp",
        description="Exact arithmetic on Hahn groups and series fields, and checks of exponential structure.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", default="6",
                        help="truncation cutoff: rational q (meaning q*e[0]) or Hahn element JSON (default: 6)")
    common.add_argument("--precision", default=None,
                        help="sign refinement cap as a rational width (default: 2^-64; "
                             "HAHNEXP_PRECISION overrides)")

    p_eval = sub.add_parser("eval", parents=[common], help="apply an operation to JSON elements")
    p_eval.add_argument("op", choices=EVAL_OPS)
    p_eval.add_argument("operands", nargs="*", help="files, '-' for stdin, or inline JSON")
    p_eval.add_argument("--n", type=int, default=2, help="root degree or divisor (default: 2)")
    p_eval.add_argument("--sigma", default=None, help="PL automorphism JSON for 'lift'")
    p_eval.add_argument("--lenient", action="store_true",
                        help="canonicalize unsorted terms and drop zero coefficients instead of rejecting")

    p_check = sub.add_parser("check", parents=[common], help="run randomized check suites")
    p_check.add_argument("suites", nargs="+", help=f"suite names or 'all': {', '.join(suites.SUITES)}")
    p_check.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
    p_check.add_argument("--samples", type=int, default=20, help="samples per suite (default: 20)")
    p_check.add_argument("--middle", choices=exp_field.MIDDLE_MODES, default=exp_field.SYMBOLIC,
                         help="middle exponential mode (default: symbolic)")
    p_check.add_argument("--fixture", choices=("strong", "violating"), default="strong",
                         help="group exponential fixture (default: strong)")
    p_check.add_argument("--direction", choices=(exp_structure.LEMMA_CONSISTENT, exp_structure.PAPER_LITERAL),
                         default=exp_structure.LEMMA_CONSISTENT,
                         help="centripetality inequality (default: lemma_consistent)")

    p_demo = sub.add_parser("demo", parents=[common], help="replay a worked construction")
    p_demo.add_argument("name", choices=DEMOS)
    return parser


def _validate(opts):
    opts.cutoff = parse_cutoff(opts.cutoff)
    text = os.environ.get("HAHNEXP_PRECISION") or opts.precision
    opts.precision = Fraction(1, 2**64) if text is None else _rational(text, "precision")
    if not 0 < opts.precision < 1:
        raise UsageError("precision must lie strictly between 0 and 1")
    if getattr(opts, "samples", 1) < 1:
        raise UsageError("--samples must be positive")
    if getattr(opts, "n", 1) < 1:
        raise UsageError("--n must be positive")
    if not -2**63 <= getattr(opts, "seed", 0) < 2**64:
        raise UsageError("--seed must fit in 64 bits")


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    old_cap = scalars.settings.cap
    try:
        _validate(opts)
        scalars.set_refinement_cap(opts.precision)
        handler = {"eval": cmd_eval, "check": cmd_check, "demo": cmd_demo}[opts.command]
        return handler(opts, out)
    except (UsageError, ParseError) as exc:
        print(f"hahnexp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UndecidedSign as exc:
        print(f"hahnexp: undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except HahnExpError as exc:
        print(f"hahnexp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        scalars.set_refinement_cap(old_cap)


if __name__ == "__main__":
    sys.exit(main())
