"""Command-line interface.

Exit codes: 0 success / true, 1 mathematically false, 2 parse error,
3 violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import selftest
from .errors import FormatError, PreconditionError
from .forms import Form, IntMatrix2, parse_form
from .nesting import LiftIndex, descend, fiber, lift_g, primitive_lift_indices, semi_equivalent
from .reduction import class_set, equivalent, reduce

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


class _Out:
    """Collects text lines and a JSON payload carrying the same content."""

    def __init__(self):
        self.lines: list[str] = []
        self.data: dict = {}
        self.code = EXIT_OK


def _fmt(q: Form) -> str:
    return str(q)


def _mat(M: IntMatrix2) -> str:
    return str(M)


def cmd_disc(args, out: _Out):
    q = parse_form(args.form)
    out.lines.append(str(q.disc))
    out.data = {"form": _fmt(q), "discriminant": q.disc}


def cmd_reduce(args, out: _Out):
    q = parse_form(args.form)
    r, U = reduce(q)
    out.lines += [_fmt(r), f"witness: {_mat(U)}"]
    out.data = {"form": _fmt(q), "reduced": _fmt(r), "witness": U.to_list()}


def cmd_equiv(args, out: _Out):
    q1, q2 = parse_form(args.form1), parse_form(args.form2)
    U = equivalent(q1, q2)
    if U is None:
        out.lines.append("inequivalent")
        out.data = {"equivalent": False, "witness": None}
        out.code = EXIT_FALSE
    else:
        out.lines.append(f"witness: {_mat(U)}")
        out.data = {"equivalent": True, "witness": U.to_list()}


def cmd_classgroup(args, out: _Out):
    cs = class_set(args.D)
    out.lines += [_fmt(q) for q in cs]
    out.lines.append(f"count: {len(cs)}")
    out.data = {"discriminant": args.D, "forms": [_fmt(q) for q in cs], "count": len(cs)}


def cmd_lift(args, out: _Out):
    q = parse_form(args.form)
    Q = lift_g(q, LiftIndex(args.g, args.f))
    out.lines.append(_fmt(Q))
    out.data = {"form": _fmt(q), "f": args.f, "g": args.g, "lift": _fmt(Q)}


def cmd_lifts(args, out: _Out):
    q = parse_form(args.form)
    rows = [(idx.g, lift_g(q, idx)) for idx in primitive_lift_indices(q, args.f)]
    out.lines += [f"g={g}: {_fmt(Q)}" for g, Q in rows]
    out.data = {"form": _fmt(q), "f": args.f, "lifts": [{"g": g, "lift": _fmt(Q)} for g, Q in rows]}


def cmd_descend(args, out: _Out):
    Q = parse_form(args.form)
    res = descend(Q, args.f)
    out.lines += [_fmt(res.base), f"matrix: {_mat(res.matrix)}"]
    out.data = {"form": _fmt(Q), "f": args.f, "base": _fmt(res.base), "matrix": res.matrix.to_list()}


def cmd_semiequiv(args, out: _Out):
    Q1, Q2 = parse_form(args.form1), parse_form(args.form2)
    ok = semi_equivalent(Q1, Q2, args.f)
    out.lines.append("semi-equivalent" if ok else "not semi-equivalent")
    out.data = {"semi_equivalent": ok}
    out.code = EXIT_OK if ok else EXIT_FALSE


def cmd_fiber(args, out: _Out):
    q = parse_form(args.form)
    classes = fiber(q, args.f)
    out.lines += [f"{_fmt(c.form)}  g = {', '.join(map(str, c.indices))}" for c in classes]
    out.lines.append(f"classes: {len(classes)}")
    out.data = {
        "form": _fmt(q),
        "f": args.f,
        "classes": [{"form": _fmt(c.form), "indices": list(c.indices)} for c in classes],
        "count": len(classes),
    }


def cmd_selftest(args, out: _Out):
    results = selftest.run(args.dmin, args.dmax, args.primes)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        out.lines.append(f"{r.name:<{width}}  {r.cases:>6}  {status}")
        out.lines += [f"    {m}" for m in r.failures[:10]]
    out.data = {
        "checks": [
            {"name": r.name, "cases": r.cases, "passed": r.passed, "failures": r.failures}
            for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    out.code = EXIT_OK if out.data["passed"] else EXIT_FALSE


def _primes(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    parser = argparse.ArgumentParser(prog="nestedforms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    add("disc", cmd_disc, "discriminant of a form").add_argument("form")
    add("reduce", cmd_reduce, "reduced form and witness").add_argument("form")
    p = add("equiv", cmd_equiv, "equivalence witness")
    p.add_argument("form1")
    p.add_argument("form2")
    add("classgroup", cmd_classgroup, "reduced primitive forms of discriminant D").add_argument("D", type=int)
    p = add("lift", cmd_lift, "the lift q . R_g")
    p.add_argument("form")
    p.add_argument("f", type=int)
    p.add_argument("g", type=int)
    p = add("lifts", cmd_lifts, "all primitive lifts")
    p.add_argument("form")
    p.add_argument("f", type=int)
    p = add("descend", cmd_descend, "base form of discriminant disc/f^2")
    p.add_argument("form")
    p.add_argument("f", type=int)
    p = add("semiequiv", cmd_semiequiv, "semi-equivalence test")
    p.add_argument("form1")
    p.add_argument("form2")
    p.add_argument("f", type=int)
    p = add("fiber", cmd_fiber, "classes above a form")
    p.add_argument("form")
    p.add_argument("f", type=int)
    p = add("selftest", cmd_selftest, "oracle sweep")
    p.add_argument("--dmin", type=int, default=-500)
    p.add_argument("--dmax", type=int, default=-3)
    p.add_argument("--primes", type=_primes, default=[3, 5, 7])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out()
    try:
        args.func(args, out)
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.json:
        print(json.dumps(out.data))
    else:
        print("\n".join(out.lines))
    return out.code


if __name__ == "__main__":
    sys.exit(main())
