"""Command-line front end: dimensions, bases, series, products, checks.

Degrees are given as four bare integers a p b q (negative values need no
escaping; use -- before them only if you prefer).  All commands print to
stdout; `check` exits nonzero iff a suite fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import basis, oracle, ring, series, spaces
from .grading import support_a_range
from .spaces import MackeyLevel


def _dim_for_space(space: str, d) -> int:
    if space == "pt":
        return oracle.homology_dim(d)
    if space == "E":
        return spaces.dim_E(d)
    if space == "Etilde":
        return spaces.dim_Etilde(d)
    if space == "B":
        return spaces.dim_B(d[0], d[2])
    raise ValueError(space)


def _cmd_dim(args) -> int:
    d = (args.a, args.p, args.b, args.q)
    dim = _dim_for_space(args.space, d)
    if args.json:
        print(json.dumps({"degree": list(d), "space": args.space, "dim": dim}))
    else:
        print(dim)
    return 0


def _cmd_basis(args) -> int:
    d = (args.a, args.p, args.b, args.q)
    if args.space == "pt":
        labels = [ring.serialize_label(l) for l in basis.canonical_basis(d)]
    else:
        a, p, b, q = d
        n = max(0, -p, -q)
        labels = [
            ring.serialize_label(l)
            for l in basis.canonical_basis((a - n, p + n, b - n, q + n))
        ]
    if args.json:
        print(json.dumps({"degree": list(d), "labels": labels}))
    else:
        for lab in labels:
            print(lab)
    return 0


def _cmd_series(args) -> int:
    s = series.poincare_series(args.p, args.b, args.q)
    if args.json:
        print(series.series_to_json(s))
    else:
        if not s:
            print("0")
        else:
            parts = []
            for e, c in sorted(s.items()):
                coeff = "" if c == 1 else f"{c}*"
                parts.append(f"{coeff}x^{e}" if e != 1 else f"{coeff}x")
            print(" + ".join(parts))
    return 0


def _cmd_mul(args) -> int:
    e1 = ring.parse(args.left)
    e2 = ring.parse(args.right)
    out = ring.multiply(e1, e2)
    if out.determined:
        print(ring.serialize_element(out.value))
    else:
        print(f"undetermined: {out.reason}")
    return 0


_LEVELS = {
    "top": MackeyLevel.TOP,
    "c2": MackeyLevel.MID_C2,
    "sigma2": MackeyLevel.MID_SIGMA2,
    "delta": MackeyLevel.MID_DELTA,
    "e": MackeyLevel.BOTTOM,
}


def _cmd_mackey(args) -> int:
    print(spaces.mackey_dim(_LEVELS[args.level], (args.a, args.p, args.b, args.q)))
    return 0


def _cmd_motivic(args) -> int:
    print(spaces.motivic_dim(args.a, args.p, args.b, args.q))
    return 0


# --- self-check suites ------------------------------------------------------


def _suite_series(n: int) -> List[str]:
    errors = []
    for p in range(-n, n + 1):
        for b in range(-n, n + 1):
            for q in range(-n, n + 1):
                s = series.poincare_series(p, b, q)
                for a in support_a_range(p, b, q):
                    want = s.get(-a, 0)
                    got = oracle.homology_dim((a, p, b, q))
                    if want != got:
                        errors.append(f"series {a} {p} {b} {q}: {want} != {got}")
    return errors


def _suite_basis(n: int) -> List[str]:
    errors = []
    for p in range(-n, n + 1):
        for b in range(-n, n + 1):
            for q in range(-n, n + 1):
                for a in support_a_range(p, b, q):
                    d = (a, p, b, q)
                    got = len(basis.canonical_basis(d))
                    want = oracle.homology_dim(d)
                    if want != got:
                        errors.append(f"basis {d}: {got} != {want}")
    return errors


def _relation_table():
    yield "k1", "k2", "y3^2"
    yield "k2", "k3", "y1^2"
    yield "k1", "k3", "y2^2"
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2), (1, 3, 2), (2, 1, 3), (3, 2, 1)):
        yield f"k{i}", f"x{i}", f"x{j} y{k} + x{k} y{j}"
        yield f"k{i}", f"y{i}", f"y{j} y{k}"
        yield f"i{i}", f"th{i}", "TH"
        yield f"k{i}", f"th{j}", f"i{k}"
        yield f"i{i}", f"th{j}", "0"
        yield f"i{i}", f"i{j}", "0"
        yield f"k{i}", f"th{j} th{k}", "TH"
    for i in (1, 2, 3):
        yield f"i{i}", f"k{i}", "0"
        yield "TH", f"th{i}", "0"
        yield "TH", f"k{i}", "0"
        yield "TH", f"i{i}", "0"
        for j in (1, 2, 3):
            yield "TH", f"x{j}", "0"
            yield "TH", f"y{j}", "0"
            if i != j:
                yield f"i{i}", f"x{j}", "0"
                yield f"i{i}", f"y{j}", "0"
    yield "TH", "TH", "0"
    yield "th1 th2", "th3", "0"
    yield "th1/(x1 y1) th2/x2", "th3/y3^2", "0"


def _suite_relations(_: int) -> List[str]:
    errors = []
    for left, right, want in _relation_table():
        out = ring.multiply(ring.parse(left), ring.parse(right))
        if not out.determined:
            errors.append(f"{left} * {right} undetermined: {out.reason}")
            continue
        expect = ring.parse(want) if want != "0" else None
        got = out.value
        if expect is None:
            if not got.is_zero():
                errors.append(f"{left} * {right} = {got}, want 0")
        elif got.terms != expect.terms:
            errors.append(f"{left} * {right} = {got}, want {want}")
    return errors


def _suite_products(n: int) -> List[str]:
    from . import checks

    return checks.zero_product_errors(min(n, 3)) + checks.appendix_errors(min(n, 3))


def _suite_split(n: int) -> List[str]:
    errors = []
    for p in range(0, n + 1):
        for q in range(0, n + 1):
            for b in range(-n, n + 1):
                for a in support_a_range(p, b, q):
                    if not spaces.split_check((a, p, b, q)):
                        errors.append(f"split {a} {p} {b} {q}")
    return errors


def _suite_periodicity(n: int) -> List[str]:
    errors = []
    for p in range(-n, n + 1):
        for b in range(-n, n + 1):
            for q in range(-n, n + 1):
                for a in support_a_range(p, b, q):
                    d = (a, p, b, q)
                    if spaces.dim_E(d) != spaces.dim_E((a - 1, p + 1, b - 1, q + 1)):
                        errors.append(f"kappa2 periodicity {d}")
                    et = spaces.dim_Etilde(d)
                    if et != spaces.dim_Etilde((a, p + 1, b, q)) or et != spaces.dim_Etilde(
                        (a, p, b, q + 1)
                    ):
                        errors.append(f"Etilde periodicity {d}")
    return errors


_SUITES = {
    "series": _suite_series,
    "basis": _suite_basis,
    "relations": _suite_relations,
    "products": _suite_products,
    "split": _suite_split,
    "periodicity": _suite_periodicity,
}


def _cmd_check(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        errors = _SUITES[name](args.range)
        status = "ok" if not errors else f"FAIL ({len(errors)} errors)"
        print(f"{name}: {status}")
        for err in errors[:10]:
            print(f"  {err}")
        failed = failed or bool(errors)
    return 1 if failed else 0


def _add_degree_args(sub):
    for name in ("a", "p", "b", "q"):
        sub.add_argument(name, type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klein",
        description="Exact RO(C2xSigma2)-graded Bredon cohomology of a point.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dim = sub.add_parser("dim", help="dimension of one graded piece")
    _add_degree_args(p_dim)
    p_dim.add_argument("--space", choices=["pt", "E", "Etilde", "B"], default="pt")
    p_dim.add_argument("--json", action="store_true")
    p_dim.set_defaults(func=_cmd_dim)

    p_basis = sub.add_parser("basis", help="canonical basis labels")
    _add_degree_args(p_basis)
    p_basis.add_argument("--space", choices=["pt", "E"], default="pt")
    p_basis.add_argument("--json", action="store_true")
    p_basis.set_defaults(func=_cmd_basis)

    p_series = sub.add_parser("series", help="Poincare series over a'")
    for name in ("p", "b", "q"):
        p_series.add_argument(name, type=int)
    p_series.add_argument("--json", action="store_true")
    p_series.set_defaults(func=_cmd_series)

    p_mul = sub.add_parser("mul", help="product of two elements")
    p_mul.add_argument("left")
    p_mul.add_argument("right")
    p_mul.set_defaults(func=_cmd_mul)

    p_mackey = sub.add_parser("mackey", help="Mackey-level dimension")
    p_mackey.add_argument("level", choices=list(_LEVELS))
    _add_degree_args(p_mackey)
    p_mackey.set_defaults(func=_cmd_mackey)

    p_mot = sub.add_parser("motivic", help="Bredon motivic dimension over R")
    _add_degree_args(p_mot)
    p_mot.set_defaults(func=_cmd_motivic)

    p_check = sub.add_parser("check", help="run self-check suites")
    p_check.add_argument("--range", type=int, default=4)
    p_check.add_argument(
        "--suite",
        choices=["all"] + list(_SUITES),
        default="all",
    )
    p_check.set_defaults(func=_cmd_check)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ring.RingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
