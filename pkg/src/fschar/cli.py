"""fschar command line: characters, bases and verification suites.

Exit codes: 0 success, 1 verification failures, 2 usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from . import char_a, char_d
from .colors import TYPE_A, TYPE_D, AlgebraSpec, WeightVec, realizable
from .enumerator import EnumRequest, enumerate_basis, oracle_character
from .monomials import IC0, ICgamma, ICij, ICVariant, LambdaK, Restricted, parse_ic
from .qseries import QSeries
from .report import Report

QMAX_LIMIT = 200
GRID_LIMIT = 6
SUITES = ("a-formula", "a-recurrence", "a-bijection", "d4-formula", "d4-recurrence", "d4-split", "dl-remark")


class UsageError(Exception):
    pass


# ----------------------------------------------------------------- parsing


def _weight(text: str) -> WeightVec:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight {text!r}") from None


def _add_common(p: argparse.ArgumentParser, rank_default: int | None = 1) -> None:
    p.add_argument("--family", choices=[TYPE_A, TYPE_D], type=str.upper, default=TYPE_A)
    p.add_argument("--rank", type=int, default=rank_default)
    p.add_argument("--m", type=int, default=None, help="index of omega (type A); default 1")
    p.add_argument("--k", type=int, default=None, help="shorthand for --target lambda:K")
    p.add_argument("--target", default=None, help="lambda:K, ij:I,J, ic0, gamma:COLOR or restricted:NAME")
    p.add_argument("--qmax", type=int, default=20)
    p.add_argument("--format", dest="fmt", choices=["json", "csv", "text"], default=None)
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fschar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("char", help="closed-form characters")
    _add_common(pc)
    g = pc.add_mutually_exclusive_group(required=True)
    g.add_argument("--weight", type=_weight)
    g.add_argument("--grid", type=_weight, help="per-coordinate upper bounds (one value applies to all)")
    pc.add_argument("--source", choices=["formula", "oracle"], default="formula")

    pe = sub.add_parser("enum", help="enumerate admissible monomials")
    _add_common(pe)
    pe.add_argument("--weight", type=_weight, default=None)
    pe.add_argument("--dmax", type=int, default=None, help="degree bound (default: qmax)")
    pe.add_argument("--character", action="store_true", help="emit the oracle character instead")

    pv = sub.add_parser("verify", help="run a verification suite")
    _add_common(pv, rank_default=None)
    pv.add_argument("--suite", required=True, help=", ".join(SUITES))
    pv.add_argument("--bound", type=int, default=2, help="grid bound per coordinate")
    pv.add_argument("--dmax", type=int, default=12)
    pv.add_argument("--max-lambda", type=int, default=5)
    pv.add_argument("--source", choices=["oracle", "formula", "both"], default="both")
    pv.add_argument("--printed", action="store_true", help="check the relations in their printed form")
    return parser


def _target(args: argparse.Namespace) -> ICVariant:
    if args.k is not None and args.target is not None:
        raise UsageError("give --k or --target, not both")
    if args.target is not None:
        try:
            return parse_ic(args.target)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return LambdaK(args.k or 0)


def _spec(args: argparse.Namespace) -> AlgebraSpec:
    m = 1 if args.m is None else args.m
    if args.family == TYPE_D and args.m not in (None, 1):
        raise UsageError("--m applies to type A only")
    try:
        return AlgebraSpec(args.family, args.rank, m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _jobs(args: argparse.Namespace) -> int:
    env = os.environ.get("FSCHAR_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"FSCHAR_JOBS must be an integer, got {env!r}") from None
    return max(1, args.jobs)


def _check_limits(args: argparse.Namespace) -> None:
    if not 0 <= args.qmax <= QMAX_LIMIT:
        raise UsageError(f"--qmax must be in 0..{QMAX_LIMIT}")
    if getattr(args, "dmax", None) is not None and not 0 <= args.dmax <= QMAX_LIMIT:
        raise UsageError(f"--dmax must be in 0..{QMAX_LIMIT}")
    bounds = list(getattr(args, "grid", None) or ())
    if getattr(args, "bound", None) is not None:
        bounds.append(args.bound)
    if any(not 0 <= b <= GRID_LIMIT for b in bounds):
        raise UsageError(f"grid bounds must be in 0..{GRID_LIMIT}")


# ------------------------------------------------------------ char / enum


def closed_form(spec: AlgebraSpec, ic: ICVariant, n: WeightVec, qmax: int) -> QSeries:
    """Dispatch to the type A or type D closed form for one weight."""
    if spec.family == TYPE_A:
        if isinstance(ic, (ICgamma, Restricted)):
            raise UsageError(f"{ic} is not a type A target")
        if isinstance(ic, LambdaK) and not 0 <= ic.k <= spec.rank:
            raise UsageError(f"k must be in 0..{spec.rank}")
        if isinstance(ic, ICij) and not (1 <= ic.i <= spec.m <= ic.j <= spec.rank):
            raise UsageError(f"need 1 <= i <= m <= j <= rank for {ic}")
        return char_a.closed_form_a(spec, ic, n, qmax)
    if isinstance(ic, Restricted):
        if spec.rank != 4:
            raise UsageError("restricted sets exist for D4 only")
        return char_d.restricted_char(ic.name, n, qmax)
    if spec.rank == 4:
        try:
            return char_d.char_d4_gamma(char_d.target_name(ic, spec), n, qmax)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if ic != LambdaK(0):
        raise UsageError("for D_l with l > 4 only the L(Lambda_0) formula is available")
    try:
        return char_d.char_dl_lambda0(spec.rank, n, qmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_target(spec: AlgebraSpec, ic: ICVariant) -> None:
    """Reject targets that make no sense for the algebra (oracle path)."""
    if spec.family == TYPE_A and isinstance(ic, (ICgamma, Restricted)):
        raise UsageError(f"{ic} is not a type A target")
    if spec.family == TYPE_D and isinstance(ic, ICij):
        raise UsageError(f"{ic} is not a type D target")
    if isinstance(ic, LambdaK):
        if not 0 <= ic.k <= spec.rank:
            raise UsageError(f"k must be in 0..{spec.rank}")
        if spec.family == TYPE_D and ic.k not in (0, 1, spec.rank - 1, spec.rank):
            raise UsageError("type D supports k in {0, 1, l-1, l}")
    if isinstance(ic, ICgamma):
        try:
            spec.check_color(ic.gamma)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if isinstance(ic, Restricted) and spec.rank != 4:
        raise UsageError("restricted sets exist for D4 only")


def _grid_weights(spec: AlgebraSpec, grid: WeightVec) -> list[WeightVec]:
    bounds = list(grid) * spec.rank if len(grid) == 1 else list(grid)
    if len(bounds) != spec.rank:
        raise UsageError(f"--grid needs 1 or {spec.rank} bounds")
    pts = itertools.product(*(range(b + 1) for b in bounds))
    return [n for n in pts if realizable(spec, n)]


def _oracle(spec: AlgebraSpec, ic: ICVariant, n: WeightVec, qmax: int) -> QSeries:
    subset = ic.color_subset if isinstance(ic, Restricted) else None
    return oracle_character(spec, ic, n, qmax, subset)


def _char_task(task) -> tuple[WeightVec, QSeries]:
    spec, ic, n, qmax, source = task
    if source == "oracle":
        return n, _oracle(spec, ic, n, qmax)
    return n, closed_form(spec, ic, n, qmax)


def _run_pool(fn: Callable, tasks: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def format_rows(rows: list[tuple[WeightVec, QSeries]], fmt: str, header: dict) -> str:
    if fmt == "csv":
        return "\n".join(
            ",".join(map(str, n)) + ", " + ",".join(map(str, s.coeffs)) for n, s in rows
        )
    if fmt == "text":
        return "\n".join(f"{','.join(map(str, n))}: {s}" for n, s in rows)
    body = dict(header)
    body["rows"] = [{"weight": list(n), "coeffs": [str(c) for c in s.coeffs]} for n, s in rows]
    return json.dumps(body, indent=2)


def parse_csv_rows(text: str, rank: int) -> list[tuple[WeightVec, QSeries]]:
    """Inverse of the csv encoding (rank tells where the weight ends)."""
    rows = []
    for line in text.strip().splitlines():
        vals = [int(x) for x in line.replace(" ", "").split(",")]
        coeffs = tuple(vals[rank:])
        rows.append((tuple(vals[:rank]), QSeries(len(coeffs) - 1, coeffs)))
    return rows


def _header(spec: AlgebraSpec, ic: ICVariant, qmax: int, source: str) -> dict:
    return {
        "family": spec.family,
        "rank": spec.rank,
        "m": spec.m,
        "target": _ic_text(ic),
        "qmax": qmax,
        "source": source,
    }


def _ic_text(ic: ICVariant) -> str:
    if isinstance(ic, LambdaK):
        return f"lambda:{ic.k}"
    if isinstance(ic, ICij):
        return f"ij:{ic.i},{ic.j}"
    if isinstance(ic, IC0):
        return "ic0"
    if isinstance(ic, ICgamma):
        return f"gamma:{ic.gamma}"
    return f"restricted:{ic.name}"


def _weights_for(spec: AlgebraSpec, weight: WeightVec | None, grid: WeightVec | None) -> list[WeightVec]:
    if weight is not None:
        if len(weight) != spec.rank:
            raise UsageError(f"weight {weight} needs {spec.rank} coordinates")
        return [weight]
    return _grid_weights(spec, grid)


def cmd_char(args: argparse.Namespace, out) -> int:
    spec, ic = _spec(args), _target(args)
    _check_target(spec, ic)
    weights = _weights_for(spec, args.weight, args.grid)
    if args.source == "formula":
        # surface dispatch errors before fanning out
        closed_form(spec, ic, spec.zero_weight(), 0)
    tasks = [(spec, ic, n, args.qmax, args.source) for n in weights]
    rows = _run_pool(_char_task, tasks, _jobs(args))
    rows.sort(key=lambda r: r[0])
    print(format_rows(rows, args.fmt or "csv", _header(spec, ic, args.qmax, args.source)), file=out)
    return 0


def cmd_enum(args: argparse.Namespace, out) -> int:
    spec, ic = _spec(args), _target(args)
    _check_target(spec, ic)
    if args.character:
        if args.weight is None:
            raise UsageError("--character needs --weight")
        weights = _weights_for(spec, args.weight, None)
        rows = [(n, _oracle(spec, ic, n, args.qmax)) for n in weights]
        print(format_rows(rows, args.fmt or "csv", _header(spec, ic, args.qmax, "oracle")), file=out)
        return 0
    if args.weight is not None and len(args.weight) != spec.rank:
        raise UsageError(f"weight {args.weight} needs {spec.rank} coordinates")
    dmax = args.qmax if args.dmax is None else args.dmax
    subset = ic.color_subset if isinstance(ic, Restricted) else None
    req = EnumRequest(spec, ic, args.weight, dmax, subset)
    fmt = args.fmt or "json"
    for x in enumerate_basis(req, dmax):
        if fmt == "text":
            print(f"{x.degree()}\t{x}", file=out)
        elif fmt == "csv":
            print(f"{','.join(map(str, x.weight()))}, {x.degree()}, {x}", file=out)
        else:
            rec = {"weight": list(x.weight()), "degree": x.degree(), "monomial": x.to_json()}
            print(json.dumps(rec), file=out)
    return 0


# ------------------------------------------------------------------ verify


def _chunks(items: list, jobs: int) -> list[list]:
    if not items:
        return [[]]
    k = max(1, min(jobs * 4, len(items)))
    return [items[i::k] for i in range(k)]


def _verify_task(task) -> Report:
    name, kwargs = task
    fn = {
        "formula_a": char_a.verify_formula_a,
        "recurrence_a": char_a.verify_recurrences_a,
        "bijection": char_a.verify_bijection,
        "formula_d4": char_d.verify_formula_d4,
        "restricted_d4": char_d.verify_restricted_d4,
        "recurrence_d4": char_d.verify_recurrences_d4,
        "split_d4": char_d.verify_decomposition_d4,
        "remark": char_d.verify_dl_remark,
    }[name]
    if name == "recurrence_a" and kwargs.pop("printed", False):
        kwargs["relations"] = char_a.printed_relations_a
    elif name == "recurrence_a":
        kwargs["relations"] = char_a.relations_a
    return fn(**kwargs)


def _sources(args) -> list[str]:
    return ["oracle", "formula"] if args.source == "both" else [args.source]


def verify_tasks(args: argparse.Namespace, jobs: int) -> list[tuple[str, dict]]:
    """Break a suite into independent (function, kwargs) units."""
    suite, bound, qmax = args.suite, args.bound, args.qmax
    tasks: list[tuple[str, dict]] = []
    if suite in ("a-formula", "a-recurrence"):
        ranks = [args.rank] if args.rank else [1, 2, 3, 4]
        for l in ranks:
            if args.m is not None and not 1 <= args.m <= l:
                if args.rank:
                    raise UsageError(f"m must be in 1..{l}")
                continue
            for m in [args.m] if args.m else range(1, l + 1):
                for chunk in _chunks(char_a.chain_weights(l, m, bound), jobs):
                    base = dict(l=l, m=m, bound=bound, qmax=qmax, weights=chunk)
                    if suite == "a-formula":
                        tasks += [("formula_a", dict(base, variants=v)) for v in ("lambda", "ij")]
                    else:
                        tasks += [("recurrence_a", dict(base, source=s, printed=args.printed)) for s in _sources(args)]
    elif suite == "a-bijection":
        ranks = [args.rank] if args.rank else [1, 2, 3]
        for l in ranks:
            for edge in (char_a.EDGE_FIRST, char_a.EDGE_LAST):
                tasks.append(("bijection", dict(l=l, edge=edge, bound=bound, max_lambda=args.max_lambda)))
    elif suite == "d4-formula":
        for chunk in _chunks(char_d.d_weights(4, bound), jobs):
            tasks.append(("formula_d4", dict(bound=bound, qmax=qmax, weights=chunk)))
        grid = list(itertools.product(range(bound + 1), repeat=4))
        for chunk in _chunks(grid, jobs):
            tasks.append(("restricted_d4", dict(bound=bound, qmax=qmax, weights=chunk)))
    elif suite == "d4-recurrence":
        for chunk in _chunks(char_d.d_weights(4, bound), jobs):
            tasks += [("recurrence_d4", dict(bound=bound, qmax=qmax, source=s, weights=chunk)) for s in _sources(args)]
    elif suite == "d4-split":
        tasks.append(("split_d4", dict(dmax=args.dmax)))
    elif suite == "dl-remark":
        l = args.rank or 5
        if not 4 <= l <= 6:
            raise UsageError("dl-remark supports 4 <= rank <= 6")
        for chunk in _chunks(char_d.d_weights(l, bound), jobs):
            tasks.append(("remark", dict(l=l, bound=bound, qmax=qmax, weights=chunk)))
    else:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return tasks


def run_suite(args: argparse.Namespace, jobs: int = 1) -> Report:
    tasks = verify_tasks(args, jobs)
    total = Report(args.suite)
    for rep in _run_pool(_verify_task, tasks, jobs):
        total.merge(rep)
    total.failures.sort(key=lambda f: (f["weight"] or "", f["detail"]))
    return total


def cmd_verify(args: argparse.Namespace, out) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    report = run_suite(args, _jobs(args))
    fmt = args.fmt or "json"
    if fmt == "json":
        print(json.dumps(report.to_json(), indent=2), file=out)
    elif fmt == "csv":
        for f in report.failures:
            print(f"{f['weight']};{f['detail']}", file=out)
    else:
        status = "PASS" if report.ok else "FAIL"
        print(
            f"{report.suite}: {status} cases={report.cases} failures={len(report.failures)} "
            f"max_discrepancy={report.max_discrepancy}",
            file=out,
        )
        for f in report.failures:
            print(f"  {f['weight']}: {f['detail']}", file=out)
    return 0 if report.ok else 1


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_limits(args)
        if args.command == "char":
            return cmd_char(args, out)
        if args.command == "enum":
            return cmd_enum(args, out)
        return cmd_verify(args, out)
    except UsageError as exc:
        print(f"fschar: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
