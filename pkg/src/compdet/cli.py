"""Command-line interface.

Text output is human-oriented and may change; JSON output is the stable
contract.  Identical argv (and seed) produce byte-identical JSON, which
is why timing is reported only in text mode.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .compositions import Domain, count_compositions, enumerate_compositions
from .closedforms import TheoremId, rhs
from .determinant import (
    LAPLACE_MAX_ORDER,
    det_bareiss,
    det_laplace,
    det_numeric,
)
from .matrices import EntryFamily, build_matrix
from .polynomials import Polynomial, poly_to_string, variable_names
from .verify import (
    DEFAULT_SEED,
    DEFAULT_SYMBOLIC_CAP,
    DEFAULT_TRIALS,
    THEOREM_SETUPS,
    run_suite,
    verify_kernel,
    verify_numeric,
    verify_symbolic,
)


def _parse_assignments(pairs: list[str] | None, k: int) -> dict[str, Fraction]:
    assignment: dict[str, Fraction] = {}
    names = set(variable_names(k))
    for pair in pairs or []:
        name, _, value = pair.partition("=")
        if not _ or name not in names:
            raise SystemExit(f"bad assignment {pair!r}; expected e.g. x1=1/2 with variables "
                             f"x1..x{k}, l1..l{k}")
        try:
            assignment[name] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise SystemExit(f"bad rational value in {pair!r}")
    return assignment


def _substitution_from_assignment(assignment: dict[str, Fraction], k: int):
    names = variable_names(k)
    return {names.index(name): value for name, value in assignment.items()}


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _report_lines(reports, fmt: str) -> str:
    if fmt == "json":
        return "\n".join(
            json.dumps(r.to_json_dict(include_timing=False), sort_keys=True)
            for r in reports)
    lines = []
    for r in reports:
        extra = ""
        if r.trials is not None:
            extra = f" trials={r.trials} seed={r.seed}"
        line = (f"{r.status:4s} {r.theorem} n={r.n} k={r.k} mode={r.mode}"
                f"{extra} ({r.elapsed_ms:.1f} ms)")
        if r.witness:
            line += f"\n     witness: {r.witness}"
        lines.append(line)
    return "\n".join(lines)


def _cmd_list(args) -> int:
    domain = Domain.POSITIVE if args.positive else Domain.ALL
    comps = enumerate_compositions(args.n, args.k, domain)
    if args.format == "json":
        _emit(json.dumps([list(c.parts) for c in comps]), args.output)
    else:
        _emit(" ".join(str(c) for c in comps), args.output)
    return 0


def _cmd_matrix(args) -> int:
    matrix = build_matrix(EntryFamily[args.family], Domain[args.domain], args.n, args.k)
    assignment = _parse_assignments(args.assign, args.k)
    if assignment:
        matrix = matrix.substitute(_substitution_from_assignment(assignment, args.k))
    if args.format == "json":
        _emit(json.dumps(matrix.to_json_dict(), sort_keys=True), args.output)
    else:
        lines = [f"{matrix.family.value} {matrix.domain.value} n={matrix.n} k={matrix.k} "
                 f"order={matrix.order}"]
        for comp, row in zip(matrix.row_index, matrix.entries):
            lines.append(f"{comp}: [" + ", ".join(poly_to_string(e, args.k) for e in row) + "]")
        _emit("\n".join(lines), args.output)
    return 0


def _cmd_det(args) -> int:
    family = EntryFamily[args.family]
    domain = Domain[args.domain]
    assignment = _parse_assignments(args.assign, args.k)
    if len(assignment) == 2 * args.k:
        value = det_numeric(family, domain, args.n, args.k, assignment)
        text = str(value)
    else:
        matrix = build_matrix(family, domain, args.n, args.k)
        if assignment:
            matrix = matrix.substitute(_substitution_from_assignment(assignment, args.k))
        det = det_laplace(matrix) if args.backend == "laplace" else det_bareiss(matrix)
        text = poly_to_string(det, args.k)
    if args.format == "json":
        _emit(json.dumps({"det": text}), args.output)
    else:
        _emit(text, args.output)
    return 0


def _cmd_rhs(args) -> int:
    form = rhs(TheoremId[args.id], args.n, args.k)
    if args.format == "json":
        _emit(json.dumps(form.to_json_dict(), sort_keys=True), args.output)
    else:
        lines = [f"scalar {form.scalar}"]
        lines += [f"({poly_to_string(base, args.k)})^{exp}" for base, exp in form.factors]
        _emit("\n".join(lines), args.output)
    return 0


def _cmd_verify(args) -> int:
    theorem = TheoremId[args.id]
    mode = args.mode
    if mode == "auto":
        setup = THEOREM_SETUPS[theorem]
        order = count_compositions(args.n, args.k, setup.domain)
        mode = "symbolic" if order <= args.symbolic_cap else "numeric"
    if mode == "symbolic":
        report = verify_symbolic(theorem, args.n, args.k, symbolic_cap=args.symbolic_cap)
    else:
        report = verify_numeric(theorem, args.n, args.k, trials=args.trials, seed=args.seed)
    _emit(_report_lines([report], args.format), args.output)
    return 0 if report.passed else 1


def _cmd_kernel(args) -> int:
    try:
        eps = tuple(int(p) for p in args.eps.split(","))
    except ValueError:
        raise SystemExit(f"bad --eps value {args.eps!r}; expected e.g. 1,0")
    report = verify_kernel(args.n, args.k, args.i, eps)
    _emit(_report_lines([report], args.format), args.output)
    return 0 if report.passed else 1


def _cmd_suite(args) -> int:
    reports = run_suite(n_max=args.nmax, k_max=args.kmax, trials=args.trials,
                        seed=args.seed, symbolic_cap=args.symbolic_cap)
    text = _report_lines(reports, args.format)
    failures = sum(1 for r in reports if not r.passed)
    if args.format == "text":
        text += f"\n{len(reports) - failures}/{len(reports)} checks passed"
    _emit(text, args.output)
    return 0 if failures == 0 else 1


def _cmd_bench(args) -> int:
    matrix = build_matrix(EntryFamily[args.family], Domain[args.domain], args.n, args.k)
    rows: list[dict] = []
    start = time.perf_counter()
    det_bareiss(matrix)
    rows.append({"backend": "bareiss", "order": matrix.order,
                 "ms": round((time.perf_counter() - start) * 1000.0, 3)})
    if matrix.order <= LAPLACE_MAX_ORDER:
        start = time.perf_counter()
        det_laplace(matrix)
        rows.append({"backend": "laplace", "order": matrix.order,
                     "ms": round((time.perf_counter() - start) * 1000.0, 3)})
    if args.format == "json":
        _emit(json.dumps(rows), args.output)
    else:
        lines = [f"{r['backend']:8s} order={r['order']} {r['ms']:.3f} ms" for r in rows]
        if matrix.order > LAPLACE_MAX_ORDER:
            lines.append(f"laplace skipped: order {matrix.order} > cap {LAPLACE_MAX_ORDER}")
        _emit("\n".join(lines), args.output)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("-o", "--output", default=None, help="write to file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compdet",
        description="Exact verification of composition-indexed determinant identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="enumerate compositions in canonical order")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--positive", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_list)

    families = [f.name for f in EntryFamily]
    domains = [d.name for d in Domain]

    p = sub.add_parser("matrix", help="dump a composition-indexed matrix")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--domain", choices=domains, default="ALL")
    p.add_argument("--assign", action="append", metavar="VAR=P/Q")
    _add_common(p)
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("det", help="exact determinant")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--domain", choices=domains, default="ALL")
    p.add_argument("--assign", action="append", metavar="VAR=P/Q")
    p.add_argument("--backend", choices=["bareiss", "laplace"], default="bareiss")
    _add_common(p)
    p.set_defaults(func=_cmd_det)

    ids = [t.name for t in TheoremId]

    p = sub.add_parser("rhs", help="factored closed form of an identity's RHS")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--id", choices=ids, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_rhs)

    p = sub.add_parser("verify", help="check one identity")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--id", choices=ids, required=True)
    p.add_argument("--mode", choices=["auto", "symbolic", "numeric"], default="auto")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--symbolic-cap", type=int, default=DEFAULT_SYMBOLIC_CAP)
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("kernel", help="kernel-vector membership check")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("i", type=int)
    p.add_argument("--eps", required=True, metavar="E1,...,EK")
    _add_common(p)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("suite", help="full verification sweep")
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--symbolic-cap", type=int, default=DEFAULT_SYMBOLIC_CAP)
    _add_common(p)
    p.set_defaults(func=_cmd_suite)

    p = sub.add_parser("bench", help="time Bareiss vs the Laplace oracle")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--domain", choices=domains, default="ALL")
    _add_common(p)
    p.set_defaults(func=_cmd_bench)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    env_seed = os.environ.get("COMPDET_SEED")
    if env_seed is not None and hasattr(args, "seed"):
        try:
            args.seed = int(env_seed)
        except ValueError:
            print(f"ignoring non-integer COMPDET_SEED={env_seed!r}", file=sys.stderr)
    try:
        return args.func(args)
    except (ValueError, LookupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
