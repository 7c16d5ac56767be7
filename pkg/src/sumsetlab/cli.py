"""Command-line surface: dataset generation, single-shot computations,
certificate verification, suites, and probes.

Exit codes: 0 when every emitted certificate Holds, 1 when any is Violated,
2 on usage or input errors, 3 when some are Indeterminate and none Violated.
All stdout output is canonical JSON (or CSV with ``--format csv``) and is a
deterministic function of the run configuration; human-oriented progress
lines go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from .bounds import (
    check_discrete_bm,
    check_elementary,
    check_fiber_bound,
    check_freiman_kfold,
    check_freiman_lemma,
    check_gs_kfold,
    check_iterated_pr,
    check_linear_pr,
    check_plunnecke_ruzsa,
    check_ruzsa_triangle,
    check_simplex_formula,
    det_main_term_probe,
    khovanskii_probe,
    main_term_probe,
)
from .certificates import INDETERMINATE, VIOLATED, Certificate, canonical_json
from .compression import (
    CompressionSpec,
    check_projection_monotone,
    check_sum_monotone,
    compress,
    reduce_to_simplex,
)
from .core import (
    PointSet,
    Subspace,
    linear_image,
    minkowski_sum,
    project,
)
from .generators import (
    cube,
    grid,
    interval_set,
    long_simplex,
    long_simplex_summands,
    long_simplex_sumset_form,
    random_full_dim_set,
    random_set,
    random_system,
    rotation_system,
    shear_counterexample,
    shear_system,
)
from .serialization import (
    basis_from_dict,
    dumps_canonical,
    pointset_from_dict,
    pointset_to_dict,
    system_from_dict,
    system_to_dict,
)
from .suites import run_suite

DEFAULT_POINT_BUDGET = 10**7


class CliError(Exception):
    """Usage or input problem; maps to exit code 2."""


@dataclass
class RunConfig:
    """Validated run parameters shared by the subcommand handlers."""

    command: str
    fmt: str = "json"
    jobs: int = 1
    budget: int = DEFAULT_POINT_BUDGET
    precision_cap: int | None = None
    out: str | None = None

    def __post_init__(self) -> None:
        if self.fmt not in ("json", "csv"):
            raise CliError(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise CliError("--jobs must be >= 1")
        if self.budget < 1:
            raise CliError("--budget must be >= 1")
        if self.precision_cap is not None and self.precision_cap < 128:
            raise CliError("--precision-cap must be at least 128 bits")


# ---------------------------------------------------------------------------
# input parsing helpers
# ---------------------------------------------------------------------------


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from exc


def _wrap_value_errors(fn, path: str):
    try:
        return fn()
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{path}: {exc}") from exc


def _load_pointset(path: str) -> PointSet:
    data = _load_json(path)
    return _wrap_value_errors(lambda: pointset_from_dict(data), path)


def _load_system(path: str):
    data = _load_json(path)
    return _wrap_value_errors(lambda: system_from_dict(data), path)


def _load_basis(path: str):
    data = _load_json(path)
    return _wrap_value_errors(lambda: basis_from_dict(data), path)


def _load_spec(path: str, dim: int) -> CompressionSpec:
    data = _load_json(path)
    return _wrap_value_errors(lambda: CompressionSpec.from_dict(data, dim), path)


def _parse_range(text: str, label: str) -> list[int]:
    """Parses sweep ranges: '4', '1-4', '1,3-5' (inclusive ends)."""
    values: list[int] = []
    for part in text.split(","):
        part = part.strip()
        try:
            if "-" in part[1:]:
                split_at = part.index("-", 1)
                lo, hi = int(part[:split_at]), int(part[split_at + 1 :])
                if hi < lo:
                    raise CliError(f"{label}: empty range {part!r}")
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(part))
        except ValueError as exc:
            raise CliError(f"{label}: cannot parse {part!r}") from exc
    if not values:
        raise CliError(f"{label}: empty range")
    return values


def _parse_dims(text: str) -> list[tuple[int, int]]:
    dims = []
    for part in text.split(","):
        try:
            n, m = part.strip().split("x")
            dims.append((int(n), int(m)))
        except ValueError as exc:
            raise CliError(f"--grids: cannot parse {part!r} (expected NxM)") from exc
    return dims


def _parse_ints(text: str, label: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise CliError(f"{label}: cannot parse {text!r}") from exc


def _parse_box(text: str) -> tuple[int, int]:
    parts = _parse_ints(text, "--box")
    if len(parts) != 2 or parts[0] > parts[1]:
        raise CliError(f"--box: expected LO,HI with LO <= HI, got {text!r}")
    return parts[0], parts[1]


def _parse_vectors(text: str, label: str) -> list[list[int]]:
    return [_parse_ints(part, label) for part in text.split(";")]


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _emit_doc(doc, config: RunConfig) -> None:
    text = dumps_canonical(doc)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


_CSV_COLUMNS = ("statement_id", "verdict", "lhs", "rhs", "slack", "precision_bits", "inputs_digest", "params")


def _emit_certificates(certs: Sequence[Certificate], config: RunConfig) -> int:
    lines: list[str] = []
    if config.fmt == "csv":
        import csv
        import io

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_CSV_COLUMNS)
        for cert in certs:
            doc = cert.to_dict()
            writer.writerow([_csv_cell(doc.get(col)) for col in _CSV_COLUMNS])
        text = buf.getvalue()
    else:
        for cert in certs:
            lines.append(canonical_json(cert.to_dict()))
        text = "".join(line + "\n" for line in lines)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for cert in certs:
        doc = cert.to_dict()
        print(
            f"{doc['statement_id']}: {doc['verdict']}"
            f" lhs={doc['lhs']} rhs={doc['rhs']} slack={doc['slack']}",
            file=sys.stderr,
        )
    return _exit_for(certs)


def _exit_for(certs: Sequence[Certificate]) -> int:
    verdicts = {cert.verdict for cert in certs}
    if VIOLATED in verdicts:
        return 1
    if INDETERMINATE in verdicts:
        return 3
    return 0


def _run_cases(cases: Sequence[Callable[[], Certificate]], jobs: int) -> list[Certificate]:
    """Runs verification cases, concurrently when jobs > 1, preserving order."""
    if jobs > 1 and len(cases) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda fn: fn(), cases))
    return [fn() for fn in cases]


# ---------------------------------------------------------------------------
# point budget guard
# ---------------------------------------------------------------------------


def _estimated_sum_size(sets: Sequence[PointSet]) -> int:
    """Cheap upper bound for |A_1 + ... + A_k|: min of the size product and
    (for integral inputs) the bounding-box volume of the sum."""
    product = 1
    for A in sets:
        product *= len(A)
    if not all(A.is_integral for A in sets):
        return product
    box = 1
    dim = sets[0].dim
    for i in range(dim):
        span = 0
        for A in sets:
            coords = [p[i] for p in A.points]
            span += max(coords) - min(coords)
        box *= span + 1
        if box >= product:
            return product
    return min(product, box)


def _guard_budget(sets: Sequence[PointSet], budget: int) -> None:
    estimate = _estimated_sum_size(sets)
    if estimate > budget:
        raise CliError(
            f"estimated output of {estimate} points exceeds the budget of {budget};"
            " raise --budget to proceed"
        )


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def _cmd_gen(args: argparse.Namespace, config: RunConfig) -> int:
    kind = args.kind
    need = lambda name: _require(args, name, f"gen {kind}")
    if kind == "simplex":
        doc = pointset_to_dict(long_simplex(need("d"), need("N")))
    elif kind == "simplex-summands":
        head, tail = long_simplex_summands(need("d"), need("N"))
        doc = [pointset_to_dict(head), pointset_to_dict(tail)]
    elif kind == "simplex-sumset-form":
        doc = pointset_to_dict(long_simplex_sumset_form(need("d"), need("N")))
    elif kind == "cube":
        doc = pointset_to_dict(cube(need("d"), need("N")))
    elif kind == "interval":
        doc = pointset_to_dict(interval_set(need("lo"), need("hi")))
    elif kind == "grid":
        sets = grid(_parse_dims(need("dims")))
        doc = pointset_to_dict(sets[0]) if len(sets) == 1 else [pointset_to_dict(A) for A in sets]
    elif kind == "rotation":
        doc = system_to_dict(rotation_system(need("d")))
    elif kind == "shear":
        doc = system_to_dict(shear_system())
    elif kind == "shear-counterexample":
        system, X = shear_counterexample(need("N"))
        doc = {"system": system_to_dict(system), "set": pointset_to_dict(X)}
    elif kind == "random":
        box = _parse_box(args.box or "-5,5")
        doc = pointset_to_dict(random_set(need("d"), need("size"), box, args.seed))
    elif kind == "random-full-dim":
        box = _parse_box(args.box or "-5,5")
        doc = pointset_to_dict(random_full_dim_set(need("d"), need("size"), box, args.seed))
    elif kind == "random-system":
        doc = system_to_dict(random_system(need("d"), need("k"), args.entry_bound, args.seed))
    else:  # pragma: no cover - argparse restricts choices
        raise CliError(f"unknown generator {kind!r}")
    _emit_doc(doc, config)
    return 0


def _require(args: argparse.Namespace, name: str, context: str):
    value = getattr(args, name.replace("-", "_"), None)
    if value is None:
        raise CliError(f"{context} requires --{name}")
    return value


# ---------------------------------------------------------------------------
# sumset / compress / reduce / project
# ---------------------------------------------------------------------------


def _cmd_sumset(args: argparse.Namespace, config: RunConfig) -> int:
    if args.sets:
        if args.set or args.system:
            raise CliError("--sets excludes --set/--system")
        summands = [_load_pointset(path) for path in args.sets]
    elif args.set:
        A = _load_pointset(args.set)
        if args.system:
            system = _load_system(args.system)
            if system.dim != A.dim:
                raise CliError("system and set dimensions differ")
            summands = [linear_image(M, A) for M in system.maps]
        else:
            summands = [A] * args.k
    else:
        raise CliError("sumset needs --sets or --set")
    if not summands:
        raise CliError("no summands given")
    _guard_budget(summands, config.budget)
    total = minkowski_sum(summands)
    doc = pointset_to_dict(total)
    doc["size"] = len(total)
    _emit_doc(doc, config)
    print(f"size {len(total)}", file=sys.stderr)
    return 0


def _cmd_compress(args: argparse.Namespace, config: RunConfig) -> int:
    A = _load_pointset(args.set)
    if (args.axis is None) == (args.spec is None):
        raise CliError("compress needs exactly one of --axis or --spec")
    if args.axis is not None:
        if not 1 <= args.axis <= A.dim:
            raise CliError(f"--axis must be in 1..{A.dim}")
        spec = CompressionSpec.axis(args.axis, A.dim)
    else:
        spec = _load_spec(args.spec, A.dim)
    result = compress(A, spec)
    doc = pointset_to_dict(result)
    doc["size"] = len(result)
    _emit_doc(doc, config)
    return 0


def _cmd_reduce(args: argparse.Namespace, config: RunConfig) -> int:
    A = _load_pointset(args.set)
    try:
        final, trace = reduce_to_simplex(A, max_steps=args.max_steps)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    doc = trace.to_dict()
    doc["steps_taken"] = len(trace.steps)
    _emit_doc(doc, config)
    print(f"reduced in {len(trace.steps)} steps to {len(final)} points", file=sys.stderr)
    return 0


def _cmd_project(args: argparse.Namespace, config: RunConfig) -> int:
    A = _load_pointset(args.set)
    coords = _parse_ints(args.coords, "--coords")
    basis = _load_basis(args.basis) if args.basis else None
    try:
        result = project(A, basis, coords)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    doc = pointset_to_dict(result)
    doc["size"] = len(result)
    _emit_doc(doc, config)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _sets_arg(args: argparse.Namespace, minimum: int, statement: str) -> list[PointSet]:
    if not args.sets or len(args.sets) < minimum:
        raise CliError(f"verify {statement} needs --sets with at least {minimum} file(s)")
    return [_load_pointset(path) for path in args.sets]


def _random_or_file_sets(args: argparse.Namespace, statement: str) -> list[tuple[str, PointSet]]:
    """One labelled set per sweep case: a file path, or seeded random
    full-dimensional sets when ``--set random`` is given."""
    if not args.set:
        raise CliError(f"verify {statement} needs --set FILE or --set random")
    if args.set != "random":
        return [(args.set, _load_pointset(args.set))]
    d = args.d_int
    size = args.size
    box = _parse_box(args.box or "-5,5")
    seeds = _parse_range(args.seed_range, "--seed")
    return [
        (f"random seed={seed}", random_full_dim_set(d, size, box, seed))
        for seed in seeds
    ]


def _v_elementary(args) -> list[Callable[[], Certificate]]:
    sets = _sets_arg(args, 1, "elementary")
    return [lambda: check_elementary(sets)]


def _v_gs_kfold(args) -> list[Callable[[], Certificate]]:
    if args.grids:
        sets = grid(_parse_dims(args.grids))
    else:
        sets = _sets_arg(args, 2, "gs_kfold")
    direction = tuple(_parse_ints(args.direction or "1,0", "--direction"))
    return [lambda: check_gs_kfold(sets, direction)]


def _v_freiman_kfold(args) -> list[Callable[[], Certificate]]:
    ks = _parse_range(args.k or "2", "--k")
    cases = []
    for _, A in _random_or_file_sets(args, "freiman_kfold"):
        for k in ks:
            cases.append(lambda A=A, k=k: check_freiman_kfold(A, k))
    return cases


def _v_freiman_lemma(args) -> list[Callable[[], Certificate]]:
    return [
        (lambda A=A: check_freiman_lemma(A))
        for _, A in _random_or_file_sets(args, "freiman_lemma")
    ]


def _v_simplex_formula(args) -> list[Callable[[], Certificate]]:
    if not (args.d and args.N and args.k):
        raise CliError("verify simplex_formula needs --d, --N and --k (ranges allowed)")
    ds = _parse_range(args.d, "--d")
    ns = _parse_range(args.N, "--N")
    ks = _parse_range(args.k, "--k")
    cases = [
        (lambda d=d, N=N, k=k: check_simplex_formula(d, N, k))
        for d in ds
        for N in ns
        if N >= d + 1
        for k in ks
    ]
    if not cases:
        raise CliError("no valid (d, N, k) combinations (need N >= d+1)")
    return cases


def _v_discrete_bm(args) -> list[Callable[[], Certificate]]:
    sets = _sets_arg(args, 1, "discrete_bm")
    basis = _load_basis(args.basis) if args.basis else None
    return [lambda: check_discrete_bm(sets, basis)]


def _v_ruzsa_triangle(args) -> list[Callable[[], Certificate]]:
    sets = _sets_arg(args, 3, "ruzsa_triangle")
    if len(sets) != 3:
        raise CliError("verify ruzsa_triangle needs exactly three sets U V W")
    U, V, W = sets
    return [lambda: check_ruzsa_triangle(U, V, W)]


def _v_plunnecke_ruzsa(args) -> list[Callable[[], Certificate]]:
    sets = _sets_arg(args, 2, "plunnecke_ruzsa")
    if len(sets) != 2:
        raise CliError("verify plunnecke_ruzsa needs exactly two sets A B")
    A, B = sets
    m = args.m if args.m is not None else 1
    n = args.n if args.n is not None else 1
    return [lambda: check_plunnecke_ruzsa(A, B, m, n)]


def _v_iterated_pr(args) -> list[Callable[[], Certificate]]:
    sets = _sets_arg(args, 2, "iterated_pr")
    return [lambda: check_iterated_pr(sets)]


def _v_linear_pr(args) -> list[Callable[[], Certificate]]:
    if not args.system or not args.set:
        raise CliError("verify linear_pr needs --system and --set")
    system = _load_system(args.system)
    A = _load_pointset(args.set)
    return [lambda: check_linear_pr(system, A)]


def _v_fiber_bound(args) -> list[Callable[[], Certificate]]:
    if not args.system or not args.set or not args.subspace:
        raise CliError("verify fiber_bound needs --system, --set and --subspace")
    system = _load_system(args.system)
    A = _load_pointset(args.set)
    vectors = _parse_vectors(args.subspace, "--subspace")
    U = Subspace.span(vectors, system.dim)
    return [lambda: check_fiber_bound(system, A, U)]


def _v_sum_monotone(args) -> list[Callable[[], Certificate]]:
    sets = _sets_arg(args, 1, "sum_monotone")
    dim = sets[0].dim
    if (args.axis is None) == (args.spec is None):
        raise CliError("verify sum_monotone needs exactly one of --axis or --spec")
    if args.axis is not None:
        spec = CompressionSpec.axis(args.axis, dim)
    else:
        spec = _load_spec(args.spec, dim)
    return [lambda: check_sum_monotone(sets, spec)]


def _v_projection_monotone(args) -> list[Callable[[], Certificate]]:
    sets = _sets_arg(args, 1, "projection_monotone")
    if args.axis is None or not args.coords:
        raise CliError("verify projection_monotone needs --axis and --coords")
    coords = _parse_ints(args.coords, "--coords")
    return [lambda: check_projection_monotone(sets, args.axis, None, coords)]


_VERIFY_BUILDERS: dict[str, Callable[[argparse.Namespace], list[Callable[[], Certificate]]]] = {
    "elementary": _v_elementary,
    "gs_kfold": _v_gs_kfold,
    "freiman_kfold": _v_freiman_kfold,
    "freiman_lemma": _v_freiman_lemma,
    "simplex_formula": _v_simplex_formula,
    "discrete_bm": _v_discrete_bm,
    "ruzsa_triangle": _v_ruzsa_triangle,
    "plunnecke_ruzsa": _v_plunnecke_ruzsa,
    "iterated_pr": _v_iterated_pr,
    "linear_pr": _v_linear_pr,
    "fiber_bound": _v_fiber_bound,
    "sum_monotone": _v_sum_monotone,
    "projection_monotone": _v_projection_monotone,
}


def _cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    builder = _VERIFY_BUILDERS.get(args.statement)
    if builder is None:
        known = ", ".join(sorted(_VERIFY_BUILDERS))
        raise CliError(f"unknown statement {args.statement!r} (known: {known})")
    cases = builder(args)
    try:
        certs = _run_cases(cases, config.jobs)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(str(exc)) from exc
    return _emit_certificates(certs, config)


# ---------------------------------------------------------------------------
# suite / probe
# ---------------------------------------------------------------------------


def _cmd_suite(args: argparse.Namespace, config: RunConfig) -> int:
    try:
        report = run_suite(args.name, jobs=config.jobs)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    for criterion in report.reports:
        print(criterion.summary_line(), file=sys.stderr)
        for failure in criterion.failures:
            print(f"    {failure}", file=sys.stderr)
    _emit_doc(report.to_dict(), config)
    return 0 if report.passed else 1


def _cmd_probe(args: argparse.Namespace, config: RunConfig) -> int:
    if args.kind in ("main-term", "det-main-term"):
        if not args.system or not args.set:
            raise CliError(f"probe {args.kind} needs --system and --set")
        system = _load_system(args.system)
        A = _load_pointset(args.set)
        probe = main_term_probe if args.kind == "main-term" else det_main_term_probe
        try:
            cert = probe(system, A)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        return _emit_certificates([cert], config)
    if args.kind == "khovanskii":
        if not args.set:
            raise CliError("probe khovanskii needs --set")
        A = _load_pointset(args.set)
        try:
            report = khovanskii_probe(A, args.k_max)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        _emit_doc(report.to_dict(), config)
        return 0
    raise CliError(f"unknown probe {args.kind!r}")  # pragma: no cover


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")
    common.add_argument("--jobs", type=int, default=1, help="concurrent sweep cases")
    common.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_POINT_BUDGET,
        help=f"refuse sums whose estimated size exceeds this (default {DEFAULT_POINT_BUDGET})",
    )
    common.add_argument(
        "--precision-cap",
        type=int,
        default=None,
        help="interval-arithmetic precision cap in bits (>= 128)",
    )
    common.add_argument("-o", "--out", default=None, help="write the report to a file")

    parser = argparse.ArgumentParser(
        prog="sumsetlab",
        description="Exact sumset computations with verifiable certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", parents=[common], help="emit generator families as JSON")
    p_gen.add_argument(
        "kind",
        choices=(
            "simplex",
            "simplex-summands",
            "simplex-sumset-form",
            "cube",
            "interval",
            "grid",
            "rotation",
            "shear",
            "shear-counterexample",
            "random",
            "random-full-dim",
            "random-system",
        ),
    )
    p_gen.add_argument("--d", type=int, default=None)
    p_gen.add_argument("--N", type=int, default=None)
    p_gen.add_argument("--k", type=int, default=None)
    p_gen.add_argument("--lo", type=int, default=None)
    p_gen.add_argument("--hi", type=int, default=None)
    p_gen.add_argument("--dims", default=None, help="grid shapes, e.g. 2x2,3x4")
    p_gen.add_argument("--size", type=int, default=None)
    p_gen.add_argument("--box", default=None, help="coordinate box LO,HI")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--entry-bound", type=int, default=2)

    p_sum = sub.add_parser("sumset", parents=[common], help="Minkowski, iterated, or weighted sums")
    p_sum.add_argument("--sets", nargs="+", default=None, help="summand files")
    p_sum.add_argument("--set", default=None, help="single summand file")
    p_sum.add_argument("--k", type=int, default=1, help="fold count for --set")
    p_sum.add_argument("--system", default=None, help="linear system file for --set")

    p_comp = sub.add_parser("compress", parents=[common], help="apply one compression")
    p_comp.add_argument("--set", required=True)
    p_comp.add_argument("--axis", type=int, default=None)
    p_comp.add_argument("--spec", default=None, help="compression spec file")

    p_red = sub.add_parser("reduce", parents=[common], help="reduce to the long simplex, emit the trace")
    p_red.add_argument("--set", required=True)
    p_red.add_argument("--max-steps", type=int, default=None)

    p_proj = sub.add_parser("project", parents=[common], help="project onto coordinates")
    p_proj.add_argument("--set", required=True)
    p_proj.add_argument("--coords", required=True, help="1-based coordinates, e.g. 1,3")
    p_proj.add_argument("--basis", default=None)

    p_ver = sub.add_parser("verify", parents=[common], help="emit certificates for one statement")
    p_ver.add_argument("statement", help=", ".join(sorted(_VERIFY_BUILDERS)))
    p_ver.add_argument("--sets", nargs="+", default=None)
    p_ver.add_argument("--set", default=None, help="file, or 'random' with --seed")
    p_ver.add_argument("--system", default=None)
    p_ver.add_argument("--basis", default=None)
    p_ver.add_argument("--grids", default=None, help="grid shapes, e.g. 2x2,2x2,2x2")
    p_ver.add_argument("--direction", default=None, help="line direction, e.g. 1,0")
    p_ver.add_argument("--d", default=None, help="dimension range, e.g. 2 or 2-4")
    p_ver.add_argument("--N", default=None, help="size range")
    p_ver.add_argument("--k", default=None, help="fold range")
    p_ver.add_argument("--m", type=int, default=None)
    p_ver.add_argument("--n", type=int, default=None)
    p_ver.add_argument("--axis", type=int, default=None)
    p_ver.add_argument("--coords", default=None)
    p_ver.add_argument("--spec", default=None)
    p_ver.add_argument("--subspace", default=None, help="basis vectors, e.g. 1,0;0,1")
    p_ver.add_argument("--seed", dest="seed_range", default="0", help="seed range for --set random")
    p_ver.add_argument("--size", type=int, default=8, help="size for --set random")
    p_ver.add_argument("--box", default=None, help="box for --set random")
    p_ver.add_argument(
        "--random-dim",
        dest="d_int",
        type=int,
        default=2,
        help="dimension for --set random",
    )

    p_suite = sub.add_parser("suite", parents=[common], help="run a verification suite")
    p_suite.add_argument("name", choices=("smoke", "full"))

    p_probe = sub.add_parser("probe", parents=[common], help="asymptotic probes")
    p_probe.add_argument("kind", choices=("main-term", "det-main-term", "khovanskii"))
    p_probe.add_argument("--system", default=None)
    p_probe.add_argument("--set", default=None)
    p_probe.add_argument("--k-max", type=int, default=6)

    return parser


_COMMANDS = {
    "gen": _cmd_gen,
    "sumset": _cmd_sumset,
    "compress": _cmd_compress,
    "reduce": _cmd_reduce,
    "project": _cmd_project,
    "verify": _cmd_verify,
    "suite": _cmd_suite,
    "probe": _cmd_probe,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            fmt=args.fmt,
            jobs=args.jobs,
            budget=args.budget,
            precision_cap=args.precision_cap,
            out=args.out,
        )
        if config.precision_cap is not None:
            os.environ["SUMSETLAB_PRECISION_CAP"] = str(config.precision_cap)
        return _COMMANDS[args.command](args, config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
