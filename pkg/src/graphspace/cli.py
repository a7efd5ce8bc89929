"""Command-line surface: distances, kernels, Gram matrices, alignments,
sample means, and the verification suites.

Exit codes: 0 success, 1 malformed input or failed validation, 2 order guard
exceeded, 3 unknown check suite.  All output is deterministic for fixed
inputs, flags, and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .alignment import Alignment
from .geometry import GraphSpaceConfig, sample_mean
from .graphs import GraphFormatError, load_graph, serialize_graph
from .kernels import DELTA, DOT, EditCost, edit_kernel, general_ged, induced_metric
from .orbits import DEFAULT_ORDER_GUARD, OrderGuardError
from .suites import SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_GUARD = 2
EXIT_SUITE = 3

_SCORES = {"dot": DOT, "delta": DELTA}


def _env_guard() -> int:
    raw = os.environ.get("GED_ORDER_GUARD")
    if raw is None:
        return DEFAULT_ORDER_GUARD
    try:
        return int(raw)
    except ValueError:
        raise GraphFormatError(f"GED_ORDER_GUARD is not an integer: {raw!r}")


def _add_shared(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--score", choices=sorted(_SCORES), default="dot")
    sp.add_argument(
        "--class", dest="morphisms", choices=("all", "compact"), default="all"
    )
    sp.add_argument("--pad", choices=("bound", "pairwise-sum"), default="bound")
    sp.add_argument("--order", type=int, default=None, help="fixed padding order")
    sp.add_argument("--guard", type=int, default=None, help="permutation order guard")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("-o", "--output", default=None, help="write output to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphspace",
        description="Exact graph edit kernels and the geometry of their metric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="metric between two graph files")
    p.add_argument("files", nargs=2)
    p.add_argument("--witness", action="store_true", help="also print the minimizer")
    _add_shared(p)

    p = sub.add_parser("kernel", help="edit kernel between two graph files")
    p.add_argument("files", nargs=2)
    p.add_argument("--witness", action="store_true", help="also print the maximizer")
    _add_shared(p)

    p = sub.add_parser("gram", help="pairwise kernel or distance matrix as CSV")
    p.add_argument("paths", nargs="+", help="graph files, or one directory of .json files")
    p.add_argument("--kind", choices=("kernel", "distance"), default="distance")
    _add_shared(p)

    p = sub.add_parser("align", help="aligned matrices of graphs along a center")
    p.add_argument("center")
    p.add_argument("graphs", nargs="+")
    _add_shared(p)

    p = sub.add_parser("mean", help="Frechet sample mean of graph files")
    p.add_argument("graphs", nargs="+")
    p.add_argument("--max-iter", type=int, default=100)
    _add_shared(p)

    p = sub.add_parser("check", help="run a named verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--trials", type=int, default=None)
    _add_shared(p)

    return parser


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(output).write_text(text, encoding="utf-8")


def _witness_line(perm) -> str:
    return "witness " + " ".join(str(i) for i in perm.images)


def cmd_dist(args, guard: int) -> int:
    x, y = (load_graph(f) for f in args.files)
    score = _SCORES[args.score]
    res = general_ged(
        x, y, EditCost.from_kernel(score), args.morphisms, args.pad, args.order, guard
    )
    delta = max(res.value, 0.0) ** 0.5
    lines = [f"{delta:.12f}"]
    if args.witness:
        lines.append(_witness_line(res.witness))
    _emit("\n".join(lines), args.output)
    return EXIT_OK


def cmd_kernel(args, guard: int) -> int:
    x, y = (load_graph(f) for f in args.files)
    res = edit_kernel(
        x, y, _SCORES[args.score], args.morphisms, args.pad, args.order, guard
    )
    lines = [f"{res.value:.12f}"]
    if args.witness:
        lines.append(_witness_line(res.witness))
    _emit("\n".join(lines), args.output)
    return EXIT_OK


def _resolve_collection(paths: list[str]) -> list[Path]:
    if len(paths) == 1 and Path(paths[0]).is_dir():
        files = sorted(Path(paths[0]).glob("*.json"), key=lambda p: p.name)
        if not files:
            raise GraphFormatError(f"no .json graph files in {paths[0]}")
        return files
    return sorted((Path(p) for p in paths), key=lambda p: p.name)


def _validate_distance_matrix(m: list[list[float]], tol: float) -> None:
    k = len(m)
    for i in range(k):
        if abs(m[i][i]) > tol:
            raise GraphFormatError(f"distance matrix diagonal not zero at {i}")
        for j in range(k):
            if abs(m[i][j] - m[j][i]) > tol:
                raise GraphFormatError(f"distance matrix not symmetric at ({i},{j})")
            for l in range(k):
                if m[i][l] > m[i][j] + m[j][l] + tol:
                    raise GraphFormatError(
                        f"triangle inequality violated at ({i},{j},{l})"
                    )


def cmd_gram(args, guard: int) -> int:
    files = _resolve_collection(args.paths)
    graphs = [load_graph(f) for f in files]
    dims = {g.dim for g in graphs}
    if len(dims) != 1:
        raise GraphFormatError(f"mixed attribute dimensions: {sorted(dims)}")
    order = args.order if args.order is not None else max(g.order for g in graphs)
    score = _SCORES[args.score]
    k = len(graphs)

    def entry(pair):
        i, j = pair
        if args.kind == "kernel":
            return edit_kernel(
                graphs[i], graphs[j], score, args.morphisms, "bound", order, guard
            ).value
        return induced_metric(graphs[i], graphs[j], score, "bound", order, guard)

    pairs = [(i, j) for i in range(k) for j in range(k)]
    with ThreadPoolExecutor(max_workers=min(4, max(1, len(pairs)))) as pool:
        values = list(pool.map(entry, pairs))
    matrix = [[values[i * k + j] for j in range(k)] for i in range(k)]
    if args.kind == "distance":
        _validate_distance_matrix(matrix, args.tol)
    lines = [",".join(f.name for f in files)]
    lines += [",".join(f"{v:.12g}" for v in row) for row in matrix]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_align(args, guard: int) -> int:
    center = load_graph(args.center)
    graphs = [load_graph(p) for p in args.graphs]
    order = args.order
    if order is None:
        order = max(center.order, max(g.order for g in graphs))
    aligner = Alignment(center, order=order, guard=guard)
    payload = [aligner.align(g).cells.tolist() for g in graphs]
    _emit(json.dumps(payload), args.output)
    return EXIT_OK


def cmd_mean(args, guard: int) -> int:
    graphs = [load_graph(p) for p in args.graphs]
    cfg = GraphSpaceConfig(order=args.order, guard=guard)
    res = sample_mean(graphs, max_iter=args.max_iter, seed=args.seed, config=cfg)
    payload = {
        "mean": json.loads(serialize_graph(res.mean)),
        "frechet_value": res.frechet_value,
        "trace": list(res.trace),
        "converged": res.converged,
    }
    if not res.converged:
        print(f"warning: mean iteration hit max_iter={args.max_iter}", file=sys.stderr)
    _emit(json.dumps(payload), args.output)
    return EXIT_OK


def cmd_check(args, guard: int) -> int:
    if args.suite not in SUITE_NAMES:
        print(
            f"unknown suite {args.suite!r}; available: {', '.join(SUITE_NAMES)}",
            file=sys.stderr,
        )
        return EXIT_SUITE
    report = run_suite(args.suite, args.trials, args.seed, args.tol, guard)
    text = "\n".join(report.lines())
    _emit(text, args.output)
    return EXIT_OK if report.passed else 1


_COMMANDS = {
    "dist": cmd_dist,
    "kernel": cmd_kernel,
    "gram": cmd_gram,
    "align": cmd_align,
    "mean": cmd_mean,
    "check": cmd_check,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        guard = args.guard if args.guard is not None else _env_guard()
        return _COMMANDS[args.command](args, guard)
    except OrderGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (GraphFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
