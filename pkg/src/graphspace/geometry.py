"""Geometric structure of the graph metric space: length, angle, midpoints,
and iterative Fréchet sample means.

All operations here use the dot edit score; the induced metric is the
quotient metric of the permutation action, so representation-level averaging
(after optimal alignment) is legitimate and is what the midpoint and mean
constructions rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .graphs import (
    AttributedGraph,
    GraphMatrix,
    from_matrix,
    pad_pair,
    pad_to_order,
    strip_null_nodes,
    to_matrix,
)
from .kernels import DOT, EditScore, edit_kernel
from .orbits import (
    DEFAULT_ORDER_GUARD,
    apply_action,
    check_order_guard,
    min_sq_over_group,
    quotient_distance,
)

__all__ = [
    "GraphSpaceConfig",
    "kernel_value",
    "metric",
    "scalar_mult",
    "length",
    "angle_cosine",
    "is_orthogonal",
    "is_orthogonal_to_set",
    "cauchy_schwarz_gap",
    "midpoint",
    "sample_mean",
    "MeanResult",
]


@dataclass(frozen=True)
class GraphSpaceConfig:
    """Shared settings for all graphs entering one geometric computation."""

    score: EditScore = DOT
    padding: str = "bound"
    order: int | None = None
    guard: int = DEFAULT_ORDER_GUARD

    def __post_init__(self):
        if self.score.kind != "dot":
            raise ValueError("geometric operations are defined for the dot score")


_DEFAULT = GraphSpaceConfig()


def _cfg(config: GraphSpaceConfig | None) -> GraphSpaceConfig:
    return _DEFAULT if config is None else config


def _matrices(
    x: AttributedGraph, y: AttributedGraph, cfg: GraphSpaceConfig
) -> tuple[GraphMatrix, GraphMatrix]:
    xp, yp, n = pad_pair(x, y, cfg.padding, cfg.order)
    check_order_guard(n, cfg.guard)
    return to_matrix(xp), to_matrix(yp)


def kernel_value(
    x: AttributedGraph, y: AttributedGraph, config: GraphSpaceConfig | None = None
) -> float:
    """Edit kernel over the full group: max over gamma of <x, gamma y>."""
    cfg = _cfg(config)
    return edit_kernel(x, y, cfg.score, "all", cfg.padding, cfg.order, cfg.guard).value


def metric(
    x: AttributedGraph, y: AttributedGraph, config: GraphSpaceConfig | None = None
) -> float:
    """The induced metric: min over gamma of ||x - gamma y||."""
    cfg = _cfg(config)
    xm, ym = _matrices(x, y, cfg)
    best_sq, _ = min_sq_over_group(xm.cells, ym.cells)
    return math.sqrt(max(best_sq, 0.0))


def scalar_mult(lam: float, x: AttributedGraph) -> AttributedGraph:
    """Multiply every node and edge attribute by lam (lam = 0 is rejected:
    it would zero out edge attributes; the zero graph is the all-null graph)."""
    if lam == 0.0:
        raise ValueError("scalar 0 would create zero edge attributes")
    nodes = [tuple(lam * v for v in a) for a in x.node_attrs]
    edges = [((i, j), tuple(lam * v for v in a)) for i, j, a in x.edges]
    return AttributedGraph(x.directed, x.dim, nodes, edges)


def length(x: AttributedGraph) -> float:
    """Euclidean norm of any matrix representation.

    The identity bijection maximizes the self-score, so no optimization is
    needed; padding adds zero cells and leaves the norm unchanged.
    """
    return to_matrix(x).norm()


def angle_cosine(
    x: AttributedGraph, y: AttributedGraph, config: GraphSpaceConfig | None = None
) -> float:
    """Cosine of the angle between nonzero graphs: kernel / (length*length)."""
    lx, ly = length(x), length(y)
    if lx == 0.0 or ly == 0.0:
        raise ValueError("angle undefined for zero-length graphs")
    c = kernel_value(x, y, config) / (lx * ly)
    return min(1.0, max(-1.0, c))


def is_orthogonal(
    x: AttributedGraph,
    y: AttributedGraph,
    config: GraphSpaceConfig | None = None,
    tol: float = 1e-9,
) -> bool:
    return abs(kernel_value(x, y, config)) <= tol


def is_orthogonal_to_set(
    x: AttributedGraph,
    graphs: Sequence[AttributedGraph],
    config: GraphSpaceConfig | None = None,
    tol: float = 1e-9,
) -> bool:
    """True when the kernel with x is constant across the set (within tol)."""
    values = [kernel_value(x, g, config) for g in graphs]
    if len(values) < 2:
        return True
    return max(values) - min(values) <= tol


def cauchy_schwarz_gap(
    x: AttributedGraph, y: AttributedGraph, config: GraphSpaceConfig | None = None
) -> float:
    """length(x)*length(y) - |kernel(x,y)|; nonnegative, zero for positively
    dependent pairs."""
    return length(x) * length(y) - abs(kernel_value(x, y, config))


def _graph_of(cells: np.ndarray, directed: bool) -> AttributedGraph:
    return strip_null_nodes(from_matrix(GraphMatrix(cells), directed))


def midpoint(
    x: AttributedGraph, y: AttributedGraph, config: GraphSpaceConfig | None = None
) -> AttributedGraph:
    """Geodesic midpoint: average of optimally aligned representations.

    Null-nodes are stripped from the result, and off-diagonal cells that
    average to exact zero become non-edges.  Both distances to the midpoint
    equal half the distance between the inputs.
    """
    if x.directed != y.directed:
        raise ValueError("midpoint requires a common directedness")
    cfg = _cfg(config)
    xm, ym = _matrices(x, y, cfg)
    aligned = apply_action(quotient_distance(xm, ym, cfg.guard).witness, ym)
    return _graph_of((xm.cells + aligned.cells) / 2.0, x.directed)


class MeanResult(NamedTuple):
    mean: AttributedGraph
    frechet_value: float
    trace: tuple[float, ...]
    converged: bool


def sample_mean(
    graphs: Sequence[AttributedGraph],
    max_iter: int = 100,
    seed: int | None = None,
    config: GraphSpaceConfig | None = None,
) -> MeanResult:
    """Fréchet sample mean by alternating alignment and averaging.

    Starts from the input graph with the smallest sum of squared distances,
    then repeats: align every representation optimally to the current mean,
    replace the mean by the arithmetic average of the aligned
    representations.  Each full iteration cannot increase the objective, so
    the returned trace is non-increasing; iteration stops at a fixed point or
    after max_iter rounds.  This is a local method: the trace converges but
    the limit need not be a global minimizer on symmetric configurations.

    ``seed`` is accepted for interface stability (stochastic restarts of the
    same signature); the core iteration is deterministic and ignores it.
    """
    del seed
    if not graphs:
        raise ValueError("sample_mean requires at least one graph")
    cfg = _cfg(config)
    directed = graphs[0].directed
    dim = graphs[0].dim
    for g in graphs:
        if g.directed != directed or g.dim != dim:
            raise ValueError("graphs must share directedness and attribute dimension")
    n = cfg.order if cfg.order is not None else max(g.order for g in graphs)
    if n < max(g.order for g in graphs):
        raise ValueError("configured order below the largest input graph")
    check_order_guard(n, cfg.guard)
    mats = [to_matrix(pad_to_order(g, n)) for g in graphs]

    def objective(cells: np.ndarray) -> float:
        return sum(min_sq_over_group(cells, m.cells)[0] for m in mats)

    frechet = [objective(m.cells) for m in mats]
    cur = mats[int(np.argmin(frechet))].cells
    trace = [min(frechet)]
    converged = False
    for _ in range(max_iter):
        aligned = [
            apply_action(quotient_distance(GraphMatrix(cur), m, cfg.guard).witness, m).cells
            for m in mats
        ]
        new = np.mean(aligned, axis=0)
        # accept only strict improvements: the trace stays non-increasing and
        # rounding noise in the average cannot displace an exact fixed point
        value = objective(new)
        if value >= trace[-1]:
            converged = True
            break
        cur = new
        trace.append(value)
    return MeanResult(_graph_of(cur, directed), trace[-1], tuple(trace), converged)
