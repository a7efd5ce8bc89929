"""Seeded random graph generators and the small unit-label catalog."""

from __future__ import annotations

import numpy as np

from .graphs import AttributedGraph, from_matrix, to_matrix
from .orbits import Permutation, apply_action, is_ordinary

__all__ = [
    "random_graph",
    "random_ordinary_graph",
    "relabeled",
    "unit_path",
    "unit_cycle",
    "unit_star",
    "unit_complete",
    "unit_catalog",
]


def _attr(rng: np.random.Generator, dim: int, kind: str, edge: bool):
    if kind == "gauss":
        a = rng.standard_normal(dim)
        while edge and not np.any(a != 0.0):
            a = rng.standard_normal(dim)
    elif kind == "int":
        a = rng.integers(-3, 4, dim)
        while edge and not np.any(a != 0):
            a = rng.integers(-3, 4, dim)
    elif kind == "nonneg":
        a = rng.uniform(0.0, 2.0, dim) if not edge else rng.uniform(0.1, 2.0, dim)
    else:
        raise ValueError(f"unknown attribute kind {kind!r}")
    return tuple(float(v) for v in a)


def random_graph(
    rng: np.random.Generator,
    order: int,
    dim: int = 1,
    directed: bool = False,
    edge_prob: float = 0.5,
    attrs: str = "gauss",
) -> AttributedGraph:
    nodes = [_attr(rng, dim, attrs, edge=False) for _ in range(order)]
    edges = []
    pairs = (
        [(i, j) for i in range(order) for j in range(order) if i != j]
        if directed
        else [(i, j) for i in range(order) for j in range(i + 1, order)]
    )
    for i, j in pairs:
        if rng.uniform() < edge_prob:
            edges.append(((i, j), _attr(rng, dim, attrs, edge=True)))
    return AttributedGraph(directed, dim, nodes, edges)


def random_ordinary_graph(
    rng: np.random.Generator, order: int, dim: int = 1, **kwargs
) -> AttributedGraph:
    while True:
        g = random_graph(rng, order, dim, **kwargs)
        if is_ordinary(to_matrix(g)):
            return g


def relabeled(rng: np.random.Generator, g: AttributedGraph) -> AttributedGraph:
    """An isomorphic copy of g under a random node relabeling."""
    perm = Permutation(tuple(int(v) for v in rng.permutation(g.order)))
    return from_matrix(apply_action(perm, to_matrix(g)), g.directed)


def _unit_graph(order: int, pairs) -> AttributedGraph:
    return AttributedGraph(
        False, 1, [(1.0,)] * order, [((i, j), (1.0,)) for i, j in pairs]
    )


def unit_path(order: int) -> AttributedGraph:
    return _unit_graph(order, [(i, i + 1) for i in range(order - 1)])


def unit_cycle(order: int) -> AttributedGraph:
    if order < 3:
        raise ValueError("cycles need at least 3 nodes")
    return _unit_graph(order, [(i, (i + 1) % order) for i in range(order)])


def unit_star(order: int) -> AttributedGraph:
    if order < 2:
        raise ValueError("stars need at least 2 nodes")
    return _unit_graph(order, [(0, i) for i in range(1, order)])


def unit_complete(order: int) -> AttributedGraph:
    return _unit_graph(order, [(i, j) for i in range(order) for j in range(i + 1, order)])


def unit_catalog(max_order: int = 4) -> list[AttributedGraph]:
    """Unit-labeled paths, cycles, stars, and complete graphs up to max_order."""
    catalog = [unit_path(k) for k in range(1, max_order + 1)]
    catalog += [unit_cycle(k) for k in range(3, max_order + 1)]
    catalog += [unit_star(k) for k in range(3, max_order + 1)]
    catalog += [unit_complete(k) for k in range(2, max_order + 1)]
    return catalog
