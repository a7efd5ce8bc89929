"""Attributed graphs over a fixed real feature space, and their matrix form.

Nodes and edges carry attributes from R^d.  The zero vector doubles as the
null attribute: a zero off-diagonal cell means "no edge", and an isolated
node with zero attribute is a padding ("null") node.  Because of this
convention a genuine zero edge attribute is unrepresentable, and the format
rejects it.  Node attributes may be zero.

Graph file format (JSON, UTF-8)::

    {
      "directed": false,
      "attr_dim": 1,
      "nodes": [[1.0], [2.0]],
      "edges": [{"from": 0, "to": 1, "attr": [3.0]}]
    }

``nodes`` lists one length-d attribute per node.  ``edges`` uses 0-based
endpoints with ``from != to``; undirected graphs list each edge once and the
loader symmetrizes.  Serialization writes floats with full round-trip
precision.

A graph of order n maps to an n x n matrix of attributes: node attributes on
the diagonal, edge attributes off it, zero cells for non-edges.  Flattened
row-major, that matrix is a point of the Euclidean space R^(n*n*d) on which
all norms and inner products below are taken.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Mapping

import numpy as np

__all__ = [
    "GraphFormatError",
    "AttributedGraph",
    "GraphMatrix",
    "parse_graph",
    "serialize_graph",
    "load_graph",
    "pad_to_order",
    "strip_null_nodes",
    "to_matrix",
    "from_matrix",
    "pad_pair",
    "PADDING_MODES",
]

PADDING_MODES = ("bound", "pairwise-sum")


class GraphFormatError(ValueError):
    """Malformed graph input or violated structural invariant."""


def _as_attr(value, dim: int, what: str) -> tuple[float, ...]:
    if not isinstance(value, (list, tuple)):
        raise GraphFormatError(f"{what}: attribute must be a sequence of reals")
    attr = []
    for v in value:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise GraphFormatError(f"{what}: attribute components must be reals")
        f = float(v)
        if not math.isfinite(f):
            raise GraphFormatError(f"{what}: attribute components must be finite")
        attr.append(f)
    if len(attr) != dim:
        raise GraphFormatError(
            f"{what}: attribute has dimension {len(attr)}, expected {dim}"
        )
    return tuple(attr)


def _is_zero(attr: tuple[float, ...]) -> bool:
    return all(v == 0.0 for v in attr)


class AttributedGraph:
    """Immutable graph with node and edge attributes in R^d.

    Edge attributes are stored for both orientations of a pair; undirected
    graphs keep them symmetric.  Zero edge attributes are rejected (zero
    means "no edge").
    """

    __slots__ = ("directed", "dim", "node_attrs", "_edges")

    def __init__(
        self,
        directed: bool,
        dim: int,
        node_attrs: Iterable,
        edge_attrs: Mapping | Iterable = (),
    ):
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise GraphFormatError("attr_dim must be an integer >= 1")
        object.__setattr__(self, "directed", bool(directed))
        object.__setattr__(self, "dim", dim)
        nodes = tuple(_as_attr(a, dim, f"node {i}") for i, a in enumerate(node_attrs))
        object.__setattr__(self, "node_attrs", nodes)
        n = len(nodes)

        items = edge_attrs.items() if isinstance(edge_attrs, Mapping) else edge_attrs
        edges: dict[tuple[int, int], tuple[float, ...]] = {}
        for (i, j), raw in items:
            if not isinstance(i, int) or not isinstance(j, int):
                raise GraphFormatError("edge endpoints must be integers")
            if not (0 <= i < n and 0 <= j < n):
                raise GraphFormatError(f"edge ({i},{j}) endpoint out of range")
            if i == j:
                raise GraphFormatError(
                    f"self-loop edge entry ({i},{i}); node attributes belong in nodes"
                )
            attr = _as_attr(raw, dim, f"edge ({i},{j})")
            if _is_zero(attr):
                raise GraphFormatError(f"zero edge attribute on ({i},{j})")
            for key in ((i, j), (j, i)) if not self.directed else ((i, j),):
                if key in edges:
                    if edges[key] != attr:
                        raise GraphFormatError(
                            f"conflicting attributes for edge {key}"
                        )
                else:
                    edges[key] = attr
        object.__setattr__(self, "_edges", edges)

    def __setattr__(self, name, value):
        raise AttributeError("AttributedGraph is immutable")

    @property
    def order(self) -> int:
        return len(self.node_attrs)

    def edge_attr(self, i: int, j: int) -> tuple[float, ...] | None:
        return self._edges.get((i, j))

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self._edges

    @property
    def edges(self) -> tuple[tuple[int, int, tuple[float, ...]], ...]:
        """Canonical edge listing: each undirected edge appears once (i < j)."""
        if self.directed:
            keys = sorted(self._edges)
        else:
            keys = sorted(k for k in self._edges if k[0] < k[1])
        return tuple((i, j, self._edges[(i, j)]) for i, j in keys)

    def degree(self, i: int) -> int:
        return sum(1 for (a, b) in self._edges if a == i or b == i)

    def is_null_node(self, i: int) -> bool:
        """True for an isolated node carrying the zero attribute."""
        return _is_zero(self.node_attrs[i]) and self.degree(i) == 0

    def _key(self):
        return (self.directed, self.dim, self.node_attrs, self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AttributedGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return (
            f"AttributedGraph({kind}, order={self.order}, dim={self.dim}, "
            f"edges={len(self.edges)})"
        )


class GraphMatrix:
    """Order-n square array of attribute vectors: one point of R^(n*n*d).

    The diagonal holds node attributes, off-diagonal cells hold edge
    attributes (zero meaning no edge).  Cells are read-only float64.
    """

    __slots__ = ("cells",)

    def __init__(self, cells):
        arr = np.array(cells, dtype=np.float64)
        if arr.ndim == 2:  # d = 1 convenience
            arr = arr[:, :, None]
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] < 1:
            raise GraphFormatError(
                f"matrix cells must have shape (n, n, d), got {arr.shape}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "cells", arr)

    def __setattr__(self, name, value):
        raise AttributeError("GraphMatrix is immutable")

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    @property
    def dim(self) -> int:
        return self.cells.shape[2]

    def flatten(self) -> np.ndarray:
        """Row-major flattening: the Euclidean point representing the graph."""
        return self.cells.ravel()

    def norm(self) -> float:
        return float(np.linalg.norm(self.cells))

    def inner(self, other: "GraphMatrix") -> float:
        return float(np.einsum("ijc,ijc->", self.cells, other.cells))

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.cells, self.cells.transpose(1, 0, 2)))

    def to_bytes(self) -> bytes:
        return self.cells.tobytes()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphMatrix):
            return NotImplemented
        return self.cells.shape == other.cells.shape and bool(
            np.array_equal(self.cells, other.cells)
        )

    def __hash__(self) -> int:
        return hash((self.cells.shape, self.to_bytes()))

    def __repr__(self) -> str:
        return f"GraphMatrix(n={self.n}, dim={self.dim})"


def parse_graph(text: str) -> AttributedGraph:
    """Parse the JSON graph format; raises GraphFormatError on any violation."""
    try:
        doc = json.loads(
            text, parse_constant=lambda c: (_ for _ in ()).throw(ValueError(c))
        )
    except ValueError as exc:
        raise GraphFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphFormatError("top-level value must be an object")
    for key in ("directed", "attr_dim", "nodes", "edges"):
        if key not in doc:
            raise GraphFormatError(f"missing key {key!r}")
    if not isinstance(doc["directed"], bool):
        raise GraphFormatError("directed must be a boolean")
    dim = doc["attr_dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise GraphFormatError("attr_dim must be an integer >= 1")
    if not isinstance(doc["nodes"], list) or not isinstance(doc["edges"], list):
        raise GraphFormatError("nodes and edges must be arrays")
    edge_items = []
    for k, e in enumerate(doc["edges"]):
        if not isinstance(e, dict) or not {"from", "to", "attr"} <= set(e):
            raise GraphFormatError(f"edge {k}: expected object with from/to/attr")
        i, j = e["from"], e["to"]
        if isinstance(i, bool) or isinstance(j, bool):
            raise GraphFormatError(f"edge {k}: endpoints must be integers")
        edge_items.append(((i, j), e["attr"]))
    return AttributedGraph(doc["directed"], dim, doc["nodes"], edge_items)


def serialize_graph(g: AttributedGraph) -> str:
    """Serialize to the JSON format; round-trips through parse_graph exactly."""
    doc = {
        "directed": g.directed,
        "attr_dim": g.dim,
        "nodes": [list(a) for a in g.node_attrs],
        "edges": [
            {"from": i, "to": j, "attr": list(attr)} for i, j, attr in g.edges
        ],
    }
    return json.dumps(doc, separators=(",", ":"))


def load_graph(path) -> AttributedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def pad_to_order(g: AttributedGraph, n: int) -> AttributedGraph:
    """Append null-nodes until the graph has order n (isomorphism-preserving)."""
    if n < g.order:
        raise ValueError(f"cannot pad order {g.order} down to {n}")
    if n == g.order:
        return g
    zero = (0.0,) * g.dim
    nodes = g.node_attrs + (zero,) * (n - g.order)
    return AttributedGraph(g.directed, g.dim, nodes, [((i, j), a) for i, j, a in g.edges])


def strip_null_nodes(g: AttributedGraph) -> AttributedGraph:
    """Remove every isolated zero-attribute node."""
    keep = [i for i in range(g.order) if not g.is_null_node(i)]
    index = {old: new for new, old in enumerate(keep)}
    nodes = [g.node_attrs[i] for i in keep]
    edges = [((index[i], index[j]), a) for i, j, a in g.edges]
    return AttributedGraph(g.directed, g.dim, nodes, edges)


def to_matrix(g: AttributedGraph) -> GraphMatrix:
    """Matrix representation: diagonal node attributes, off-diagonal edges."""
    n = g.order
    cells = np.zeros((n, n, g.dim))
    for i, attr in enumerate(g.node_attrs):
        cells[i, i] = attr
    for (i, j), attr in g._edges.items():
        cells[i, j] = attr
    return GraphMatrix(cells)


def from_matrix(m: GraphMatrix, directed: bool) -> AttributedGraph:
    """Inverse of to_matrix.  Undirected output requires symmetric cells."""
    if not directed and not m.is_symmetric():
        raise GraphFormatError("asymmetric matrix cannot represent an undirected graph")
    n = m.n
    nodes = [tuple(float(v) for v in m.cells[i, i]) for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n) if directed else range(i + 1, n):
            if i == j:
                continue
            attr = tuple(float(v) for v in m.cells[i, j])
            if not _is_zero(attr):
                edges.append(((i, j), attr))
    return AttributedGraph(directed, m.dim, nodes, edges)


def pad_pair(
    x: AttributedGraph,
    y: AttributedGraph,
    padding: str = "bound",
    order: int | None = None,
) -> tuple[AttributedGraph, AttributedGraph, int]:
    """Size-align two graphs.

    ``pairwise-sum`` pads both to order(x) + order(y); ``bound`` pads both to
    a fixed order (given, or the larger of the two).  Fixed-order padding is
    what makes distances across a whole collection a metric.
    """
    if x.dim != y.dim:
        raise GraphFormatError(f"dimension mismatch: {x.dim} vs {y.dim}")
    if padding == "pairwise-sum":
        n = x.order + y.order
    elif padding == "bound":
        n = max(x.order, y.order) if order is None else order
        if n < max(x.order, y.order):
            raise ValueError(f"bound order {n} below graph order {max(x.order, y.order)}")
    else:
        raise ValueError(f"unknown padding mode {padding!r}")
    return pad_to_order(x, n), pad_to_order(y, n), n
