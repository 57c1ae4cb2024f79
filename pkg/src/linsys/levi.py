"""Levi (point-line incidence) graphs, girth, and the girth/Euler edge bound.

The bound is one-sided: a planar graph of girth k >= 3 on V vertices has at
most k(V - 2)/(k - 2) edges, so exceeding it certifies non-planarity.
Staying under it certifies nothing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .core import LinearSystem
from .errors import LabelCountMismatch

INFINITE = math.inf


@dataclass(frozen=True)
class BipartiteIncidenceGraph:
    """Vertices 0..P-1 are points, P..P+L-1 are lines; edges are (point, line)."""

    point_vertices: int
    line_vertices: int
    edges: tuple[tuple[int, int], ...]

    @property
    def vertex_count(self) -> int:
        return self.point_vertices + self.line_vertices

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.vertex_count
        adj = [[] for _ in range(n)]
        for x, l in self.edges:
            v = self.point_vertices + l
            adj[x].append(v)
            adj[v].append(x)
        indptr = np.zeros(n + 1, np.int64)
        indptr[1:] = np.cumsum([len(a) for a in adj])
        indices = np.array([w for a in adj for w in sorted(a)], dtype=np.int64)
        return indptr, indices


@dataclass(frozen=True)
class PlanarityBoundReport:
    vertex_count: int
    edge_count: int
    girth: float | int
    bound_value: Fraction
    certified_nonplanar: bool


def levi_graph(ls: LinearSystem) -> BipartiteIncidenceGraph:
    edges = tuple((x, j) for j, line in enumerate(ls.lines) for x in sorted(line))
    return BipartiteIncidenceGraph(ls.num_points, ls.num_lines, tuple(sorted(edges)))


def girth(g: BipartiteIncidenceGraph, backend: str | None = None):
    """Shortest cycle length, or :data:`INFINITE` for a forest."""
    indptr, indices = g.csr()
    k = int(_kernels.kernel("girth", backend)(indptr, indices))
    return INFINITE if k < 0 else k


def planarity_bound(g: BipartiteIncidenceGraph, backend: str | None = None) -> PlanarityBoundReport:
    k = girth(g, backend)
    v, e = g.vertex_count, g.edge_count
    if k == INFINITE:
        bound = Fraction(max(v - 1, 0))
    else:
        bound = Fraction(k * (v - 2), k - 2)
    return PlanarityBoundReport(v, e, k, bound, e > bound)


def export_dot(g: BipartiteIncidenceGraph, point_labels, line_labels) -> str:
    """Graphviz text: points as circles, lines as boxes, stable ordering."""
    point_labels = list(point_labels)
    line_labels = list(line_labels)
    if len(point_labels) != g.point_vertices or len(line_labels) != g.line_vertices:
        raise LabelCountMismatch(
            f"expected {g.point_vertices} point and {g.line_vertices} line labels, "
            f"got {len(point_labels)} and {len(line_labels)}"
        )

    def q(s: str) -> str:
        return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'

    out = ["graph levi {"]
    for i, label in enumerate(point_labels):
        out.append(f"  p{i} [shape=circle, label={q(label)}];")
    for j, label in enumerate(line_labels):
        out.append(f"  l{j} [shape=box, label={q(label)}];")
    for x, j in g.edges:
        out.append(f"  p{x} -- l{j};")
    out.append("}")
    return "\n".join(out) + "\n"
