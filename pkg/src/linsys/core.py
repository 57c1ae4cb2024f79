"""Incidence-structure data model for finite linear systems.

A linear system is a list of point labels together with a family of lines,
each line a set of point indices, such that two distinct lines share at
most one point.  Every value here is immutable; operations return new
systems.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DuplicateInducedLine,
    DuplicateLine,
    DuplicatePoint,
    EmptyLine,
    IndexOutOfRange,
    PairwiseIntersectionViolation,
    SizeLimitExceeded,
    UnknownPoint,
    UnknownPointInLine,
)

#: Default cap on reduced point count for :func:`are_isomorphic`.
ISOMORPHISM_POINT_CAP = 40


@dataclass(frozen=True)
class LinearSystem:
    """Points (opaque unique labels) and lines (frozensets of point indices).

    Construction checks every invariant; use :func:`validate` to build one
    from label-based input.
    """

    points: tuple[str, ...]
    lines: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "lines", tuple(frozenset(l) for l in self.lines))
        seen = {}
        for i, label in enumerate(self.points):
            if label in seen:
                raise DuplicatePoint(f"point {label!r} listed twice")
            seen[label] = i
        n = len(self.points)
        masks = []
        first_of = {}
        for j, line in enumerate(self.lines):
            if not line:
                raise EmptyLine(f"line {j} is empty")
            for x in line:
                if not (0 <= x < n):
                    raise UnknownPointInLine(f"line {j} references point index {x}")
            if line in first_of:
                raise DuplicateLine(
                    f"lines {first_of[line]} and {j} are the same set "
                    f"{{{', '.join(self.points[x] for x in sorted(line))}}}"
                )
            first_of[line] = j
            m = 0
            for x in line:
                m |= 1 << x
            masks.append(m)
        for a, b in itertools.combinations(range(len(masks)), 2):
            common = masks[a] & masks[b]
            if common & (common - 1):
                shared = sorted(self.lines[a] & self.lines[b])
                raise PairwiseIntersectionViolation(a, b, [self.points[x] for x in shared])
        self.__dict__["masks"] = tuple(masks)
        self.__dict__["index_of"] = seen

    # populated in __post_init__; declared for readers and type checkers
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False, default=())
    index_of: Mapping[str, int] = field(init=False, repr=False, compare=False, default=None)

    @property
    def num_points(self) -> int:
        return len(self.points)

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * len(self.points)
        for line in self.lines:
            for x in line:
                deg[x] += 1
        return tuple(deg)

    @cached_property
    def lines_through(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in self.points]
        for j, line in enumerate(self.lines):
            for x in line:
                inc[x].append(j)
        return tuple(tuple(v) for v in inc)

    @cached_property
    def incidence(self) -> np.ndarray:
        """Boolean matrix of shape (num_lines, num_points)."""
        m = np.zeros((len(self.lines), len(self.points)), dtype=bool)
        for j, line in enumerate(self.lines):
            m[j, list(line)] = True
        return m

    def line_labels(self, j: int) -> list[str]:
        return [self.points[x] for x in sorted(self.lines[j])]

    def point_index(self, p) -> int:
        if isinstance(p, (int, np.integer)) and not isinstance(p, bool):
            if 0 <= p < len(self.points):
                return int(p)
            raise UnknownPoint(f"point index {p} out of range")
        try:
            return self.index_of[p]
        except KeyError:
            raise UnknownPoint(f"unknown point {p!r}") from None

    def canonical_form(self) -> tuple[list[str], list[list[str]]]:
        """Points sorted by label, lines as sorted label lists in sorted order.

        Two systems with the same canonical form are equal up to the order in
        which points and lines were listed.
        """
        pts = sorted(self.points)
        lines = sorted(sorted(self.points[x] for x in line) for line in self.lines)
        return pts, lines

    def canonical_key(self) -> tuple:
        pts, lines = self.canonical_form()
        return tuple(pts), tuple(tuple(l) for l in lines)


@dataclass(frozen=True)
class SystemStats:
    num_points: int
    num_lines: int
    degree_of: dict[str, int]
    max_degree: int
    rank: int
    uniform_r: int | None
    is_intersecting: bool


@dataclass(frozen=True)
class PointBijection:
    """Point map from system A to system B (indices of the original systems)."""

    mapping: dict[int, int]

    def __len__(self) -> int:
        return len(self.mapping)


def validate(raw_points: Iterable[str], raw_lines: Iterable[Iterable[str]]) -> LinearSystem:
    points = list(raw_points)
    index = {}
    for i, label in enumerate(points):
        if label in index:
            raise DuplicatePoint(f"point {label!r} listed twice")
        index[label] = i
    lines = []
    for j, raw in enumerate(raw_lines):
        raw = list(raw)
        if not raw:
            raise EmptyLine(f"line {j} is empty")
        idx = set()
        for label in raw:
            if label not in index:
                raise UnknownPointInLine(f"line {j} references unknown point {label!r}")
            idx.add(index[label])
        lines.append(frozenset(idx))
    return LinearSystem(tuple(points), tuple(lines))


def empty_system() -> LinearSystem:
    return LinearSystem((), ())


def stats(ls: LinearSystem) -> SystemStats:
    sizes = [len(l) for l in ls.lines]
    uniform = sizes[0] if sizes and all(s == sizes[0] for s in sizes) else None
    intersecting = all(
        bin(a & b).count("1") == 1 for a, b in itertools.combinations(ls.masks, 2)
    )
    return SystemStats(
        num_points=ls.num_points,
        num_lines=ls.num_lines,
        degree_of=dict(zip(ls.points, ls.degrees)),
        max_degree=max(ls.degrees, default=0),
        rank=max(sizes, default=0),
        uniform_r=uniform,
        is_intersecting=intersecting,
    )


def _check_line_index(ls: LinearSystem, j) -> int:
    if isinstance(j, bool) or not isinstance(j, (int, np.integer)) or not 0 <= j < ls.num_lines:
        raise IndexOutOfRange(f"line index {j!r} out of range (0..{ls.num_lines - 1})")
    return int(j)


def _restrict(ls: LinearSystem, keep_points: Sequence[int], line_ids: Iterable[int],
              on_duplicate: str) -> LinearSystem:
    """Re-index ``ls`` onto ``keep_points`` (in the given order) and the chosen lines.

    Lines are intersected with the kept points; empty results are dropped.
    ``on_duplicate`` is ``"raise"`` or ``"drop"`` (keep the first copy).
    """
    remap = {x: i for i, x in enumerate(keep_points)}
    new_lines = []
    seen = {}
    for j in line_ids:
        img = frozenset(remap[x] for x in ls.lines[j] if x in remap)
        if not img:
            continue
        if img in seen:
            if on_duplicate == "raise":
                labels = ", ".join(ls.points[keep_points[i]] for i in sorted(img))
                raise DuplicateInducedLine(
                    f"lines {seen[img]} and {j} both restrict to {{{labels}}}"
                )
            continue
        seen[img] = j
        new_lines.append(img)
    return LinearSystem(tuple(ls.points[x] for x in keep_points), tuple(new_lines))


def delete_point(ls: LinearSystem, point) -> LinearSystem:
    x = ls.point_index(point)
    keep = [i for i in range(ls.num_points) if i != x]
    # {a} and {a, x} both become {a} when x goes; keep the first copy
    return _restrict(ls, keep, range(ls.num_lines), on_duplicate="drop")


def delete_line(ls: LinearSystem, line_index: int) -> LinearSystem:
    j = _check_line_index(ls, line_index)
    return LinearSystem(ls.points, ls.lines[:j] + ls.lines[j + 1:])


def induced_subsystem(ls: LinearSystem, point_subset, line_subset) -> LinearSystem:
    """Restrict the chosen lines to the chosen points.

    Point and line order of the source system is preserved.  Raises
    :class:`DuplicateInducedLine` when two chosen lines collapse to one set.
    """
    pts = sorted({ls.point_index(p) for p in point_subset})
    lines = sorted({_check_line_index(ls, j) for j in line_subset})
    return _restrict(ls, pts, lines, on_duplicate="raise")


def reduce_low_degree(ls: LinearSystem) -> LinearSystem:
    """Repeatedly delete every point of degree 0 or 1 until none is left.

    Lines that become empty are dropped; lines that collapse onto an earlier
    line are dropped as duplicates.
    """
    cur = ls
    while True:
        keep = [x for x, d in enumerate(cur.degrees) if d >= 2]
        if len(keep) == cur.num_points:
            return cur
        cur = _restrict(cur, keep, range(cur.num_lines), on_duplicate="drop")


def is_transversal(ls: LinearSystem, point_set) -> bool:
    mask = 0
    for p in point_set:
        mask |= 1 << ls.point_index(p)
    return all(m & mask for m in ls.masks)


def is_2packing(ls: LinearSystem, line_index_set) -> bool:
    """True iff no point lies on three or more of the chosen lines."""
    chosen = {_check_line_index(ls, j) for j in line_index_set}
    usage = [0] * ls.num_points
    for j in chosen:
        for x in ls.lines[j]:
            usage[x] += 1
            if usage[x] > 2:
                return False
    return True


def is_subsystem(small: LinearSystem, big: LinearSystem) -> bool:
    """Label-based linear-subsystem test.

    Every point of ``small`` is a point of ``big`` and every line of ``small``
    equals a line of ``big`` intersected with the points of ``small``.
    """
    if not set(small.points) <= set(big.points):
        return False
    keep = {big.index_of[p] for p in small.points}
    restricted = {frozenset(big.points[x] for x in l if x in keep) for l in big.lines}
    return all(frozenset(small.points[x] for x in l) in restricted for l in small.lines)


# -- isomorphism ------------------------------------------------------------

def _point_signature(ls: LinearSystem, x: int) -> tuple:
    return (ls.degrees[x], tuple(sorted(len(ls.lines[j]) for j in ls.lines_through[x])))


def _label_identity(a: LinearSystem, b: LinearSystem) -> dict[int, int] | None:
    if set(a.points) != set(b.points):
        return None
    if {frozenset(a.points[x] for x in l) for l in a.lines} != \
            {frozenset(b.points[x] for x in l) for l in b.lines}:
        return None
    return {i: b.index_of[p] for i, p in enumerate(a.points)}


def _search_bijection(a: LinearSystem, b: LinearSystem) -> dict[int, int] | None:
    n = a.num_points
    sig_a = [_point_signature(a, x) for x in range(n)]
    sig_b = [_point_signature(b, x) for x in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    b_lines_by_size = {}
    for l in b.lines:
        b_lines_by_size.setdefault(len(l), set()).add(l)
    b_lines = set(b.lines)

    # Visit high-degree points first, then neighbours of already placed points.
    order = []
    placed = set()
    remaining = sorted(range(n), key=lambda x: (-a.degrees[x], x))
    while remaining:
        best = max(
            remaining,
            key=lambda x: (sum(1 for j in a.lines_through[x] for y in a.lines[j] if y in placed),
                           a.degrees[x], -x),
        )
        order.append(best)
        placed.add(best)
        remaining.remove(best)

    image = {}
    used = set()

    def consistent(x: int) -> bool:
        for j in a.lines_through[x]:
            line = a.lines[j]
            img = frozenset(image[y] for y in line if y in image)
            if len(img) == len(line):
                if img not in b_lines:
                    return False
            elif len(img) >= 2:
                if not any(img <= m for m in b_lines_by_size.get(len(line), ())):
                    return False
        # points sharing no line in A must not share a line in B
        for y, iy in image.items():
            if y == x:
                continue
            joined_a = any((a.masks[j] >> y) & 1 for j in a.lines_through[x])
            joined_b = any((b.masks[k] >> iy) & 1 for k in b.lines_through[image[x]])
            if joined_a != joined_b:
                return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        x = order[k]
        for cand in range(n):
            if cand in used or sig_b[cand] != sig_a[x]:
                continue
            image[x] = cand
            used.add(cand)
            if consistent(x) and extend(k + 1):
                return True
            del image[x]
            used.discard(cand)
        return False

    return dict(image) if extend(0) else None


def are_isomorphic(a: LinearSystem, b: LinearSystem,
                   max_points: int = ISOMORPHISM_POINT_CAP) -> PointBijection | None:
    """Hypergraph isomorphism after stripping points of degree at most one.

    Returns the point map between the original systems' indices, or ``None``.
    """
    ra, rb = reduce_low_degree(a), reduce_low_degree(b)
    for r in (ra, rb):
        if r.num_points > max_points:
            raise SizeLimitExceeded(
                f"reduced system has {r.num_points} points, cap is {max_points}"
            )
    if ra.num_points != rb.num_points or ra.num_lines != rb.num_lines:
        return None
    if sorted(ra.degrees) != sorted(rb.degrees):
        return None
    if sorted(len(l) for l in ra.lines) != sorted(len(l) for l in rb.lines):
        return None
    found = _label_identity(ra, rb) or _search_bijection(ra, rb)
    if found is None:
        return None
    return PointBijection({
        a.index_of[ra.points[i]]: b.index_of[rb.points[k]] for i, k in found.items()
    })


def check_bijection(a: LinearSystem, b: LinearSystem, bij: PointBijection) -> bool:
    """Re-verify a bijection returned by :func:`are_isomorphic`."""
    ra, rb = reduce_low_degree(a), reduce_low_degree(b)
    if len(bij.mapping) != ra.num_points or len(set(bij.mapping.values())) != ra.num_points:
        return False
    lines_b = {frozenset(rb.points[x] for x in l) for l in rb.lines}
    image = set()
    for l in ra.lines:
        img = frozenset(b.points[bij.mapping[a.index_of[ra.points[x]]]] for x in l)
        if img not in lines_b:
            return False
        image.add(img)
    return image == lines_b
