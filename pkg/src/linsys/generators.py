"""Constructions: the C_{n,n+1} family, prime-order projective planes,
triangles and triangle-deleted planes, subsystem lattices, random systems."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .core import LinearSystem, induced_subsystem, is_subsystem, validate
from .errors import (
    DuplicateInducedLine,
    EnumerationCapExceeded,
    EvenOrder,
    GroupHasInvolution,
    GroupNotNeutralSum,
    InfeasibleParameters,
    InvalidTriangle,
    NoTriangle,
    NotASubsystem,
    NotPrime,
)
from .groups import AbelianGroup, cyclic, has_no_involution, is_neutral_sum

ENUMERATION_CAP = 20
RANDOM_MAX_REJECTIONS = 200


class CnnLayout(NamedTuple):
    """Where each line family and the two special points sit in ``cnn`` output."""

    disjoint: range  # the n-1 lines L_g
    pencil_p: range  # the n lines through p
    pencil_q: range  # the n lines through q
    p: int
    q: int


def cnn_layout(n: int) -> CnnLayout:
    m = n * (n - 1)
    return CnnLayout(range(0, n - 1), range(n - 1, 2 * n - 1), range(2 * n - 1, 3 * n - 1), m, m + 1)


def cnn(group: AbelianGroup) -> LinearSystem:
    """Build C_{n,n+1} over a neutral-sum group of odd order n without involutions.

    Points are the pairs (h, g) with g != e, in lexicographic order, then
    ``p`` and ``q``.  Lines are listed as the disjoint family, the pencil
    through p, then the pencil through q (see :func:`cnn_layout`).
    """
    if not is_neutral_sum(group):
        raise GroupNotNeutralSum(f"group not neutral-sum: {group.descriptor}")
    if not has_no_involution(group):
        raise GroupHasInvolution(f"group has an involution: {group.descriptor}")
    n = group.order
    if n < 3 or n % 2 == 0:
        raise EvenOrder(f"group order must be odd and at least 3, got {n}")

    elems = list(group.elements())
    e = group.zero
    nonzero = [g for g in elems if g != e]

    def pt(h, g) -> str:
        return f"({group.label(h)},{group.label(g)})"

    points = [pt(h, g) for h in elems for g in nonzero] + ["p", "q"]
    lines = [[pt(h, g) for h in elems] for g in nonzero]
    lines += [[pt(g, h) for h in nonzero] + ["p"] for g in elems]
    for g in elems:
        line = []
        for h in elems:
            f = group.add(h, g)
            if f != e:
                line.append(pt(h, f))
        lines.append(line + ["q"])
    return validate(points, lines)


def cnn_cyclic(n: int) -> LinearSystem:
    return cnn(cyclic(n))


def example_c34() -> LinearSystem:
    """C_{3,4} over Z_3, written out point by point."""
    points = ["(0,1)", "(1,1)", "(2,1)", "(0,2)", "(1,2)", "(2,2)", "p", "q"]
    lines = [
        ["(0,1)", "(1,1)", "(2,1)"],
        ["(0,2)", "(1,2)", "(2,2)"],
        ["(0,1)", "(0,2)", "p"],
        ["(1,1)", "(1,2)", "p"],
        ["(2,1)", "(2,2)", "p"],
        ["(1,1)", "(2,2)", "q"],
        ["(0,1)", "(1,2)", "q"],
        ["(0,2)", "(2,1)", "q"],
    ]
    return validate(points, lines)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q ** 0.5) + 1))


def projective_plane(q: int) -> LinearSystem:
    """PG(2, q) for prime q, from normalised homogeneous coordinates."""
    if not _is_prime(q):
        raise NotPrime(f"order {q} is not prime")
    reps = [
        v for v in itertools.product(range(q), repeat=3)
        if any(v) and v[next(i for i, c in enumerate(v) if c)] == 1
    ]
    points = [f"[{a}:{b}:{c}]" for a, b, c in reps]
    lines = []
    for u in reps:
        lines.append([points[i] for i, v in enumerate(reps)
                      if (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) % q == 0])
    return validate(points, lines)


# -- triangles ----------------------------------------------------------------

@dataclass(frozen=True)
class Triangle:
    """Three non-collinear points and their joining lines.

    ``sides`` are ordered as (v0v1, v0v2, v1v2).
    """

    vertices: tuple[int, int, int]
    sides: tuple[int, int, int]


def _joins(ls: LinearSystem) -> dict[tuple[int, int], int]:
    join = {}
    for j, line in enumerate(ls.lines):
        for a, b in itertools.combinations(sorted(line), 2):
            join[a, b] = j
    return join


def iter_triangles(ls: LinearSystem) -> Iterator[Triangle]:
    """All triangles, vertex triples in lexicographic order."""
    join = _joins(ls)
    for a, b, c in itertools.combinations(range(ls.num_points), 3):
        ab, ac, bc = join.get((a, b)), join.get((a, c)), join.get((b, c))
        if ab is None or ac is None or bc is None:
            continue
        if ab == ac:  # collinear
            continue
        yield Triangle((a, b, c), (ab, ac, bc))


def find_triangle(ls: LinearSystem) -> Triangle:
    for t in iter_triangles(ls):
        return t
    raise NoTriangle("no three pairwise-joined non-collinear points")


def _check_triangle(ls: LinearSystem, t: Triangle) -> None:
    a, b, c = t.vertices
    if len({a, b, c}) != 3 or len(set(t.sides)) != 3:
        raise InvalidTriangle(f"degenerate triangle {t}")
    if not all(0 <= x < ls.num_points for x in t.vertices) or \
            not all(0 <= j < ls.num_lines for j in t.sides):
        raise InvalidTriangle(f"triangle {t} references missing points or lines")
    for j, pair in zip(t.sides, ((a, b), (a, c), (b, c))):
        if not set(pair) <= ls.lines[j]:
            raise InvalidTriangle(f"line {j} does not join points {pair}")
    if any({a, b, c} <= line for line in ls.lines):
        raise InvalidTriangle(f"points {t.vertices} are collinear")


def delete_triangle(ls: LinearSystem, t: Triangle) -> LinearSystem:
    """Remove the three sides and the three vertices of ``t``."""
    _check_triangle(ls, t)
    keep_points = [x for x in range(ls.num_points) if x not in t.vertices]
    keep_lines = [j for j in range(ls.num_lines) if j not in t.sides]
    return induced_subsystem(ls, keep_points, keep_lines)


def chat(triangle: Triangle | None = None) -> LinearSystem:
    """The plane of order 3 with a triangle's sides and vertices removed.

    Defaults to the lexicographically first triangle.
    """
    plane = projective_plane(3)
    return delete_triangle(plane, triangle if triangle is not None else find_triangle(plane))


# -- lattice between a subsystem and a supersystem ---------------------------

def enumerate_between(base: LinearSystem, sup: LinearSystem,
                      cap: int = ENUMERATION_CAP) -> list[LinearSystem]:
    """Every induced subsystem S of ``sup`` with ``base`` a subsystem of S.

    Lines of ``sup`` that restrict to a line of ``base`` are always kept;
    every subset of the remaining points and remaining lines is tried.
    Results are deduplicated and sorted by canonical encoding.
    """
    if not is_subsystem(base, sup):
        raise NotASubsystem("base is not a linear subsystem of sup")
    base_pts = {sup.index_of[p] for p in base.points}
    base_lines = {frozenset(base.points[x] for x in l) for l in base.lines}
    forced, optional = [], []
    for j, line in enumerate(sup.lines):
        restricted = frozenset(sup.points[x] for x in line if x in base_pts)
        (forced if restricted in base_lines else optional).append(j)
    extra_pts = [x for x in range(sup.num_points) if x not in base_pts]
    if len(extra_pts) + len(optional) > cap:
        raise EnumerationCapExceeded(
            f"{len(extra_pts)} extra points + {len(optional)} extra lines exceeds cap {cap}"
        )

    found = {}
    for k in range(len(extra_pts) + 1):
        for add_pts in itertools.combinations(extra_pts, k):
            pts = sorted(base_pts | set(add_pts))
            for m in range(len(optional) + 1):
                for add_lines in itertools.combinations(optional, m):
                    try:
                        s = induced_subsystem(sup, pts, sorted(forced + list(add_lines)))
                    except DuplicateInducedLine:
                        continue
                    if is_subsystem(base, s):
                        found.setdefault(s.canonical_key(), s)
    return [found[key] for key in sorted(found)]


# -- random corpus --------------------------------------------------------------

def random_linear_system(seed: int, num_points: int, num_lines: int,
                         min_line: int, max_line: int,
                         max_rejections: int = RANDOM_MAX_REJECTIONS) -> LinearSystem:
    """Rejection-sample a linear system; deterministic in ``seed``.

    A slot that keeps colliding with accepted lines is abandoned after
    ``max_rejections`` tries, so the result may have fewer lines than asked.
    """
    if min_line < 2:
        raise InfeasibleParameters(f"min_line must be >= 2, got {min_line}")
    if max_line < min_line:
        raise InfeasibleParameters(f"max_line {max_line} < min_line {min_line}")
    if max_line > num_points:
        raise InfeasibleParameters(f"max_line {max_line} exceeds num_points {num_points}")
    if num_lines < 0:
        raise InfeasibleParameters(f"num_lines must be >= 0, got {num_lines}")

    rng = np.random.default_rng(seed)
    accepted: list[int] = []
    lines = []
    for _ in range(num_lines):
        for _ in range(max_rejections):
            size = int(rng.integers(min_line, max_line + 1))
            pts = sorted(int(x) for x in rng.choice(num_points, size=size, replace=False))
            mask = sum(1 << x for x in pts)
            if all(bin(mask & m).count("1") <= 1 for m in accepted):
                accepted.append(mask)
                lines.append(frozenset(pts))
                break
    return LinearSystem(tuple(f"x{i}" for i in range(num_points)), tuple(lines))
