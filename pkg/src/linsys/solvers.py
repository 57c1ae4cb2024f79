"""Exact and greedy transversal / 2-packing numbers with checkable certificates."""
from __future__ import annotations

import enum
import itertools
import math
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import LinearSystem, is_2packing, is_transversal
from .errors import BudgetExhausted, FewerThanTwoPoints

DEFAULT_BUDGET = 10 ** 8


class Kind(str, enum.Enum):
    TAU = "tau"
    NU2 = "nu2"


@dataclass(frozen=True)
class Certificate:
    """A solver answer: point set (TAU) or line index set (NU2) of size ``value``."""

    kind: Kind
    value: int
    witness: tuple[int, ...]
    optimal: bool
    nodes_explored: int = 0
    elapsed: float = 0.0

    def verify(self, ls: LinearSystem) -> bool:
        if len(set(self.witness)) != self.value or len(self.witness) != self.value:
            return False
        try:
            if self.kind is Kind.TAU:
                return is_transversal(ls, self.witness)
            return is_2packing(ls, self.witness)
        except (KeyError, IndexError):
            return False


@dataclass(frozen=True)
class BoundsReport:
    nu2: int
    tau: int
    eq1_lower: int
    eq1_upper: int
    eq1_holds: bool


@dataclass(frozen=True)
class Thm21Hypothesis:
    applies: bool
    max_deg_p: int
    second_deg_q: int
    line_count: int
    threshold: int
    p: int
    q: int
    nu2: int


def _tables(ls: LinearSystem):
    return _kernels.incidence_tables(ls.lines, ls.num_points)


def _disjoint_lower_bound(ls: LinearSystem) -> int:
    used = 0
    lb = 0
    for m in ls.masks:
        if not m & used:
            used |= m
            lb += 1
    return lb


# -- greedy ---------------------------------------------------------------------

def tau_greedy(ls: LinearSystem) -> Certificate:
    """Take the point on most uncovered lines until every line is hit."""
    start = time.perf_counter()
    uncovered = set(range(ls.num_lines))
    chosen = []
    while uncovered:
        counts = [0] * ls.num_points
        for j in uncovered:
            for x in ls.lines[j]:
                counts[x] += 1
        x = max(range(ls.num_points), key=lambda i: (counts[i], -i))
        chosen.append(x)
        uncovered -= set(ls.lines_through[x])
    value = len(chosen)
    return Certificate(Kind.TAU, value, tuple(sorted(chosen)),
                       optimal=value == _disjoint_lower_bound(ls),
                       elapsed=time.perf_counter() - start)


def nu2_greedy(ls: LinearSystem) -> Certificate:
    """Scan lines in order, keeping each one that leaves every point on <= 2 lines."""
    start = time.perf_counter()
    usage = [0] * ls.num_points
    chosen = []
    for j, line in enumerate(ls.lines):
        if all(usage[x] < 2 for x in line):
            for x in line:
                usage[x] += 1
            chosen.append(j)
    return Certificate(Kind.NU2, len(chosen), tuple(chosen),
                       optimal=len(chosen) == ls.num_lines,
                       elapsed=time.perf_counter() - start)


# -- exact ------------------------------------------------------------------------

def tau_exact(ls: LinearSystem, node_budget: int = DEFAULT_BUDGET,
              backend: str | None = None) -> Certificate:
    """Minimum transversal by branch and bound, seeded with the greedy answer.

    Branches on the points of an uncovered line with the fewest candidate
    points; prunes with a packing of pairwise disjoint uncovered lines.
    When the node budget runs out the incumbent is returned with
    ``optimal=False``.
    """
    start = time.perf_counter()
    seed = tau_greedy(ls)
    if ls.num_lines == 0 or seed.optimal:
        return Certificate(Kind.TAU, seed.value, seed.witness, True, 0,
                           time.perf_counter() - start)
    best_sel = np.zeros(ls.num_points + 1, np.int64)
    best_sel[:seed.value] = seed.witness
    search = _kernels.kernel("tau", backend)
    best, nodes, exhausted = search(*_tables(ls), seed.value, best_sel, node_budget)
    witness = tuple(sorted(int(x) for x in best_sel[:best]))
    return Certificate(Kind.TAU, int(best), witness, not exhausted, int(nodes),
                       time.perf_counter() - start)


def nu2_exact(ls: LinearSystem, node_budget: int = DEFAULT_BUDGET,
              backend: str | None = None) -> Certificate:
    """Maximum 2-packing by depth-first search over lines in index order."""
    start = time.perf_counter()
    seed = nu2_greedy(ls)
    if seed.optimal:
        return Certificate(Kind.NU2, seed.value, seed.witness, True, 0,
                           time.perf_counter() - start)
    best_sel = np.zeros(ls.num_lines + 1, np.int64)
    best_sel[:seed.value] = seed.witness
    search = _kernels.kernel("nu2", backend)
    best, nodes, exhausted = search(*_tables(ls), seed.value, best_sel, node_budget)
    witness = tuple(sorted(int(j) for j in best_sel[:best]))
    return Certificate(Kind.NU2, int(best), witness, not exhausted, int(nodes),
                       time.perf_counter() - start)


# -- brute-force oracles -------------------------------------------------------------

def tau_bruteforce(ls: LinearSystem, max_size: int | None = None) -> int | None:
    """Smallest transversal size by trying point subsets in order of size.

    Returns ``None`` when no transversal of size <= ``max_size`` exists.
    """
    limit = ls.num_points if max_size is None else max_size
    masks = ls.masks
    for k in range(limit + 1):
        for combo in itertools.combinations(range(ls.num_points), k):
            m = 0
            for x in combo:
                m |= 1 << x
            if all(line & m for line in masks):
                return k
    return None


def nu2_bruteforce(ls: LinearSystem) -> int:
    """Largest 2-packing over all subsets of lines."""
    best = 0
    lines = [sorted(l) for l in ls.lines]
    for subset in range(1 << len(lines)):
        size = bin(subset).count("1")
        if size <= best:
            continue
        usage = {}
        ok = True
        for j, line in enumerate(lines):
            if subset >> j & 1:
                for x in line:
                    usage[x] = usage.get(x, 0) + 1
                    if usage[x] > 2:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            best = size
    return best


# -- bound predicates ------------------------------------------------------------------

def _require_optimal(cert: Certificate, what: str) -> Certificate:
    if not cert.optimal:
        raise BudgetExhausted(f"{what} search ran out of budget", cert)
    return cert


def eq1_bounds(nu2: int) -> tuple[int, int]:
    return math.ceil(nu2 / 2), nu2 * (nu2 - 1) // 2


def check_eq1(ls: LinearSystem, node_budget: int = DEFAULT_BUDGET) -> BoundsReport:
    """Evaluate ceil(nu2/2) <= tau <= nu2(nu2-1)/2 exactly.

    For nu2 <= 1 the upper bound is degenerate and only the lower bound is
    evaluated.
    """
    tau = _require_optimal(tau_exact(ls, node_budget), "tau").value
    nu2 = _require_optimal(nu2_exact(ls, node_budget), "nu2").value
    lower, upper = eq1_bounds(nu2)
    holds = lower <= tau and (nu2 <= 1 or tau <= upper)
    return BoundsReport(nu2, tau, lower, upper, holds)


def thm21_hypothesis(ls: LinearSystem, nu2: int | None = None,
                     node_budget: int = DEFAULT_BUDGET) -> Thm21Hypothesis:
    """Evaluate |L| <= deg(p) + deg(q) + nu2 - 3 for the two highest-degree points.

    ``p`` is the lowest-index point of maximum degree and ``q`` the
    lowest-index point of maximum degree among the others.
    """
    if ls.num_points < 2:
        raise FewerThanTwoPoints("need at least two points")
    if nu2 is None:
        nu2 = _require_optimal(nu2_exact(ls, node_budget), "nu2").value
    deg = ls.degrees
    p = max(range(ls.num_points), key=lambda x: (deg[x], -x))
    q = max((x for x in range(ls.num_points) if x != p), key=lambda x: (deg[x], -x))
    threshold = deg[p] + deg[q] + nu2 - 3
    return Thm21Hypothesis(
        applies=ls.num_lines <= threshold,
        max_deg_p=deg[p], second_deg_q=deg[q], line_count=ls.num_lines,
        threshold=threshold, p=p, q=q, nu2=nu2,
    )
