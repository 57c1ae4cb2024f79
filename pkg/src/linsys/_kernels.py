"""Hot search loops, compiled with numba when available.

Every kernel is plain Python over integer numpy arrays so the same source
runs interpreted or under ``numba.njit``.  Set ``LINSYS_DISABLE_NUMBA=1``
to force the interpreted path.  Incidence is passed as padded index tables:

* ``line_pts[l, :line_len[l]]``  points of line ``l``
* ``point_lines[x, :point_nl[x]]`` lines through point ``x``
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

ENV_FLAG = "LINSYS_DISABLE_NUMBA"


def _tau_search(line_pts, line_len, point_lines, point_nl, best, best_sel, budget):
    """Branch and bound for a minimum transversal.

    ``best``/``best_sel`` hold the incumbent on entry.  Returns
    ``(best, nodes, exhausted)``; ``best_sel[:best]`` is updated in place.
    """
    n_lines = line_pts.shape[0]
    n_points = point_lines.shape[0]
    cover = np.zeros(n_lines, np.int64)
    excl = np.zeros(n_points, np.bool_)
    mark = np.zeros(n_points, np.int64)
    stamp = 0
    sel = np.zeros(n_points + 1, np.int64)
    br_line = np.zeros(n_points + 1, np.int64)
    br_pos = np.zeros(n_points + 1, np.int64)
    ex_base = np.zeros(n_points + 1, np.int64)
    ex_stack = np.zeros(n_points + 1, np.int64)
    ex_top = 0
    nodes = 0
    exhausted = False
    depth = 0
    enter = True
    while True:
        if enter:
            enter = False
            nodes += 1
            if nodes > budget:
                exhausted = True
                break
            # uncovered line with fewest candidate points
            bl = -1
            bc = n_points + 1
            for l in range(n_lines):
                if cover[l] == 0:
                    c = 0
                    for t in range(line_len[l]):
                        if not excl[line_pts[l, t]]:
                            c += 1
                    if c < bc:
                        bc = c
                        bl = l
            prune = False
            if bl == -1:
                if depth < best:
                    best = depth
                    for t in range(depth):
                        best_sel[t] = sel[t]
                prune = True
            elif bc == 0 or depth + 1 >= best:
                prune = True
            else:
                # pairwise disjoint uncovered lines each need their own point
                stamp += 1
                lb = 0
                for l in range(n_lines):
                    if cover[l] != 0:
                        continue
                    free = True
                    for t in range(line_len[l]):
                        x = line_pts[l, t]
                        if not excl[x] and mark[x] == stamp:
                            free = False
                            break
                    if free:
                        lb += 1
                        for t in range(line_len[l]):
                            mark[line_pts[l, t]] = stamp
                if depth + lb >= best:
                    prune = True
                else:
                    br_line[depth] = bl
                    br_pos[depth] = -1
                    ex_base[depth] = ex_top
            if prune:
                depth -= 1
                if depth < 0:
                    break
        # advance the branch at this depth
        l = br_line[depth]
        pos = br_pos[depth]
        if pos >= 0:
            x = line_pts[l, pos]
            for t in range(point_nl[x]):
                cover[point_lines[x, t]] -= 1
            excl[x] = True
            ex_stack[ex_top] = x
            ex_top += 1
        pos += 1
        while pos < line_len[l] and excl[line_pts[l, pos]]:
            pos += 1
        if pos < line_len[l] and depth + 1 < best:
            br_pos[depth] = pos
            x = line_pts[l, pos]
            for t in range(point_nl[x]):
                cover[point_lines[x, t]] += 1
            sel[depth] = x
            depth += 1
            enter = True
        else:
            while ex_top > ex_base[depth]:
                ex_top -= 1
                excl[ex_stack[ex_top]] = False
            depth -= 1
            if depth < 0:
                break
    return best, nodes, exhausted


def _nu2_search(line_pts, line_len, point_lines, point_nl, best, best_sel, budget):
    """Depth-first include/exclude search for a maximum 2-packing.

    ``best_sel`` receives the chosen line indices; returns
    ``(best, nodes, exhausted)``.
    """
    n_lines = line_pts.shape[0]
    n_points = point_lines.shape[0]
    usage = np.zeros(n_points, np.int64)
    cnt = np.zeros(n_points, np.int64)
    assigned = np.zeros(n_lines, np.bool_)
    dec = np.zeros(n_lines + 1, np.int64)  # 0 undecided, 1 in, 2 out
    chosen = 0
    nodes = 0
    exhausted = False
    i = 0
    enter = True
    while True:
        if enter:
            enter = False
            nodes += 1
            if nodes > budget:
                exhausted = True
                break
            if i == n_lines:
                if chosen > best:
                    best = chosen
                    k = 0
                    for l in range(n_lines):
                        if dec[l] == 1:
                            best_sel[k] = l
                            k += 1
                i -= 1
            else:
                # Bound the lines i.. that can still join: addable lines are
                # grouped greedily into pencils, and a pencil through x takes
                # at most 2 - usage[x] of them.
                for x in range(n_points):
                    cnt[x] = 0
                ub = 0
                for l in range(n_lines):
                    assigned[l] = True
                    if l < i:
                        continue
                    ok = True
                    for t in range(line_len[l]):
                        if usage[line_pts[l, t]] >= 2:
                            ok = False
                            break
                    if ok:
                        assigned[l] = False
                        ub += 1
                        for t in range(line_len[l]):
                            cnt[line_pts[l, t]] += 1
                while chosen + ub > best:
                    bx = -1
                    bsave = 0
                    for x in range(n_points):
                        save = cnt[x] - (2 - usage[x])
                        if save > bsave:
                            bsave = save
                            bx = x
                    if bx < 0:
                        break
                    ub -= bsave
                    for t in range(point_nl[bx]):
                        l = point_lines[bx, t]
                        if not assigned[l]:
                            assigned[l] = True
                            for r in range(line_len[l]):
                                cnt[line_pts[l, r]] -= 1
                if chosen + ub <= best:
                    i -= 1
                else:
                    fits = True
                    for t in range(line_len[i]):
                        if usage[line_pts[i, t]] >= 2:
                            fits = False
                            break
                    if fits:
                        for t in range(line_len[i]):
                            usage[line_pts[i, t]] += 1
                        chosen += 1
                        dec[i] = 1
                    else:
                        dec[i] = 2
                    i += 1
                    enter = True
                    continue
        # back at line i: flip an inclusion to an exclusion, or retreat
        if i < 0:
            break
        if dec[i] == 1:
            for t in range(line_len[i]):
                usage[line_pts[i, t]] -= 1
            chosen -= 1
            dec[i] = 2
            i += 1
            enter = True
        else:
            dec[i] = 0
            i -= 1
    return best, nodes, exhausted


def _girth(indptr, indices):
    """Length of a shortest cycle, or -1 for a forest.  BFS from every vertex."""
    n = indptr.shape[0] - 1
    best = -1
    dist = np.full(n, -1, np.int64)
    parent = np.full(n, -1, np.int64)
    queue = np.zeros(n, np.int64)
    for root in range(n):
        for v in range(n):
            dist[v] = -1
            parent[v] = -1
        dist[root] = 0
        head = 0
        tail = 1
        queue[0] = root
        while head < tail:
            u = queue[head]
            head += 1
            if best >= 0 and 2 * dist[u] + 1 >= best:
                break
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue[tail] = w
                    tail += 1
                elif parent[u] != w:
                    c = dist[u] + dist[w] + 1
                    if best < 0 or c < best:
                        best = c
    return best


_PY = {"tau": _tau_search, "nu2": _nu2_search, "girth": _girth}
_JIT: dict = {}


def numba_available() -> bool:
    return numba is not None


def active_backend() -> str:
    """``"numba"`` unless numba is missing or the env flag disables it."""
    if numba is None or os.environ.get(ENV_FLAG, "").strip().lower() in ("1", "true", "yes"):
        return "python"
    return "numba"


def kernel(name: str, backend: str | None = None):
    """Return the ``"tau"``, ``"nu2"`` or ``"girth"`` kernel for a backend."""
    backend = backend or active_backend()
    if backend == "python":
        return _PY[name]
    if backend != "numba":
        raise ValueError(f"unknown backend {backend!r}")
    if numba is None:
        raise RuntimeError("numba is not installed")
    if name not in _JIT:
        _JIT[name] = numba.njit(cache=True)(_PY[name])
    return _JIT[name]


def incidence_tables(lines, n_points):
    """Padded index tables for a list of point-index collections."""
    n_lines = len(lines)
    width = max((len(l) for l in lines), default=0)
    line_pts = np.full((n_lines, max(width, 1)), -1, np.int64)
    line_len = np.zeros(n_lines, np.int64)
    through = [[] for _ in range(n_points)]
    for j, line in enumerate(lines):
        pts = sorted(line)
        line_len[j] = len(pts)
        line_pts[j, :len(pts)] = pts
        for x in pts:
            through[x].append(j)
    deg_max = max((len(v) for v in through), default=0)
    point_lines = np.full((n_points, max(deg_max, 1)), -1, np.int64)
    point_nl = np.zeros(n_points, np.int64)
    for x, v in enumerate(through):
        point_nl[x] = len(v)
        point_lines[x, :len(v)] = v
    return line_pts, line_len, point_lines, point_nl
