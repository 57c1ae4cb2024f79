"""Time the branch-and-bound and girth kernels under both backends.

Usage: python benchmarks/bench_kernels.py [--repeat 3] [--skip-python-above 200000]

The first numba call of each kernel includes compilation (or a cache load);
it is reported separately and excluded from the steady-state timings.
"""
import argparse
import time

from linsys import _kernels
from linsys.generators import cnn_cyclic, projective_plane, random_linear_system
from linsys.levi import girth, levi_graph
from linsys.solvers import nu2_exact, tau_exact


def cases():
    yield "tau  C(5,6)", lambda b: tau_exact(cnn_cyclic(5), backend=b)
    yield "tau  C(7,8)", lambda b: tau_exact(cnn_cyclic(7), backend=b)
    yield "tau  PG(2,5)", lambda b: tau_exact(projective_plane(5), backend=b)
    yield "nu2  C(9,10)", lambda b: nu2_exact(cnn_cyclic(9), backend=b)
    yield "nu2  C(11,12)", lambda b: nu2_exact(cnn_cyclic(11), backend=b)
    yield "tau  random x40", lambda b: [
        tau_exact(random_linear_system(s, 14, 12, 2, 4), backend=b) for s in range(40)]
    g = levi_graph(projective_plane(7))
    yield "girth PG(2,7)", lambda b: girth(g, b)


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def nodes(result):
    if isinstance(result, list):
        return sum(c.nodes_explored for c in result)
    return getattr(result, "nodes_explored", 0)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-python-above", type=int, default=2_000_000,
                    help="skip the interpreted run when the search needs more nodes")
    args = ap.parse_args()
    if not _kernels.numba_available():
        raise SystemExit("numba is not installed; nothing to compare")

    start = time.perf_counter()
    for name in ("tau", "nu2", "girth"):
        _kernels.kernel(name, "numba")
    tau_exact(cnn_cyclic(3), backend="numba")
    nu2_exact(projective_plane(3), backend="numba")
    girth(levi_graph(cnn_cyclic(3)), "numba")
    print(f"numba warm-up (compile or cache load): {time.perf_counter() - start:.2f}s\n")

    print(f"{'case':<18}{'nodes':>12}{'numba s':>12}{'python s':>12}{'speedup':>10}")
    for label, fn in cases():
        t_jit, res = best_of(lambda: fn("numba"), args.repeat)
        n = nodes(res)
        if n > args.skip_python_above:
            print(f"{label:<18}{n:>12}{t_jit:>12.4f}{'skipped':>12}{'':>10}")
            continue
        t_py, _ = best_of(lambda: fn("python"), 1)
        print(f"{label:<18}{n:>12}{t_jit:>12.4f}{t_py:>12.4f}{t_py / max(t_jit, 1e-9):>9.0f}x")


if __name__ == "__main__":
    main()
