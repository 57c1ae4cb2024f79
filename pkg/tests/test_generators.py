import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import pairwise_ok
from linsys.core import are_isomorphic, is_subsystem, stats
from linsys.errors import (
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
from linsys.generators import (
    Triangle,
    chat,
    cnn,
    cnn_cyclic,
    cnn_layout,
    delete_triangle,
    enumerate_between,
    find_triangle,
    iter_triangles,
    projective_plane,
    random_linear_system,
)
from linsys.groups import cyclic, parse_group
from linsys.solvers import nu2_exact

GROUPS = ["z3", "z5", "z7", "z9", "z11", "z3xz3"]


@pytest.mark.parametrize("desc", GROUPS)
def test_cnn_shape(desc):
    g = parse_group(desc)
    n = g.order
    ls = cnn(g)
    lay = cnn_layout(n)
    assert ls.num_points == n * (n - 1) + 2
    assert ls.num_lines == 3 * n - 1
    assert all(len(l) == n for l in ls.lines)
    assert pairwise_ok(ls)
    assert ls.points[lay.p] == "p" and ls.points[lay.q] == "q"
    assert ls.degrees[lay.p] == ls.degrees[lay.q] == n
    assert all(d == 3 for x, d in enumerate(ls.degrees) if x not in (lay.p, lay.q))
    # the disjoint family partitions the non-special points
    disjoint = [ls.lines[j] for j in lay.disjoint]
    assert all(not (a & b) for a, b in itertools.combinations(disjoint, 2))
    assert set().union(*disjoint) == set(range(n * (n - 1)))
    assert all(lay.p in ls.lines[j] for j in lay.pencil_p)
    assert all(lay.q in ls.lines[j] for j in lay.pencil_q)


@pytest.mark.parametrize("desc", GROUPS)
def test_pencils_pair_up(desc):
    """Each line through p misses exactly one line through q, and vice versa."""
    g = parse_group(desc)
    ls = cnn(g)
    lay = cnn_layout(g.order)
    for jp in lay.pencil_p:
        missing = [jq for jq in lay.pencil_q if not (ls.lines[jp] & ls.lines[jq])]
        assert len(missing) == 1
    for jq in lay.pencil_q:
        missing = [jp for jp in lay.pencil_p if not (ls.lines[jp] & ls.lines[jq])]
        assert len(missing) == 1


@pytest.mark.parametrize("desc", GROUPS)
def test_cnn_line_count_identity(desc):
    g = parse_group(desc)
    ls = cnn(g)
    st_ = stats(ls)
    nu2 = nu2_exact(ls).value
    assert ls.num_lines == 2 * st_.max_degree + nu2 - 2


def test_cnn_error_order():
    with pytest.raises(GroupNotNeutralSum, match="neutral-sum"):
        cnn(cyclic(4))
    with pytest.raises(GroupNotNeutralSum):
        cnn(cyclic(2))
    with pytest.raises(GroupHasInvolution):
        cnn(parse_group("z2xz2"))
    with pytest.raises(EvenOrder):
        cnn(cyclic(1))


def test_cnn_matches_example(c34):
    assert cnn_cyclic(3).canonical_key() == c34.canonical_key()


def test_product_group_not_isomorphic_to_cyclic():
    a, b = cnn(parse_group("z3xz3")), cnn_cyclic(9)
    assert (a.num_points, a.num_lines) == (b.num_points, b.num_lines)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_projective_plane_axioms(q):
    ls = projective_plane(q)
    n = q * q + q + 1
    assert ls.num_points == ls.num_lines == n
    assert all(len(l) == q + 1 for l in ls.lines)
    assert set(ls.degrees) == {q + 1}
    for a, b in itertools.combinations(range(n), 2):
        assert sum(1 for l in ls.lines if a in l and b in l) == 1
    for l1, l2 in itertools.combinations(ls.lines, 2):
        assert len(l1 & l2) == 1


@pytest.mark.parametrize("q", [0, 1, 4, 6, 9])
def test_projective_plane_rejects_non_primes(q):
    with pytest.raises(NotPrime):
        projective_plane(q)


def test_fano_triangle_deletion():
    fano = projective_plane(2)
    out = delete_triangle(fano, find_triangle(fano))
    assert (out.num_points, out.num_lines) == (4, 4)


def test_triangle_count_in_plane(pp3):
    # 13 * 12 * 9 ordered non-collinear triples / 3!
    assert sum(1 for _ in iter_triangles(pp3)) == 13 * 12 * 9 // 6


def test_chat_shape(chat_system):
    st_ = stats(chat_system)
    assert (st_.num_points, st_.num_lines) == (10, 10)
    sizes = sorted(len(l) for l in chat_system.lines)
    assert sizes == [3] * 6 + [4] * 4
    # lines that met only at a deleted vertex are now disjoint
    assert not st_.is_intersecting


def test_chat_independent_of_triangle(pp3):
    tris = list(iter_triangles(pp3))
    first = chat(tris[0])
    for t in (tris[1], tris[len(tris) // 2], tris[-1]):
        assert are_isomorphic(first, chat(t)) is not None


def test_no_triangle():
    from conftest import build

    with pytest.raises(NoTriangle):
        find_triangle(build(["abc"]))


def test_invalid_triangles(pp3):
    t = find_triangle(pp3)
    with pytest.raises(InvalidTriangle):
        delete_triangle(pp3, Triangle(t.vertices, (t.sides[0], t.sides[0], t.sides[1])))
    with pytest.raises(InvalidTriangle):
        delete_triangle(pp3, Triangle(t.vertices, (t.sides[1], t.sides[0], t.sides[2])))
    line = sorted(pp3.lines[0])
    with pytest.raises(InvalidTriangle):
        delete_triangle(pp3, Triangle(tuple(line[:3]), (0, 0, 0)))
    with pytest.raises(InvalidTriangle):
        delete_triangle(pp3, Triangle((0, 1, 99), t.sides))


def test_enumerate_between_lattice(chat_system, pp3):
    members = enumerate_between(chat_system, pp3)
    assert len(members) == 64
    keys = [m.canonical_key() for m in members]
    assert keys == sorted(keys) and len(set(keys)) == 64
    assert pp3.canonical_key() in keys and chat_system.canonical_key() in keys
    for m in members:
        assert is_subsystem(chat_system, m) and is_subsystem(m, pp3)


def test_enumerate_between_trivial(c34):
    assert [m.canonical_key() for m in enumerate_between(c34, c34)] == [c34.canonical_key()]


def test_enumerate_between_errors(c34, pp3, chat_system):
    with pytest.raises(NotASubsystem):
        enumerate_between(c34, pp3)
    with pytest.raises(EnumerationCapExceeded):
        enumerate_between(chat_system, pp3, cap=5)


def test_random_is_deterministic():
    a = random_linear_system(17, 12, 9, 2, 4)
    b = random_linear_system(17, 12, 9, 2, 4)
    assert a == b
    assert a != random_linear_system(18, 12, 9, 2, 4)


@pytest.mark.parametrize("args", [
    (0, 5, 3, 1, 3), (0, 5, 3, 3, 2), (0, 3, 3, 2, 4), (0, 5, -1, 2, 3),
])
def test_random_infeasible(args):
    with pytest.raises(InfeasibleParameters):
        random_linear_system(*args)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 14), st.integers(0, 12), st.data())
def test_random_systems_are_linear(seed, n, m, data):
    lo = data.draw(st.integers(2, n))
    hi = data.draw(st.integers(lo, n))
    ls = random_linear_system(seed, n, m, lo, hi)
    assert pairwise_ok(ls)
    assert ls.num_points == n and ls.num_lines <= m
    assert all(lo <= len(l) <= hi for l in ls.lines)
