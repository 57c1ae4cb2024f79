from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import build, linear_systems
from linsys.core import LinearSystem
from linsys.errors import LabelCountMismatch
from linsys.generators import cnn_cyclic, projective_plane
from linsys.levi import INFINITE, export_dot, girth, levi_graph, planarity_bound


def nx_graph(ls):
    g = nx.Graph()
    g.add_nodes_from(("p", x) for x in range(ls.num_points))
    g.add_nodes_from(("l", j) for j in range(ls.num_lines))
    for j, line in enumerate(ls.lines):
        for x in line:
            g.add_edge(("p", x), ("l", j))
    return g


def test_c34(c34):
    g = levi_graph(c34)
    rep = planarity_bound(g)
    assert (rep.vertex_count, rep.edge_count, rep.girth) == (16, 24, 6)
    assert rep.bound_value == Fraction(21)
    assert rep.certified_nonplanar


def test_plane_girth(pp3):
    assert girth(levi_graph(pp3)) == 6


def test_single_line_is_a_tree():
    rep = planarity_bound(levi_graph(build(["abc"])))
    assert rep.girth == INFINITE
    assert rep.bound_value == 3 and not rep.certified_nonplanar


def test_triangle_of_two_lines_has_girth_six():
    assert girth(levi_graph(build(["ab", "bc", "ca"]))) == 6


def test_square_of_two_lines_has_girth_eight():
    assert girth(levi_graph(build(["ab", "bc", "cd", "da"]))) == 8


def test_empty():
    rep = planarity_bound(levi_graph(LinearSystem((), ())))
    assert rep.girth == INFINITE and rep.bound_value == 0


def test_bound_is_exact_fraction():
    # girth 8 on 8 vertices: 8 * 6 / 6 = 8; the square has 8 edges, not above
    rep = planarity_bound(levi_graph(build(["ab", "bc", "cd", "da"])))
    assert rep.bound_value == Fraction(8) and not rep.certified_nonplanar
    # girth 6 on 6 vertices gives 6 * 4 / 4
    rep = planarity_bound(levi_graph(build(["ab", "bc", "ca"])))
    assert rep.bound_value == Fraction(6)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_cnn_levi(n):
    ls = cnn_cyclic(n)
    rep = planarity_bound(levi_graph(ls))
    v = n * (n - 1) + 2 + 3 * n - 1
    assert rep.vertex_count == v
    assert rep.edge_count == n * (3 * n - 1)
    assert rep.girth == 6
    assert rep.bound_value == Fraction(3 * (v - 2), 2)
    assert rep.certified_nonplanar == (rep.edge_count > Fraction(3 * (v - 2), 2))
    # networkx gives an independent girth
    assert nx.girth(nx_graph(ls)) == 6


def test_dot_export(c34):
    g = levi_graph(c34)
    labels = [",".join(c34.line_labels(j)) for j in range(c34.num_lines)]
    text = export_dot(g, c34.points, labels)
    assert text.startswith("graph levi {\n") and text.endswith("}\n")
    assert text.count("shape=circle") == 8 and text.count("shape=box") == 8
    assert text.count(" -- ") == 24
    assert text == export_dot(g, c34.points, labels)


def test_dot_label_mismatch(c34):
    with pytest.raises(LabelCountMismatch):
        export_dot(levi_graph(c34), c34.points[:-1], ["x"] * 8)


@settings(max_examples=200, deadline=None)
@given(linear_systems(max_points=10, max_lines=9))
def test_girth_matches_networkx(ls):
    g = levi_graph(ls)
    k = girth(g)
    expected = nx.girth(nx_graph(ls))
    assert k == expected
    # two lines share at most one point, so there are no 4-cycles
    assert k == INFINITE or k >= 6
    assert g.edge_count == sum(len(l) for l in ls.lines)
    assert g.vertex_count == ls.num_points + ls.num_lines
