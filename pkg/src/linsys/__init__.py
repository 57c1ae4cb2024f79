"""Finite linear systems: constructions, exact transversal and 2-packing
numbers with certificates, Levi-graph bounds, and a theorem harness."""

from .core import (
    LinearSystem,
    PointBijection,
    SystemStats,
    are_isomorphic,
    delete_line,
    delete_point,
    induced_subsystem,
    is_2packing,
    is_subsystem,
    is_transversal,
    reduce_low_degree,
    stats,
    validate,
)
from .generators import (
    Triangle,
    chat,
    cnn,
    cnn_cyclic,
    delete_triangle,
    enumerate_between,
    example_c34,
    find_triangle,
    projective_plane,
    random_linear_system,
)
from .groups import AbelianGroup, cyclic, has_no_involution, is_neutral_sum, product
from .levi import girth, levi_graph, planarity_bound
from .solvers import (
    Certificate,
    check_eq1,
    nu2_exact,
    nu2_greedy,
    tau_exact,
    tau_greedy,
    thm21_hypothesis,
)

__version__ = "0.1.0"
