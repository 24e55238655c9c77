import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tritrop.metric_graph import MetricGraph
from tritrop.plane_curve import TropicalPolynomial, curve_from_polynomial
from tritrop.space_lift import lift_map

Q = Fraction


# -- paper-scale fixtures --------------------------------------------------

# degree-3 elliptic: hexagon of unit edges, one cycle, nine rays
POLY_F = TropicalPolynomial(
    {
        (0, 0): -1,
        (1, 0): 0,
        (0, 1): 0,
        (1, 1): 0,
        (2, 0): -1,
        (0, 2): -1,
        (2, 1): -2,
        (1, 2): -2,
        (3, 0): -4,
        (0, 3): -4,
    }
)

# rational (1,2)-curve with a zigzag of three vertices
POLY_G = TropicalPolynomial(
    {
        (0, 0): 0,
        (1, 0): 0,
        (0, 1): 0,
        (1, 1): -1,
        (1, 2): -3,
        (0, 2): -3,
    }
)


def two_hexagon_graph():
    """Two unit hexagons glued along one edge; genus 2.

    Vertices 0..9 at the drawn positions; edge 0 is the shared edge, edges
    1..5 close the upper hexagon, edges 6..10 the lower one.  Returns the
    graph, the upper-hexagon cycle as edge ids, and the vertex positions.
    """
    pos = [
        (0, 0),  # 0 (shared)
        (1, 0),  # 1 (shared)
        (2, 1),  # 2
        (2, 2),  # 3
        (1, 2),  # 4
        (0, 1),  # 5
        (-1, -1),  # 6
        (-1, -2),  # 7
        (0, -2),  # 8
        (1, -1),  # 9
    ]
    edges = [
        (0, 1, 1),  # 0: shared
        (1, 2, 1),  # 1
        (2, 3, 1),  # 2
        (3, 4, 1),  # 3
        (4, 5, 1),  # 4
        (5, 0, 1),  # 5
        (0, 6, 1),  # 6
        (6, 7, 1),  # 7
        (7, 8, 1),  # 8
        (8, 9, 1),  # 9
        (9, 1, 1),  # 10
    ]
    G = MetricGraph(10, edges)
    upper = frozenset({0, 1, 2, 3, 4, 5})
    return G, upper, pos


HONEYCOMB_HEIGHTS = {
    (i, j): -(i * i + j * j) + Q(i * j, 2) for i in range(4) for j in range(4)
}

HONEYCOMB_HEIGHTS_2 = {
    (i, j): -(i * i + j * j) + Q(i * j, 3) for i in range(4) for j in range(4)
}

HONEYCOMB_HEIGHTS_3 = {
    (i, j): -(i * i + j * j) + Q(i * j, 2) + Q(i, 4) - Q(j, 4)
    for i in range(4)
    for j in range(4)
}


def big_quadric_heights(scale=64):
    """Smooth quadric whose bounded face spans scale/2 rectangle sides.

    Corner and edge monomials of 2*Delta^3 sit low, midpoints at zero,
    with two midpoints raised to break the vertex into the 8-tet
    unimodular triangulation.
    """
    q = {}
    for m in [
        (0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2),
        (1, 1, 0), (1, 0, 1), (0, 1, 1),
        (1, 0, 0), (0, 1, 0), (0, 0, 1),
    ]:
        if sum(m) == 0 or (sum(m) == 2 and 2 in m):
            q[m] = Q(-2 * scale)
        else:
            q[m] = Q(0)
    q[(1, 0, 0)] += Q(scale, 4)
    q[(0, 1, 1)] += Q(scale, 4)
    return q


@pytest.fixture(scope="session")
def honeycomb_curve():
    return curve_from_polynomial(HONEYCOMB_HEIGHTS)


@pytest.fixture(scope="session")
def honeycomb_classes(honeycomb_curve):
    """Shared full enumeration (the expensive step, done once per run)."""
    from tritrop.tritangent import enumerate_tritangents

    return enumerate_tritangents(honeycomb_curve)


@pytest.fixture(scope="session")
def big_lift():
    """Lift map whose rectangle [-14, 18]^2 covers every honeycomb
    tritangent conic."""
    return lift_map(big_quadric_heights(), (Q(-14), Q(-14)))
