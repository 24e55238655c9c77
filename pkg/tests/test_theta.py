import random
from fractions import Fraction

import pytest

from _oracles import equivalent_oracle, random_graph
from conftest import two_hexagon_graph
from tritrop.exceptions import InputError
from tritrop.metric_graph import Divisor, MetricGraph
from tritrop.theta import (
    all_theta_characteristics,
    cycle_space,
    minimal_model_vertices,
    zharkov_effective,
    zharkov_non_effective,
)

Q = Fraction


def test_cycle_space_size_and_parity():
    G, upper, _ = two_hexagon_graph()
    cs = cycle_space(G)
    assert len(cs) == 2 ** G.genus - 1 == 3
    for gamma in cs:
        assert G.is_even_subgraph(gamma)
    assert upper in cs


def test_two_hexagon_effective_single_mid_edge_chip():
    # firing away from the upper hexagon, the fires meet exactly once: at
    # the middle of the bottom horizontal edge
    G, upper, pos = two_hexagon_graph()
    th = zharkov_effective(G, upper)
    assert th.effective and th.source == upper
    bottom = next(
        e for e, (u, v, _) in enumerate(G.edges)
        if {pos[u], pos[v]} == {(-1, -2), (0, -2)}
    )
    assert th.divisor == Divisor.at(G.point(bottom, Q(1, 2)))
    assert th.divisor.degree() == G.genus - 1


def test_two_hexagon_non_effective_pattern():
    # -1 at each trivalent vertex, +1 at the middle of all three
    # horizontal edges: the shared edge, the top edge and the bottom edge
    G, _, pos = two_hexagon_graph()
    th = zharkov_non_effective(G)
    assert not th.effective and th.source is None
    assert minimal_model_vertices(G) == {0, 1}

    def mid(a, b):
        e = next(
            i for i, (u, v, _) in enumerate(G.edges) if {pos[u], pos[v]} == {a, b}
        )
        return G.point(e, Q(1, 2))

    expected = Divisor(
        [
            (G.vertex_point(0), -1),
            (G.vertex_point(1), -1),
            (mid((0, 0), (1, 0)), 1),
            (mid((1, 2), (2, 2)), 1),
            (mid((-1, -2), (0, -2)), 1),
        ]
    )
    assert th.divisor == expected
    assert th.divisor.degree() == G.genus - 1
    assert G.rank(th.divisor) == -1


def test_two_hexagon_all_four_characteristics():
    G, _, _ = two_hexagon_graph()
    thetas = all_theta_characteristics(G)
    assert len(thetas) == 4
    assert [t.effective for t in thetas] == [False, True, True, True]
    K = G.canonical_divisor()
    keys = set()
    for t in thetas:
        # doubling gives the canonical class; checked with the discrete
        # Laplacian oracle, not the package's own reduction
        assert equivalent_oracle(G, 2 * t.divisor, K)
        keys.add(G.divisor_class_key(t.divisor))
    assert len(keys) == 4


def test_circle_theta_characteristics():
    G = MetricGraph(1, [(0, 0, 2)])
    thetas = all_theta_characteristics(G)
    assert len(thetas) == 2
    eff = thetas[1]
    assert eff.effective and eff.divisor == Divisor()
    non = thetas[0]
    mid = G.point(0, 1)
    assert non.divisor == Divisor([(mid, 1), (G.vertex_point(0), -1)])
    assert G.rank(non.divisor) == -1


def test_random_graphs_census():
    rng = random.Random(2024)
    for _ in range(6):
        G = random_graph(rng, rng.randint(1, 3))
        thetas = all_theta_characteristics(G)
        assert len(thetas) == 2 ** G.genus
        K = G.canonical_divisor()
        keys = set()
        for t in thetas:
            assert t.divisor.degree() == G.genus - 1
            assert G.is_equivalent(2 * t.divisor, K)
            if t.effective:
                assert t.divisor.is_effective()
            keys.add(G.divisor_class_key(t.divisor))
        assert len(keys) == len(thetas)


def test_effective_count_is_two_power_minus_one():
    G, _, _ = two_hexagon_graph()
    assert sum(t.effective for t in all_theta_characteristics(G)) == 3


def test_gamma_validation():
    G, _, _ = two_hexagon_graph()
    with pytest.raises(InputError):
        zharkov_effective(G, [])
    with pytest.raises(InputError):
        zharkov_effective(G, [0])  # single edge is not even
    with pytest.raises(InputError):
        zharkov_effective(G, [99])


def test_tree_has_no_characteristics():
    T = MetricGraph(2, [(0, 1, 1)])
    with pytest.raises(InputError):
        zharkov_non_effective(T)
    with pytest.raises(InputError):
        all_theta_characteristics(T)
