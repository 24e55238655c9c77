"""Theta characteristics of metric graphs via fire spreading.

For a nonzero even subgraph gamma, a fire spreads away from gamma at unit
speed; where a fires meet we place a - 1 chips. At a vertex carrying 2k
ends of gamma itself we place k - 1 chips (zero for a plain pass-through).
The resulting divisor D satisfies K - 2D = div(dist(., gamma)) on the nose,
so 2D ~ K. Replacing gamma by the vertex set of the minimal model and
seeding a -1 chip at each source vertex yields the unique non-effective
characteristic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from tritrop.exceptions import InputError
from tritrop.metric_graph import Divisor, GraphPoint, MetricGraph

Q = Fraction


@dataclass(frozen=True)
class ThetaCharacteristic:
    """A divisor class with 2D ~ K, tagged by how it was produced."""

    divisor: Divisor
    source: Optional[FrozenSet[int]]  # even subgraph of edge ids; None = non-effective
    effective: bool


def cycle_space(G: MetricGraph) -> List[FrozenSet[int]]:
    """All 2^g - 1 nonzero elements of the F2 cycle space, basis-mask order."""
    basis = G.cycle_space_basis()
    out = []
    for mask in range(1, 1 << len(basis)):
        acc: FrozenSet[int] = frozenset()
        for i, b in enumerate(basis):
            if mask >> i & 1:
                acc = acc ^ b
        out.append(acc)
    return out


def _distances(G: MetricGraph, sources: Set[int]) -> List[Fraction]:
    """Multi-source Dijkstra over the vertex set, exact arithmetic."""
    adj: List[List[Tuple[int, Fraction]]] = [[] for _ in range(G.n)]
    for u, v, length in G.edges:
        adj[u].append((v, length))
        adj[v].append((u, length))
    dist: List[Optional[Fraction]] = [None] * G.n
    heap = [(Q(0), s) for s in sources]
    heapq.heapify(heap)
    while heap:
        d, v = heapq.heappop(heap)
        if dist[v] is not None:
            continue
        dist[v] = d
        for u, length in adj[v]:
            if dist[u] is None:
                heapq.heappush(heap, (d + length, u))
    assert all(d is not None for d in dist)
    return dist  # type: ignore[return-value]


def _fire_divisor(
    G: MetricGraph,
    source_vertices: Set[int],
    gamma: FrozenSet[int],
    negative_sources: bool,
) -> Divisor:
    d = _distances(G, source_vertices)
    chips: List[Tuple[GraphPoint, int]] = []
    for e, (u, v, length) in enumerate(G.edges):
        if e in gamma:
            continue
        t = (length + d[v] - d[u]) / 2
        if 0 < t < length:
            chips.append((G.point(e, t), 1))
    gamma_ends = [0] * G.n
    for e in gamma:
        u, v, _ = G.edges[e]
        gamma_ends[u] += 1
        gamma_ends[v] += 1
    for v in range(G.n):
        p = G.vertex_point(v)
        if v in source_vertices:
            if negative_sources:
                chips.append((p, -1))
            else:
                chips.append((p, gamma_ends[v] // 2 - 1))
        else:
            a = 0
            for x, y, length in G.edges:
                if x == y:
                    continue  # a loop's fire meets at its midpoint, not at v
                if y == v and d[x] + length == d[v]:
                    a += 1
                if x == v and d[y] + length == d[v]:
                    a += 1
            chips.append((p, a - 1))
    return Divisor(chips)


def zharkov_effective(G: MetricGraph, gamma: Iterable[int]) -> ThetaCharacteristic:
    """Effective theta characteristic attached to a nonzero cycle gamma."""
    gset = frozenset(int(e) for e in gamma)
    if not gset:
        raise InputError("gamma must be a nonzero cycle")
    if not all(0 <= e < len(G.edges) for e in gset):
        raise InputError("gamma contains an unknown edge id")
    if not G.is_even_subgraph(gset):
        raise InputError("gamma is not an even subgraph")
    sources = set()
    for e in gset:
        u, v, _ = G.edges[e]
        sources.add(u)
        sources.add(v)
    D = _fire_divisor(G, sources, gset, negative_sources=False)
    assert D.is_effective() and D.degree() == G.genus - 1
    assert G.is_equivalent(2 * D, G.canonical_divisor())
    return ThetaCharacteristic(D, gset, True)


def minimal_model_vertices(G: MetricGraph) -> Set[int]:
    """Vertices of the minimal model: valence != 2, or vertex 0 on a circle."""
    W = {v for v in range(G.n) if G.valence(v) != 2}
    if not W:
        if G.genus != 1:
            raise InputError("graph with all valences 2 must be a circle")
        W = {0}
    return W


def zharkov_non_effective(G: MetricGraph) -> ThetaCharacteristic:
    """The unique non-effective theta characteristic (g >= 1)."""
    if G.genus < 1:
        raise InputError("trees have no non-effective theta characteristic")
    W = minimal_model_vertices(G)
    D = _fire_divisor(G, W, frozenset(), negative_sources=True)
    assert D.degree() == G.genus - 1
    assert G.is_equivalent(2 * D, G.canonical_divisor())
    return ThetaCharacteristic(D, None, False)


def all_theta_characteristics(G: MetricGraph) -> List[ThetaCharacteristic]:
    """The 2^g theta characteristics: the non-effective one, then one per
    nonzero cycle in basis-mask order."""
    if G.genus < 1:
        raise InputError("need genus >= 1")
    out = [zharkov_non_effective(G)]
    for gamma in cycle_space(G):
        out.append(zharkov_effective(G, gamma))
    return out
