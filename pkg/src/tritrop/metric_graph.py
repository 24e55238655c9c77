"""Metric graphs, divisors, chip firing, reduced divisors and rank.

Everything here is exact over Fraction. Graphs are connected multigraphs
with positive rational edge lengths; loops and parallel edges are allowed.
Divisors live on points of the geometric realization; equivalence is chip
firing along piecewise linear functions with integer slopes. Reduction to
a base point uses metric Dhar burning, ranks use a rank-determining vertex
set on a loopless refinement.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from tritrop.exceptions import InputError, ReductionError
from tritrop.linear import solve_unique

Q = Fraction

_REDUCE_CAP = 10 ** 6


class GraphPoint:
    """A point of a metric graph: a vertex or an interior point of an edge.

    Interior points carry (edge id, offset from the edge's first endpoint)
    with 0 < offset < length; endpoint offsets are normalized to vertex form
    by MetricGraph.point, so equality of points is geometric equality.
    Points on parallel edges are distinguished by edge id.  The hash is
    cached at construction: points key the divisor dicts on the reduction
    hot path, and re-hashing the Fraction offset per lookup dominates the
    profile otherwise.
    """

    __slots__ = ("kind", "index", "offset", "_hash")

    def __init__(self, kind: int, index: int, offset: Fraction = Q(0)):
        self.kind = kind  # 0 = vertex, 1 = edge interior
        self.index = index  # vertex id or edge id
        self.offset = offset
        self._hash = hash((kind, index, offset))

    @staticmethod
    def at_vertex(v: int) -> "GraphPoint":
        return GraphPoint(0, v, Q(0))

    @property
    def is_vertex(self) -> bool:
        return self.kind == 0

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphPoint):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.index == other.index
            and self.offset == other.offset
        )

    def __lt__(self, other) -> bool:
        if not isinstance(other, GraphPoint):
            return NotImplemented
        return (self.kind, self.index, self.offset) < (
            other.kind, other.index, other.offset,
        )

    def __le__(self, other) -> bool:
        if not isinstance(other, GraphPoint):
            return NotImplemented
        return (self.kind, self.index, self.offset) <= (
            other.kind, other.index, other.offset,
        )

    def __gt__(self, other) -> bool:
        if not isinstance(other, GraphPoint):
            return NotImplemented
        return (self.kind, self.index, self.offset) > (
            other.kind, other.index, other.offset,
        )

    def __ge__(self, other) -> bool:
        if not isinstance(other, GraphPoint):
            return NotImplemented
        return (self.kind, self.index, self.offset) >= (
            other.kind, other.index, other.offset,
        )

    def __repr__(self) -> str:
        if self.is_vertex:
            return f"v{self.index}"
        return f"e{self.index}@{self.offset}"


class Divisor:
    """Finite formal Z-combination of graph points."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        self._c: Dict[GraphPoint, int] = {}
        if coeffs is not None:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for p, c in items:
                if not isinstance(p, GraphPoint):
                    raise InputError(f"divisor key is not a GraphPoint: {p!r}")
                self._c[p] = self._c.get(p, 0) + int(c)
            self._c = {p: c for p, c in self._c.items() if c != 0}

    @staticmethod
    def at(p: GraphPoint, coeff: int = 1) -> "Divisor":
        return Divisor([(p, coeff)])

    def degree(self) -> int:
        return sum(self._c.values())

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self._c.values())

    def support(self) -> Tuple[GraphPoint, ...]:
        return tuple(sorted(self._c))

    def items(self) -> List[Tuple[GraphPoint, int]]:
        return sorted(self._c.items())

    def key(self) -> Tuple:
        """Hashable canonical form."""
        return tuple((p, c) for p, c in self.items())

    def __getitem__(self, p: GraphPoint) -> int:
        return self._c.get(p, 0)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(list(self._c.items()) + list(other._c.items()))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-1) * other

    def __mul__(self, k: int) -> "Divisor":
        return Divisor([(p, k * c) for p, c in self._c.items()])

    __rmul__ = __mul__

    def __neg__(self) -> "Divisor":
        return (-1) * self

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._c == other._c

    def __hash__(self):
        return hash(self.key())

    def __bool__(self) -> bool:
        return bool(self._c)

    def __repr__(self) -> str:
        if not self._c:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{c}*{p!r}" for p, c in self.items()) + ")"


class MetricGraph:
    """Connected metric multigraph with rational edge lengths."""

    def __init__(self, n_vertices: int, edges: Sequence[Tuple[int, int, object]]):
        if n_vertices <= 0:
            raise InputError("graph needs at least one vertex")
        self.n = int(n_vertices)
        self.edges: List[Tuple[int, int, Fraction]] = []
        for u, v, length in edges:
            u, v = int(u), int(v)
            length = Q(length)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge endpoint out of range: ({u},{v})")
            if length <= 0:
                raise InputError(f"edge length must be positive, got {length}")
            self.edges.append((u, v, length))
        self._check_connected()
        self._vpoints = [GraphPoint.at_vertex(v) for v in range(self.n)]

    def _check_connected(self) -> None:
        seen = {0}
        stack = [0]
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != self.n:
            raise InputError("graph is not connected")

    # -- basic invariants ---------------------------------------------------

    @property
    def genus(self) -> int:
        return len(self.edges) - self.n + 1

    def valence(self, v: int) -> int:
        d = 0
        for a, b, _ in self.edges:
            d += (a == v) + (b == v)
        return d

    def edge_length(self, e: int) -> Fraction:
        return self.edges[e][2]

    def total_length(self) -> Fraction:
        return sum((l for _, _, l in self.edges), Q(0))

    # -- points -------------------------------------------------------------

    def vertex_point(self, v: int) -> GraphPoint:
        if not (0 <= v < self.n):
            raise InputError(f"vertex out of range: {v}")
        return self._vpoints[v]

    def point(self, edge: int, offset) -> GraphPoint:
        """Normalized point at the given offset along an edge."""
        u, v, length = self.edges[edge]
        offset = Q(offset)
        if offset < 0 or offset > length:
            raise InputError(f"offset {offset} outside [0, {length}] on edge {edge}")
        if offset == 0:
            return self._vpoints[u]
        if offset == length:
            return self._vpoints[v]
        return GraphPoint(1, edge, offset)

    def check_point(self, p: GraphPoint) -> GraphPoint:
        if p.is_vertex:
            return self.vertex_point(p.index)
        if not (0 <= p.index < len(self.edges)):
            raise InputError(f"edge out of range: {p.index}")
        return self.point(p.index, p.offset)

    def normalize_divisor(self, D: Divisor) -> Divisor:
        return Divisor([(self.check_point(p), c) for p, c in D.items()])

    # -- canonical divisor and cycle space ----------------------------------

    def canonical_divisor(self) -> Divisor:
        return Divisor(
            [(GraphPoint.at_vertex(v), self.valence(v) - 2) for v in range(self.n)]
        )

    def cycle_space_basis(self) -> List[frozenset]:
        """Fundamental cycles (as frozensets of edge ids) of a BFS tree."""
        parent_edge: Dict[int, int] = {}
        seen = {0}
        order = [0]
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(self.n)]
        for e, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, e))
            adj[v].append((u, e))
        i = 0
        tree: set = set()
        while i < len(order):
            w = order[i]
            i += 1
            for x, e in adj[w]:
                if x not in seen:
                    seen.add(x)
                    parent_edge[x] = e
                    tree.add(e)
                    order.append(x)

        def path_edges(v: int) -> set:
            out = set()
            while v != 0:
                e = parent_edge[v]
                out.add(e)
                a, b, _ = self.edges[e]
                v = b if a == v else a
            return out

        basis = []
        for e, (u, v, _) in enumerate(self.edges):
            if e in tree:
                continue
            if u == v:
                basis.append(frozenset([e]))
            else:
                basis.append(frozenset({e} ^ path_edges(u) ^ path_edges(v)))
        return basis

    def is_even_subgraph(self, edge_ids: Iterable[int]) -> bool:
        ids = set(edge_ids)
        deg = [0] * self.n
        for e in ids:
            u, v, _ = self.edges[e]
            deg[u] += 1
            deg[v] += 1  # loops count twice
        return all(d % 2 == 0 for d in deg)

    # -- reduction ----------------------------------------------------------

    def reduce(self, D: Divisor, q: GraphPoint) -> Divisor:
        """The unique q-reduced divisor equivalent to D."""
        q = self.check_point(q)
        D = self.normalize_divisor(D)
        D = self._clear_debt(D, q)
        # chips moves in place; firing steps churn too much for Divisor objects
        chips: Dict[GraphPoint, int] = dict(D._c)
        for _ in range(_REDUCE_CAP):
            marks = set(chips)
            marks.add(q)
            R = _Refined(self, marks)
            dv = [0] * R.nv
            for p, c in chips.items():
                dv[R.index_of[p]] += c
            qi = R.index_of[q]
            burnt, burnt_ends = R.burn(dv, qi)
            if all(burnt):
                return Divisor(chips)
            boundary = [
                v for v in range(R.nv) if not burnt[v] and burnt_ends[v] > 0
            ]
            mu = min(dv[v] // burnt_ends[v] for v in boundary)
            assert mu >= 1  # Dhar: unburnt boundary holds >= one chip per fired end
            fired: List[Tuple[int, int, int]] = []  # (vertex, seg, end)
            eps: Optional[Fraction] = None
            for v in boundary:
                for s, end in R.adj[v]:
                    a, b, length, _, _, _ = R.segs[s]
                    other = b if end == 0 else a
                    if other == v or not burnt[other]:
                        continue
                    fired.append((v, s, end))
                    if eps is None or length < eps:
                        eps = length
            for v, s, end in fired:
                src = R.base_point[v]
                dst = R.point_on_seg(s, end, eps)
                c = chips.get(src, 0) - mu
                if c:
                    chips[src] = c
                else:
                    del chips[src]
                c = chips.get(dst, 0) + mu
                if c:
                    chips[dst] = c
                else:
                    del chips[dst]
        raise ReductionError("reduction did not terminate within the step cap")

    def _clear_debt(self, D: Divisor, q: GraphPoint) -> Divisor:
        """Move chips from q so D is effective away from q (exact transport).

        For each point p in debt, the piecewise linear solution of the
        weighted Laplace equation with poles at p and q is scaled to integer
        slopes; its divisor is m*(p - q), so adding enough copies clears p
        without touching any other point.
        """
        debtors = [p for p, c in D.items() if c < 0 and p != q]
        if not debtors:
            return D
        R = _Refined(self, set(D.support()) | {q})
        qi = R.index_of[q]
        for p in debtors:
            pi = R.index_of[p]
            m = R.transport_step(pi, qi)
            k = ceil(Q(-D[p]) / m)
            D = D + Divisor([(p, k * m), (q, -k * m)])
        return D

    # -- equivalence, rank, Riemann-Roch ------------------------------------

    def is_equivalent(self, D1: Divisor, D2: Divisor) -> bool:
        if D1.degree() != D2.degree():
            return False
        q0 = self.vertex_point(0)
        return self.reduce(D1, q0) == self.reduce(D2, q0)

    def divisor_class_key(self, D: Divisor) -> Tuple:
        """Hashable key identifying the linear equivalence class of D."""
        return self.reduce(D, self.vertex_point(0)).key()

    def rank_determining_points(self) -> List[GraphPoint]:
        """Vertex set of a loopless model: vertices plus loop midpoints.

        Vertices alone are not rank-determining in the presence of loops
        (on the one-vertex circle every vertex-supported test divisor sits
        at the single vertex), so each loop contributes its midpoint.
        """
        pts = [self.vertex_point(v) for v in range(self.n)]
        for e, (u, v, length) in enumerate(self.edges):
            if u == v:
                pts.append(self.point(e, length / 2))
        return pts

    def rank(self, D: Divisor) -> int:
        """Baker-Norine rank of the divisor class of D."""
        D = self.normalize_divisor(D)
        g = self.genus
        q0 = self.vertex_point(0)
        pts = self.rank_determining_points()
        memo: Dict[Tuple, int] = {}

        def rec(E: Divisor) -> int:
            d = E.degree()
            if d < 0:
                return -1
            if d > 2 * g - 2:
                # Riemann-Roch with r(K - E) = -1
                return d - g
            red = self.reduce(E, q0)
            key = red.key()
            hit = memo.get(key)
            if hit is not None:
                return hit
            if red[q0] < 0:
                memo[key] = -1
                return -1
            # r(E) = 1 + min over a in a rank-determining set of r(E - a);
            # scanning chip-free points first tends to hit the -1 floor early
            best = None
            for a in sorted(pts, key=lambda t: red[t]):
                sub = rec(red - Divisor.at(a))
                if best is None or sub < best:
                    best = sub
                if best == -1:
                    break
            memo[key] = 1 + best
            return 1 + best

        return rec(D)

    def riemann_roch_residual(self, D: Divisor) -> int:
        """r(D) - r(K - D) - (deg D - g + 1); zero for every divisor."""
        K = self.canonical_divisor()
        return (
            self.rank(D)
            - self.rank(K - D)
            - (D.degree() - self.genus + 1)
        )

    def __repr__(self) -> str:
        return f"MetricGraph(n={self.n}, edges={len(self.edges)}, genus={self.genus})"


class _Refined:
    """Subdivision of a graph at a finite set of marked points.

    Refined vertex ids 0..n-1 are the base vertices; marked interior points
    follow in sorted order. Segments remember their base edge and covered
    offset interval, so chips can be mapped back to base coordinates.
    """

    def __init__(self, G: MetricGraph, points: Iterable[GraphPoint]):
        self.G = G
        interior: Dict[int, List[GraphPoint]] = {}
        for p in points:
            if not p.is_vertex:
                interior.setdefault(p.index, []).append(p)
        self.base_point: List[GraphPoint] = list(G._vpoints)
        self.index_of: Dict[GraphPoint, int] = {
            p: v for v, p in enumerate(self.base_point)
        }
        # segs: (u, v, length, base edge, offset at u, offset at v)
        self.segs: List[Tuple[int, int, Fraction, int, Fraction, Fraction]] = []
        for e, (u, v, length) in enumerate(G.edges):
            marked = interior.get(e)
            if marked:
                # marks come from a set, so offsets on one edge are distinct
                marked.sort(key=lambda p: p.offset)
                ids = [u]
                cuts = [Q(0)]
                for p in marked:
                    self.index_of[p] = len(self.base_point)
                    ids.append(len(self.base_point))
                    self.base_point.append(p)
                    cuts.append(p.offset)
                ids.append(v)
                cuts.append(length)
            else:
                ids = [u, v]
                cuts = [Q(0), length]
            for i in range(len(ids) - 1):
                self.segs.append(
                    (ids[i], ids[i + 1], cuts[i + 1] - cuts[i], e, cuts[i], cuts[i + 1])
                )
        self.nv = len(self.base_point)
        self.adj: List[List[Tuple[int, int]]] = [[] for _ in range(self.nv)]
        for s, (a, b, _, _, _, _) in enumerate(self.segs):
            self.adj[a].append((s, 0))
            self.adj[b].append((s, 1))

    def point_on_seg(self, s: int, from_end: int, dist: Fraction) -> GraphPoint:
        a, b, length, e, oa, ob = self.segs[s]
        off = oa + dist if from_end == 0 else ob - dist
        return self.G.point(e, off)

    def burn(self, dv: List[int], q: int) -> Tuple[List[bool], List[int]]:
        """Dhar burning from q against the chip configuration dv.

        A vertex burns once more fire ends arrive than it has chips; a loop
        never ignites its own vertex.
        """
        burnt = [False] * self.nv
        burnt_ends = [0] * self.nv
        burnt[q] = True
        stack = [q]
        while stack:
            v = stack.pop()
            for s, end in self.adj[v]:
                a, b, _, _, _, _ = self.segs[s]
                u = b if end == 0 else a
                if u == v:
                    continue
                burnt_ends[u] += 1
                if not burnt[u] and burnt_ends[u] > dv[u]:
                    burnt[u] = True
                    stack.append(u)
        return burnt, burnt_ends

    def transport_step(self, p: int, q: int) -> int:
        """Largest chip step: m such that m*(delta_p - delta_q) is principal
        with slopes given by the scaled harmonic potential.

        Solves the grounded weighted Laplacian (conductance 1/length, loops
        carry no current) for a potential with divisor delta_p - delta_q,
        then clears slope denominators.
        """
        n = self.nv
        L = [[Q(0)] * n for _ in range(n)]
        for a, b, length, _, _, _ in self.segs:
            if a == b:
                continue
            c = 1 / length
            L[a][a] += c
            L[b][b] += c
            L[a][b] -= c
            L[b][a] -= c
        rhs = [Q(0)] * n
        rhs[q] = Q(1)
        rhs[p] = Q(-1)
        keep = [i for i in range(n) if i != q]
        A = [[L[i][j] for j in keep] for i in keep]
        bb = [rhs[i] for i in keep]
        sol = solve_unique(A, bb)
        assert sol is not None  # grounded Laplacian of a connected graph
        phi = [Q(0)] * n
        for i, v in zip(keep, sol):
            phi[i] = v
        den = 1
        for a, b, length, _, _, _ in self.segs:
            if a == b:
                continue
            den = lcm(den, ((phi[b] - phi[a]) / length).denominator)
        return den


def genus(G: MetricGraph) -> int:
    return G.genus


def canonical_divisor(G: MetricGraph) -> Divisor:
    return G.canonical_divisor()


def reduce_divisor(G: MetricGraph, D: Divisor, q: GraphPoint) -> Divisor:
    return G.reduce(D, q)


def is_equivalent(G: MetricGraph, D1: Divisor, D2: Divisor) -> bool:
    return G.is_equivalent(D1, D2)


def rank(G: MetricGraph, D: Divisor) -> int:
    return G.rank(D)


def riemann_roch_residual(G: MetricGraph, D: Divisor) -> int:
    return G.riemann_roch_residual(D)
