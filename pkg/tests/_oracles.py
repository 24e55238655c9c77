"""Independent reference implementations used to cross-check the package.

Nothing here imports the package's reduction or intersection internals:
equivalence of divisors is decided by solving the discrete Laplace
equation on a common-denominator subdivision, and stable intersections
are recomputed from scratch by translating one curve by a concrete small
rational vector and extrapolating the crossings back to zero.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Tuple

from tritrop.metric_graph import Divisor, GraphPoint, MetricGraph
from tritrop.plane_curve import PlaneCurve, TropicalPolynomial

Q = Fraction


# -- exact dense linear algebra ------------------------------------------


def gauss_solve(A: List[List[Fraction]], b: List[Fraction]) -> Optional[List[Fraction]]:
    """Solve A x = b over Q by elimination; None if inconsistent or singular."""
    n = len(A)
    m = len(A[0]) if A else 0
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if M[i][m] != 0:
            return None
    if r < m:
        return None  # underdetermined; caller grounds a variable first
    x = [Q(0)] * m
    for i, c in enumerate(piv_cols):
        x[c] = M[i][m]
    return x


# -- discrete equivalence oracle -----------------------------------------
#
# A witness of D1 ~ D2 is piecewise linear with integer slopes, and its
# corners sit exactly where div(f) = D1 - D2 is nonzero.  When both
# divisors live on the (1/N)-lattice of the graph, f is linear on every
# lattice step, so g = N*f restricted to lattice nodes solves the
# combinatorial Laplace equation L g = D2 - D1 and has integer
# differences along the unit steps.  Conversely any such g extends to a
# witness.  The grounded solution is unique, which makes the check
# deterministic.


def _common_denominator(G: MetricGraph, *divisors: Divisor) -> int:
    N = 1
    for _, _, length in G.edges:
        N = lcm(N, length.denominator)
    for D in divisors:
        for p, _ in D.items():
            if not p.is_vertex:
                N = lcm(N, p.offset.denominator)
    return N


class _LatticeModel:
    """Subdivision of every edge into 1/N steps, as a simple graph."""

    def __init__(self, G: MetricGraph, N: int):
        self.N = N
        self.node_of: Dict[GraphPoint, int] = {
            GraphPoint.at_vertex(v): v for v in range(G.n)
        }
        self.links: List[Tuple[int, int]] = []
        for e, (u, v, length) in enumerate(G.edges):
            steps = length * N
            assert steps.denominator == 1
            prev = u
            for k in range(1, int(steps)):
                p = GraphPoint(1, e, Q(k, N))
                self.node_of[p] = len(self.node_of)
                self.links.append((prev, self.node_of[p]))
                prev = self.node_of[p]
            self.links.append((prev, v))
        self.n = len(self.node_of)


def equivalent_oracle(G: MetricGraph, D1: Divisor, D2: Divisor) -> bool:
    """Independent linear-equivalence test for lattice-supported divisors."""
    if D1.degree() != D2.degree():
        return False
    N = _common_denominator(G, D1, D2)
    model = _LatticeModel(G, N)
    d = [Q(0)] * model.n
    for p, c in D2.items():
        d[model.node_of[G.check_point(p)]] += c
    for p, c in D1.items():
        d[model.node_of[G.check_point(p)]] -= c
    # grounded Laplacian: drop node 0's equation and variable
    n = model.n
    L = [[Q(0)] * n for _ in range(n)]
    for a, b in model.links:
        if a == b:
            continue
        L[a][a] += 1
        L[b][b] += 1
        L[a][b] -= 1
        L[b][a] -= 1
    A = [[L[i][j] for j in range(1, n)] for i in range(1, n)]
    rhs = [d[i] for i in range(1, n)]
    g = gauss_solve(A, rhs)
    assert g is not None, "grounded Laplacian must be invertible"
    return all(x.denominator == 1 for x in g)


def principal_perturbation(
    G: MetricGraph, rng: random.Random, D: Divisor
) -> Divisor:
    """A divisor equivalent to D by construction: D + div(f) for a random
    integer-valued f on a (1/2)-lattice model, fired edge by edge."""
    N = _common_denominator(G, D) * 2
    model = _LatticeModel(G, N)
    f = [rng.randint(-2, 2) for _ in range(model.n)]
    delta = [0] * model.n
    for a, b in model.links:
        delta[a] += f[b] - f[a]
        delta[b] += f[a] - f[b]
    rev = {i: p for p, i in model.node_of.items()}
    return D + Divisor([(rev[i], c) for i, c in enumerate(delta) if c])


# -- concrete-translation intersection oracle ----------------------------
#
# The package takes the perturbation limit with infinitesimal dual
# numbers; the oracle instead translates the second curve by an honest
# small rational vector tau, intersects transversally, halves tau, and
# extrapolates each crossing linearly back to tau = 0 (exact, since the
# crossing point of two fixed edges is affine in the translation).


ORACLE_DIR = (Q(1), Q(89, 97))


def _edge_geoms(C: PlaneCurve, shift=(Q(0), Q(0))):
    out = []
    for e in C.edges:
        p = (e.p[0] + shift[0], e.p[1] + shift[1])
        if e.kind == "segment":
            out.append((p, e.d, Q(0), e.length, e.weight))
        elif e.kind == "ray":
            out.append((p, e.d, Q(0), None, e.weight))
        else:
            out.append((p, e.d, None, None, e.weight))
    return out


def _crossings(C1: PlaneCurve, C2: PlaneCurve, tau) -> Optional[Dict]:
    """Transverse crossings of C1 with C2 + tau, keyed by edge pair.

    None when the configuration is not in general position (an overlap,
    or a crossing hitting an edge endpoint)."""
    out = {}
    g1 = _edge_geoms(C1)
    g2 = _edge_geoms(C2, tau)
    for i1, (p1, d1, lo1, hi1, w1) in enumerate(g1):
        for i2, (p2, d2, lo2, hi2, w2) in enumerate(g2):
            det = d1[0] * d2[1] - d1[1] * d2[0]
            rx, ry = p2[0] - p1[0], p2[1] - p1[1]
            if det == 0:
                if rx * d1[1] == ry * d1[0]:
                    return None  # collinear overlap: not transverse
                continue
            t = (rx * d2[1] - ry * d2[0]) / det
            s = (rx * d1[1] - ry * d1[0]) / det
            for val, lo, hi in ((t, lo1, hi1), (s, lo2, hi2)):
                if (lo is not None and val <= lo) or (hi is not None and val >= hi):
                    break
                if val == lo or val == hi:
                    return None
            else:
                pt = (p1[0] + t * d1[0], p1[1] + t * d1[1])
                out[(i1, i2)] = (pt, w1 * w2 * abs(det))
    return out


def stable_intersection_oracle(
    C1: PlaneCurve, C2: PlaneCurve
) -> List[Tuple[Tuple[Fraction, Fraction], int]]:
    """Stable intersection divisor computed by concrete translation."""
    t = Q(1, 2 ** 20)
    for _ in range(30):
        tau1 = (t * ORACLE_DIR[0], t * ORACLE_DIR[1])
        tau2 = (tau1[0] / 2, tau1[1] / 2)
        a = _crossings(C1, C2, tau1)
        b = _crossings(C1, C2, tau2)
        if a is not None and b is not None and set(a) == set(b):
            limits: Dict[Tuple[Fraction, Fraction], int] = {}
            stable = True
            for key in a:
                (pa, ma), (pb, mb) = a[key], b[key]
                if ma != mb:
                    stable = False
                    break
                # crossing is affine in tau: p(t/2)*2 - p(t) = p(0)
                p0 = (2 * pb[0] - pa[0], 2 * pb[1] - pa[1])
                limits[p0] = limits.get(p0, 0) + ma
            if stable:
                return sorted(limits.items())
        t /= 4
    raise AssertionError("oracle found no stable translation scale")


# -- randomized inputs ----------------------------------------------------


def random_graph(rng: random.Random, genus: int, max_extra: int = 2) -> MetricGraph:
    """Connected multigraph of the requested genus with small rational
    edge lengths (denominators 1 or 2). Lengths are kept short so the
    Laplacian lattice in `equivalent_oracle` stays small."""
    n = rng.randint(max(1, genus), genus + max_extra)

    def length() -> Fraction:
        den = rng.choice((1, 1, 2, 2))
        return Q(rng.randint(1, 2 * den), den)

    edges = [(rng.randrange(i), i, length()) for i in range(1, n)]
    for _ in range(genus):
        u = rng.randrange(n)
        v = rng.randrange(n)
        edges.append((u, v, length()))
    return MetricGraph(n, edges)


def random_lattice_divisor(
    rng: random.Random, G: MetricGraph, degree: int, chips: int = 4
) -> Divisor:
    """Divisor of the given degree supported on half-lattice points."""
    parts = [rng.randint(-2, 3) for _ in range(chips - 1)]
    parts.append(degree - sum(parts))
    out = []
    for c in parts:
        if c == 0:
            continue
        if rng.random() < 0.5 or not G.edges:
            out.append((G.vertex_point(rng.randrange(G.n)), c))
        else:
            e = rng.randrange(len(G.edges))
            length = G.edge_length(e)
            k = rng.randint(0, int(length * 2))
            out.append((G.point(e, Q(k, 2)), c))
    return Divisor(out)


def random_point(rng: random.Random, G: MetricGraph) -> GraphPoint:
    if rng.random() < 0.4:
        return G.vertex_point(rng.randrange(G.n))
    e = rng.randrange(len(G.edges))
    length = G.edge_length(e)
    k = rng.randint(0, int(length * 2))
    return G.point(e, Q(k, 2))


def random_degree_polynomial(rng: random.Random, d: int) -> TropicalPolynomial:
    """Full triangle support of degree d, random heights."""
    terms = {}
    for i in range(d + 1):
        for j in range(d + 1 - i):
            den = rng.choice((1, 2, 3))
            terms[(i, j)] = Q(rng.randint(-6 * den, 6 * den), den)
    return TropicalPolynomial(terms)


def random_bidegree_polynomial(rng: random.Random, d1: int, d2: int) -> TropicalPolynomial:
    """Full rectangle support of bi-degree (d1, d2), random heights.

    Exponent box is d1 wide and d2 tall, so the curve has d1 ends in
    each of +-e2 and d2 in each of +-e1."""
    terms = {}
    for i in range(d1 + 1):
        for j in range(d2 + 1):
            den = rng.choice((1, 2, 3))
            terms[(i, j)] = Q(rng.randint(-6 * den, 6 * den), den)
    return TropicalPolynomial(terms)
