"""Tropical plane curves from rational heights.

Max-plus convention throughout: a polynomial is F(X) = max_a (h_a + a.X)
over a finite support in Z^2, with h_a = -val(coefficient) for tropicalized
input. Min-plus users must negate their heights.

The dual subdivision is the regular subdivision of the Newton polygon
induced by the upper hull of the lifted points (a, h_a). Duality: 2-cells
correspond to curve vertices (at minus the facet gradient), interior edges
to bounded curve edges, boundary edges to rays in the direction of the
outer normal; weights are lattice lengths of dual edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from tritrop.exceptions import DegenerateCurveError, InputError
from tritrop.metric_graph import Divisor, GraphPoint, MetricGraph

Q = Fraction
Vec2 = Tuple[Fraction, Fraction]
IVec2 = Tuple[int, int]


# -- small exact 2d helpers ---------------------------------------------------

def vsub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def vadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def smul(s, a):
    return (s * a[0], s * a[1])


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def primitive(v) -> IVec2:
    """Primitive integer vector positively parallel to the rational vector v."""
    x, y = Q(v[0]), Q(v[1])
    if x == 0 and y == 0:
        raise InputError("zero vector has no direction")
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    ix, iy = int(x * den), int(y * den)
    g = gcd(abs(ix), abs(iy))
    return (ix // g, iy // g)


def lattice_length(a: IVec2, b: IVec2) -> int:
    return gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))


def convex_hull(points: Sequence[Tuple]) -> List[Tuple]:
    """Counterclockwise hull, collinear points dropped, lex-min point first."""
    pts = sorted(set(points))
    if len(pts) == 1:
        return pts
    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(vsub(out[-1], out[-2]), vsub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out
    lower = half(pts)
    upper = half(list(reversed(pts)))
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) > 1 else pts[:1]


# -- polynomials and curves ---------------------------------------------------

class TropicalPolynomial:
    """Finite support in Z^2 with rational heights; F(X) = max(h_a + a.X)."""

    def __init__(self, terms: Dict[IVec2, object]):
        if not terms:
            raise InputError("empty support")
        self.terms: Dict[IVec2, Fraction] = {}
        for a, h in terms.items():
            a = (int(a[0]), int(a[1]))
            self.terms[a] = Q(h)

    @property
    def support(self) -> List[IVec2]:
        return sorted(self.terms)

    def value(self, X: Vec2) -> Fraction:
        return max(h + dot(a, X) for a, h in self.terms.items())

    def argmax(self, X: Vec2) -> List[IVec2]:
        m = self.value(X)
        return [a for a in self.support if self.terms[a] + dot(a, X) == m]

    def __repr__(self) -> str:
        inner = ", ".join(f"{a}: {h}" for a, h in sorted(self.terms.items()))
        return f"TropicalPolynomial({{{inner}}})"


@dataclass(frozen=True)
class CurveEdge:
    """A 1-cell of a tropical curve: segment, ray, or full line.

    Parametrized as p + t*d with d primitive; t runs over [0, length],
    [0, inf) or all of Q. For segments `cells` holds the two incident
    vertex indices (p-side first); rays hold one; lines none.
    """

    kind: str
    p: Vec2
    d: IVec2
    length: Optional[Fraction]
    weight: int
    dual: Tuple[IVec2, IVec2]
    cells: Tuple[int, ...]

    @property
    def q(self) -> Vec2:
        assert self.kind == "segment"
        return vadd(self.p, smul(self.length, self.d))

    def point_at(self, t: Fraction) -> Vec2:
        return vadd(self.p, smul(Q(t), self.d))


@dataclass(frozen=True)
class DegreeProfile:
    kind: str  # "degree" or "bidegree"
    d: Optional[int] = None
    d1: Optional[int] = None
    d2: Optional[int] = None

    def bezout(self, other: "DegreeProfile") -> int:
        if self.kind == "degree" and other.kind == "degree":
            return self.d * other.d
        if self.kind == "bidegree" and other.kind == "bidegree":
            return self.d1 * other.d2 + self.d2 * other.d1
        dd = self if self.kind == "degree" else other
        bb = other if self.kind == "degree" else self
        return dd.d * (bb.d1 + bb.d2)


class PlaneCurve:
    """Corner locus of a tropical polynomial, with its dual subdivision."""

    def __init__(self, polynomial, vertices, vertex_duals, edges, subdivision, newton_polygon):
        self.polynomial: TropicalPolynomial = polynomial
        self.vertices: List[Vec2] = vertices
        self.vertex_duals: List[Tuple[IVec2, ...]] = vertex_duals
        self.edges: List[CurveEdge] = edges
        self.subdivision: List[Tuple[IVec2, ...]] = subdivision
        self.newton_polygon: List[IVec2] = newton_polygon
        self._check_balancing()

    def _check_balancing(self) -> None:
        totals = [(Q(0), Q(0)) for _ in self.vertices]
        for e in self.edges:
            if e.kind == "line":
                continue
            out = smul(e.weight, e.d)
            totals[e.cells[0]] = vadd(totals[e.cells[0]], out)
            if e.kind == "segment":
                totals[e.cells[1]] = vsub(totals[e.cells[1]], out)
        bad = [i for i, t in enumerate(totals) if t != (0, 0)]
        assert not bad, f"balancing fails at vertices {bad}"

    @property
    def bounded_edges(self) -> List[CurveEdge]:
        return [e for e in self.edges if e.kind == "segment"]

    @property
    def rays(self) -> List[CurveEdge]:
        return [e for e in self.edges if e.kind == "ray"]

    @property
    def genus(self) -> int:
        if not self.vertices:
            return 0
        parent = list(range(len(self.vertices)))
        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        nb = 0
        for e in self.bounded_edges:
            nb += 1
            parent[find(e.cells[0])] = find(e.cells[1])
        comps = len({find(i) for i in range(len(self.vertices))})
        return nb - len(self.vertices) + comps

    def __repr__(self) -> str:
        return (
            f"PlaneCurve({len(self.vertices)} vertices, "
            f"{len(self.bounded_edges)} bounded edges, {len(self.rays)} rays)"
        )


def _upper_facets(lifted: Dict[IVec2, Fraction]):
    """Maximal faces of the upper hull of {(a, h_a)}, as (face set, alpha, beta, delta)
    with the facet plane z = alpha*x + beta*y + delta."""
    pts = sorted(lifted)
    n = len(pts)
    facets = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = pts[i], pts[j], pts[k]
                area = cross(vsub(b, a), vsub(c, a))
                if area == 0:
                    continue
                ha, hb, hc = lifted[a], lifted[b], lifted[c]
                # plane z = alpha x + beta y + delta through the three lifts
                alpha = ((hb - ha) * (c[1] - a[1]) - (hc - ha) * (b[1] - a[1])) / area
                beta = ((hc - ha) * (b[0] - a[0]) - (hb - ha) * (c[0] - a[0])) / area
                delta = ha - alpha * a[0] - beta * a[1]
                if any(lifted[p] > alpha * p[0] + beta * p[1] + delta for p in pts):
                    continue
                face = frozenset(
                    p for p in pts if lifted[p] == alpha * p[0] + beta * p[1] + delta
                )
                facets[face] = (alpha, beta, delta)
    return facets


def curve_from_polynomial(poly) -> PlaneCurve:
    """Tropical curve of a polynomial (its corner locus plus duality data).

    The support may be one-dimensional (the curve is then a union of
    parallel lines); a single-point support is degenerate and rejected.
    """
    if isinstance(poly, dict):
        poly = TropicalPolynomial(poly)
    support = poly.support
    hull = convex_hull(support)
    if len(hull) == 1:
        raise DegenerateCurveError("degenerate support: single point")
    if len(hull) == 2:
        return _line_bundle_curve(poly, hull)

    facets = _upper_facets(poly.terms)
    cells = sorted(facets, key=lambda f: tuple(sorted(f)))
    vertices: List[Vec2] = []
    vertex_duals: List[Tuple[IVec2, ...]] = []
    cell_hulls: List[List[IVec2]] = []
    for f in cells:
        alpha, beta, _ = facets[f]
        vertices.append((-alpha, -beta))
        ch = convex_hull(sorted(f))
        cell_hulls.append(ch)
        vertex_duals.append(tuple(ch))
    # sanity: the facets tile the Newton polygon
    def area2(h):
        return sum(cross(h[i], h[(i + 1) % len(h)]) for i in range(len(h)))
    assert sum(area2(ch) for ch in cell_hulls) == area2(hull), "subdivision does not tile"

    edge_cells: Dict[Tuple[IVec2, IVec2], List[int]] = {}
    for ci, ch in enumerate(cell_hulls):
        for i in range(len(ch)):
            a, b = ch[i], ch[(i + 1) % len(ch)]
            key = (min(a, b), max(a, b))
            edge_cells.setdefault(key, []).append(ci)
    edges: List[CurveEdge] = []
    for (a, b), incident in sorted(edge_cells.items()):
        w = lattice_length(a, b)
        if len(incident) == 2:
            s, t = sorted(incident)
            diff = vsub(vertices[t], vertices[s])
            d = primitive(diff)
            assert dot(d, vsub(b, a)) == 0
            length = diff[0] / d[0] if d[0] else diff[1] / d[1]
            edges.append(CurveEdge("segment", vertices[s], d, length, w, (a, b), (s, t)))
        elif len(incident) == 1:
            s = incident[0]
            n = primitive((b[1] - a[1], a[0] - b[0]))
            if any(dot(n, vsub(p, a)) > 0 for p in support):
                n = (-n[0], -n[1])
            edges.append(CurveEdge("ray", vertices[s], n, None, w, (a, b), (s,)))
        else:
            raise AssertionError(f"subdivision edge {a},{b} in {len(incident)} cells")
    return PlaneCurve(poly, vertices, vertex_duals, edges, [tuple(ch) for ch in cell_hulls], hull)


def _line_bundle_curve(poly: TropicalPolynomial, hull: List[IVec2]) -> PlaneCurve:
    """Curve of a polynomial with collinear support: parallel lines."""
    a0 = hull[0]
    step = primitive(vsub(hull[1], hull[0]))
    pos = {a: dot(vsub(a, a0), step) // dot(step, step) for a in poly.support}
    # upper envelope over the 1d positions
    lift = {}
    for a, k in pos.items():
        if k not in lift or poly.terms[a] > lift[k][1]:
            lift[k] = (a, poly.terms[a])
    ks = sorted(lift)
    hull1: List[int] = []
    for k in ks:
        while len(hull1) >= 2:
            k1, k2 = hull1[-2], hull1[-1]
            if (lift[k2][1] - lift[k1][1]) * (k - k2) <= (lift[k][1] - lift[k2][1]) * (k2 - k1):
                hull1.pop()
            else:
                break
        hull1.append(k)
    edges: List[CurveEdge] = []
    subdivision = []
    dline = primitive((-step[1], step[0]))
    for k1, k2 in zip(hull1, hull1[1:]):
        a, ha = lift[k1]
        b, hb = lift[k2]
        # anchor: a point with h_a + a.X = h_b + b.X
        u = vsub(b, a)
        c = ha - hb
        x0 = smul(c / dot(u, u), u)
        edges.append(CurveEdge("line", x0, dline, None, lattice_length(a, b), (a, b), ()))
        subdivision.append((a, b))
    return PlaneCurve(poly, [], [], edges, subdivision, hull)


def degree_profile(C: PlaneCurve) -> DegreeProfile:
    """Degree d (ends -e1, -e2, e1+e2) or bi-degree (d1, d2) (ends +-e1, +-e2)."""
    counts: Dict[IVec2, int] = {}
    for e in C.edges:
        if e.kind == "ray":
            counts[e.d] = counts.get(e.d, 0) + e.weight
        elif e.kind == "line":
            counts[e.d] = counts.get(e.d, 0) + e.weight
            nd = (-e.d[0], -e.d[1])
            counts[nd] = counts.get(nd, 0) + e.weight
    dirs = set(counts)
    if dirs <= {(-1, 0), (0, -1), (1, 1)}:
        vals = {counts.get(v, 0) for v in [(-1, 0), (0, -1), (1, 1)]}
        if len(vals) == 1:
            return DegreeProfile("degree", d=vals.pop())
    if dirs <= {(1, 0), (-1, 0), (0, 1), (0, -1)}:
        d1p, d1m = counts.get((0, 1), 0), counts.get((0, -1), 0)
        d2p, d2m = counts.get((1, 0), 0), counts.get((-1, 0), 0)
        if d1p == d1m and d2p == d2m:
            return DegreeProfile("bidegree", d1=d1p, d2=d2p)
    raise InputError("unsupported Newton polygon")


def is_smooth(C: PlaneCurve) -> bool:
    """True iff the dual subdivision is unimodular."""
    if not C.vertices:
        return all(lattice_length(*cell) == 1 for cell in C.subdivision)
    for cell in C.subdivision:
        if len(cell) != 3:
            return False
        a, b, c = cell
        if abs(cross(vsub(b, a), vsub(c, a))) != 1:
            return False
    return True


class Skeleton:
    """Metric-graph core of a curve, with retraction and embedding.

    The graph is the 2-core of the bounded complex (a single point for
    genus 0), metrized by lattice length. Unbounded rays and pruned trees
    retract to their attachment vertex.
    """

    def __init__(self, C: PlaneCurve):
        if not C.vertices:
            raise DegenerateCurveError("curve has no vertices; no skeleton")
        nv = len(C.vertices)
        segs = [(i, e) for i, e in enumerate(C.edges) if e.kind == "segment"]
        alive_v = [True] * nv
        alive_e = {i: True for i, _ in segs}
        att_parent: Dict[int, int] = {}
        incid: List[List[int]] = [[] for _ in range(nv)]
        for i, e in segs:
            incid[e.cells[0]].append(i)
            incid[e.cells[1]].append(i)

        def valence(v):
            return sum(1 for i in incid[v] if alive_e[i])

        while True:
            leaf = next(
                (v for v in range(nv) if alive_v[v] and valence(v) == 1), None
            )
            if leaf is None:
                break
            ei = next(i for i in incid[leaf] if alive_e[i])
            e = C.edges[ei]
            other = e.cells[0] if e.cells[1] == leaf else e.cells[1]
            alive_v[leaf] = False
            alive_e[ei] = False
            att_parent[leaf] = other
        core_vs = [v for v in range(nv) if alive_v[v]]
        if len(core_vs) > 1 and not any(alive_e.values()):
            raise AssertionError("disconnected bounded complex")
        self.curve = C
        self.core_index: Dict[int, int] = {v: i for i, v in enumerate(core_vs)}
        self.core_vertices = core_vs
        gedges = []
        self.graph_edge_of: Dict[int, int] = {}
        for i, e in segs:
            if alive_e[i]:
                self.graph_edge_of[i] = len(gedges)
                gedges.append(
                    (self.core_index[e.cells[0]], self.core_index[e.cells[1]], e.length)
                )
        self.graph = MetricGraph(len(core_vs), gedges)
        self._att: Dict[int, int] = {}
        for v in range(nv):
            w = v
            while w not in self.core_index:
                w = att_parent[w]
            self._att[v] = self.core_index[w]

    def attachment(self, curve_vertex: int) -> GraphPoint:
        return self.graph.vertex_point(self._att[curve_vertex])

    def embed(self, p: GraphPoint) -> Vec2:
        """Plane position of a skeleton point."""
        if p.is_vertex:
            return self.curve.vertices[self.core_vertices[p.index]]
        ci = next(i for i, g in self.graph_edge_of.items() if g == p.index)
        e = self.curve.edges[ci]
        return e.point_at(p.offset)

    def retract(self, x: Vec2) -> GraphPoint:
        """Image of a curve point under the retraction to the skeleton."""
        C = self.curve
        x = (Q(x[0]), Q(x[1]))
        for v, pos in enumerate(C.vertices):
            if pos == x:
                return self.attachment(v)
        for i, e in enumerate(C.edges):
            t = _edge_param(e, x)
            if t is None:
                continue
            if e.kind == "segment":
                if i in self.graph_edge_of:
                    return self.graph.point(self.graph_edge_of[i], t)
                return self.attachment(e.cells[0])
            if e.kind == "ray":
                return self.attachment(e.cells[0])
            raise DegenerateCurveError("cannot retract a full line")
        raise InputError(f"point {x} does not lie on the curve")


def _edge_param(e: CurveEdge, x: Vec2) -> Optional[Fraction]:
    r = vsub(x, e.p)
    if cross(r, e.d) != 0:
        return None
    t = r[0] / e.d[0] if e.d[0] else r[1] / e.d[1]
    if e.kind == "segment" and not (0 < t < e.length):
        return None
    if e.kind == "ray" and t <= 0:
        return None
    return t


def skeleton(C: PlaneCurve) -> Skeleton:
    if not is_smooth(C):
        raise DegenerateCurveError("skeleton requires a smooth curve")
    return Skeleton(C)
