"""Tropical planes in R^3 and lifts of (d,d)-curves onto a smooth quadric.

A tropical plane is a translated 2-skeleton of the fan of P^3: a vertex v
with rays -e1, -e2, -e3, e0 = e1+e2+e3 and the six 2-cells spanned by ray
pairs. A smooth tropical quadric (unimodular subdivision of the dilated
simplex 2*Delta^3, eight tetrahedra) has a unique interior edge in its
dual subdivision, hence a unique bounded 2-face F, a parallelogram. The
two line directions through each point of F are the side directions of F.

Mapping a rectangle R affinely onto F sends (d,d)-curves to degree-2d
space curves: the bounded part maps linearly, each end of direction
+-e1/+-e2 runs in the image direction to the boundary of F and then
splits into the unique pair of plane-ray directions summing to it; the
split is forced by balancing, since the six pairwise sums of
{-e1, -e2, -e3, e0} are distinct.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from tritrop.exceptions import DegenerateCurveError, InputError, SolveError
from tritrop.intersection import DualQ, _strictly_inside
from tritrop.linear import solve as lin_solve
from tritrop.plane_curve import PlaneCurve, Vec2, degree_profile
from tritrop.tritangent import OneOneCurve, TritangentClass, enumerate_tritangents

Q = Fraction

Vec3 = Tuple[Fraction, Fraction, Fraction]
IVec3 = Tuple[int, int, int]

E0: IVec3 = (1, 1, 1)
PLANE_RAYS: Tuple[IVec3, ...] = ((-1, 0, 0), (0, -1, 0), (0, 0, -1), E0)

PERTURBATION3 = (Q(1), Q(31, 47), Q(53, 67))


def v3(p) -> Vec3:
    return (Q(p[0]), Q(p[1]), Q(p[2]))


def v3add(a, b) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def v3sub(a, b) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def s3mul(t, a) -> Vec3:
    return (t * a[0], t * a[1], t * a[2])


def dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def det3(c1, c2, c3):
    # cofactor expansion; tolerates one dual-number column
    return (
        c1[0] * (c2[1] * c3[2] - c2[2] * c3[1])
        - c1[1] * (c2[0] * c3[2] - c2[2] * c3[0])
        + c1[2] * (c2[0] * c3[1] - c2[1] * c3[0])
    )


def primitive3(v) -> IVec3:
    x, y, z = Q(v[0]), Q(v[1]), Q(v[2])
    if x == 0 and y == 0 and z == 0:
        raise InputError("zero vector has no direction")
    den = 1
    for c in (x, y, z):
        den = den * c.denominator // gcd(den, c.denominator)
    ix, iy, iz = int(x * den), int(y * den), int(z * den)
    g = gcd(gcd(abs(ix), abs(iy)), abs(iz))
    return (ix // g, iy // g, iz // g)


@dataclass(frozen=True)
class TropicalPlane:
    """Translated 2-skeleton of the P^3 fan; determined by its vertex."""

    vertex: Vec3

    def forms(self, p) -> Tuple:
        v = self.vertex
        return (p[0] - v[0], p[1] - v[1], p[2] - v[2], Q(0))

    def contains(self, p) -> bool:
        f = self.forms(p)
        m = max(f)
        return sum(1 for x in f if x == m) >= 2

    def __repr__(self) -> str:
        return f"TropicalPlane(vertex={self.vertex})"


@dataclass(frozen=True)
class SpaceCurveEdge:
    """Segment or ray in R^3: base point, primitive direction, lattice
    length (None for rays), weight."""

    kind: str  # "segment" | "ray"
    p: Vec3
    d: IVec3
    length: Optional[Fraction]
    weight: int = 1

    @property
    def endpoint(self) -> Vec3:
        if self.kind != "segment":
            raise InputError("rays have no second endpoint")
        return v3add(self.p, s3mul(self.length, self.d))


@dataclass(frozen=True)
class SpaceCurve:
    """Balanced 1-complex in R^3 with rational vertices."""

    edges: Tuple[SpaceCurveEdge, ...]

    @property
    def vertices(self) -> Tuple[Vec3, ...]:
        out = set()
        for e in self.edges:
            out.add(e.p)
            if e.kind == "segment":
                out.add(e.endpoint)
        return tuple(sorted(out))

    def end_counts(self) -> Dict[IVec3, int]:
        out: Dict[IVec3, int] = {}
        for e in self.edges:
            if e.kind == "ray":
                out[e.d] = out.get(e.d, 0) + e.weight
        return out

    def is_balanced(self) -> bool:
        star: Dict[Vec3, List] = {}
        for e in self.edges:
            star.setdefault(e.p, []).append(s3mul(e.weight, e.d))
            if e.kind == "segment":
                star.setdefault(e.endpoint, []).append(s3mul(-e.weight, e.d))
        for p, dirs in star.items():
            if len(dirs) == 1:
                return False
            total = (Q(0), Q(0), Q(0))
            for d in dirs:
                total = v3add(total, d)
            if total != (0, 0, 0):
                return False
        return True


# --- smooth quadric: dual triangulation of 2*Delta^3 -------------------

QUADRIC_SUPPORT: Tuple[IVec3, ...] = tuple(
    sorted(
        (i, j, k)
        for i in range(3)
        for j in range(3)
        for k in range(3)
        if i + j + k <= 2
    )
)


def _check_quadric(q: Dict[IVec3, Fraction]) -> Dict[IVec3, Fraction]:
    q = {(int(m[0]), int(m[1]), int(m[2])): Q(h) for m, h in q.items()}
    if set(q) != set(QUADRIC_SUPPORT):
        raise InputError(
            "quadric support must be all 10 monomials of degree <= 2"
        )
    return q


def upper_tetrahedra(q: Dict[IVec3, Fraction]) -> List[Tuple[IVec3, ...]]:
    """Facets of the upper hull of the lifted support, as support tuples.

    Brute force over 4-subsets; ties (5+ lifted points on a supporting
    hyperplane) make the subdivision non-simplicial and are rejected by
    the caller via the facet count."""
    q = _check_quadric(q)
    pts = QUADRIC_SUPPORT
    tets = []
    for sub in itertools.combinations(pts, 4):
        m1, m2, m3, m4 = sub
        vol = det3(v3sub(m2, m1), v3sub(m3, m1), v3sub(m4, m1))
        if vol == 0:
            continue
        # hyperplane h = A.m + b through the four lifted points
        A, b = _affine_through(sub, q)
        if all(
            q[m] < dot3(A, m) + b
            for m in pts
            if m not in sub
        ):
            tets.append(tuple(sorted(sub)))
    return sorted(set(tets))


def _affine_through(sub, q):
    m1 = sub[0]
    rows = [list(v3sub(m, m1)) for m in sub[1:]]
    rhs = [q[m] - q[m1] for m in sub[1:]]
    cols = list(zip(*rows))
    d = det3(*cols)
    A = []
    for i in range(3):
        repl = [rhs if j == i else cols[j] for j in range(3)]
        A.append(det3(*repl) / d)
    A = tuple(A)
    return A, q[m1] - dot3(A, m1)


def is_smooth_quadric(q: Dict[IVec3, Fraction]) -> bool:
    tets = upper_tetrahedra(q)
    if len(tets) != 8:
        return False
    return all(
        abs(det3(v3sub(t[1], t[0]), v3sub(t[2], t[0]), v3sub(t[3], t[0]))) == 1
        for t in tets
    )


def _dual_vertex(tet, q) -> Vec3:
    # point where the four monomials of the tet tie
    m1 = tet[0]
    cols = list(zip(*[list(v3sub(m1, m)) for m in tet[1:]]))
    rhs = [q[m] - q[m1] for m in tet[1:]]
    d = det3(*cols)
    out = []
    for i in range(3):
        repl = [rhs if j == i else cols[j] for j in range(3)]
        out.append(det3(*repl) / d)
    return tuple(out)


def quadric_bounded_face(
    q: Dict[IVec3, Fraction]
) -> Tuple[Tuple[Vec3, ...], IVec3, IVec3]:
    """The unique bounded 2-face of a smooth tropical quadric, as a
    cyclically ordered parallelogram, with the two ruling directions
    (primitive side directions of the face)."""
    q = _check_quadric(q)
    tets = upper_tetrahedra(q)
    if not is_smooth_quadric(q):
        raise DegenerateCurveError(
            "quadric is not smooth: dual subdivision is not a unimodular "
            "triangulation (8 unimodular tetrahedra)"
        )
    interior = []
    for t in tets:
        for a, b in itertools.combinations(t, 2):
            mid = s3mul(Q(1, 2), v3add(a, b))
            if all(c > 0 for c in mid) and sum(mid) < 2:
                interior.append((a, b) if a < b else (b, a))
    interior = sorted(set(interior))
    assert len(interior) == 1, f"expected one interior edge, got {interior}"
    edge = interior[0]
    around = [t for t in tets if edge[0] in t and edge[1] in t]
    assert len(around) == 4
    verts = [_dual_vertex(t, q) for t in around]
    center = s3mul(Q(1, 4), (v3add(v3add(verts[0], verts[1]), v3add(verts[2], verts[3]))))
    # order around the face: sort by angle in a 2D chart of the face plane
    b1 = v3sub(verts[1], verts[0])
    normal = v3sub(edge[0], edge[1])
    b2 = cross3(normal, b1)
    ordered = sorted(
        verts,
        key=lambda p: _angle_key(
            dot3(v3sub(p, center), b1), dot3(v3sub(p, center), b2)
        ),
    )
    assert v3add(ordered[0], ordered[2]) == v3add(ordered[1], ordered[3]), (
        "bounded face is not a parallelogram"
    )
    start = min(range(4), key=lambda i: ordered[i])
    ordered = tuple(ordered[(start + i) % 4] for i in range(4))
    u1 = primitive3(v3sub(ordered[1], ordered[0]))
    u2 = primitive3(v3sub(ordered[3], ordered[0]))
    if u2 < u1:
        u1, u2 = u2, u1
        ordered = (ordered[0], ordered[3], ordered[2], ordered[1])
    return ordered, u1, u2


def _angle_key(x, y):
    # exact angular sort key: half-plane index then slope by cross product
    if y > 0 or (y == 0 and x > 0):
        half = 0
    else:
        half = 1
    return (half, (-x, y) if half == 0 else (x, -y), Q(0))


_PAIR_SUMS = {
    tuple(map(sum, zip(a, b))): (a, b)
    for a, b in itertools.combinations(PLANE_RAYS, 2)
}


def _end_pair(u: IVec3) -> Tuple[IVec3, IVec3]:
    pair = _PAIR_SUMS.get(u)
    if pair is None:
        raise DegenerateCurveError(
            f"ruling direction {u} is not a sum of two plane-ray directions"
        )
    return pair


# --- the lift map -------------------------------------------------------


@dataclass(frozen=True)
class LiftMap:
    """Affine map of a rectangle onto the bounded face of a smooth quadric.

    R = [x0, x0+ell1] x [y0, y0+ell2] maps by
    (x, y) |-> p0 + (x - x0) u1 + (y - y0) u2; ends in +-e1 go to +-u1,
    ends in +-e2 to +-u2, splitting at the face boundary into the
    assigned pairs."""

    quadric: Tuple[Tuple[IVec3, Fraction], ...]
    face: Tuple[Vec3, ...]
    p0: Vec3
    u1: IVec3
    u2: IVec3
    ell1: Fraction
    ell2: Fraction
    x0: Fraction
    y0: Fraction

    @property
    def rectangle(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x0, self.x0 + self.ell1, self.y0, self.y0 + self.ell2)

    def __call__(self, p: Vec2) -> Vec3:
        return v3add(
            self.p0,
            v3add(
                s3mul(Q(p[0]) - self.x0, self.u1),
                s3mul(Q(p[1]) - self.y0, self.u2),
            ),
        )

    def end_assignment(self, axis: int, sign: int) -> Tuple[IVec3, IVec3]:
        u = self.u1 if axis == 1 else self.u2
        return _end_pair(s3mul(sign, u) if sign > 0 else tuple(-c for c in u))


def lift_map(
    q: Dict[IVec3, Fraction], rect_origin: Vec2 = (Q(0), Q(0))
) -> LiftMap:
    face, u1, u2 = quadric_bounded_face(q)
    p0 = face[0]
    d1, d2 = v3sub(face[1], face[0]), v3sub(face[3], face[0])
    ell1 = next(Q(a) / b for a, b in zip(d1, u1) if b)
    ell2 = next(Q(a) / b for a, b in zip(d2, u2) if b)
    for u in (u1, u2):
        pa = _end_pair(u)
        pb = _end_pair(tuple(-c for c in u))
        assert set(pa) | set(pb) == set(PLANE_RAYS), (
            "end assignment does not partition the plane-ray directions"
        )
    return LiftMap(
        quadric=tuple(sorted(_check_quadric(q).items())),
        face=face,
        p0=p0,
        u1=u1,
        u2=u2,
        ell1=ell1,
        ell2=ell2,
        x0=Q(rect_origin[0]),
        y0=Q(rect_origin[1]),
    )


def quadric_contains(q: Dict[IVec3, Fraction], p: Vec3) -> bool:
    q = _check_quadric(q)
    vals = [h + dot3(m, p) for m, h in q.items()]
    m = max(vals)
    return sum(1 for x in vals if x == m) >= 2


def lift_curve(C: PlaneCurve, phi: LiftMap) -> SpaceCurve:
    """Image of a (d,d)-curve under the lift: a degree-2d space curve on
    the quadric."""
    prof = degree_profile(C)
    if prof.kind != "bidegree" or prof.d1 != prof.d2:
        raise InputError(f"lift needs a (d,d)-curve, got {prof}")
    xlo, xhi, ylo, yhi = phi.rectangle
    edges: List[SpaceCurveEdge] = []
    for e in C.edges:
        if e.kind == "segment":
            a, b = e.p, (e.p[0] + e.length * e.d[0], e.p[1] + e.length * e.d[1])
            for p in (a, b):
                if not (xlo <= p[0] <= xhi and ylo <= p[1] <= yhi):
                    raise InputError(
                        f"bounded edge endpoint {p} outside the rectangle "
                        f"[{xlo},{xhi}]x[{ylo},{yhi}]"
                    )
            P, Dv = phi(a), v3sub(phi(b), phi(a))
            d = primitive3(Dv)
            ln = next(Q(x) / y for x, y in zip(Dv, d) if y)
            edges.append(SpaceCurveEdge("segment", P, d, ln, e.weight))
            continue
        # ray in +-e1 or +-e2: run to the rectangle boundary, then split
        if e.d[1] == 0:
            axis, sign = 1, (1 if e.d[0] > 0 else -1)
            exit_c = xhi if sign > 0 else xlo
            t_exit = (exit_c - e.p[0]) * sign
            bpt = (exit_c, e.p[1])
        elif e.d[0] == 0:
            axis, sign = 2, (1 if e.d[1] > 0 else -1)
            exit_c = yhi if sign > 0 else ylo
            t_exit = (exit_c - e.p[1]) * sign
            bpt = (e.p[0], exit_c)
        else:
            raise InputError(f"(d,d)-curve has a non-axis ray {e.d}")
        if t_exit < 0:
            raise InputError(f"ray base {e.p} outside the rectangle")
        B = phi(bpt)
        if t_exit > 0:
            u = phi.u1 if axis == 1 else phi.u2
            d = u if sign > 0 else tuple(-c for c in u)
            edges.append(SpaceCurveEdge("segment", phi(e.p), d, t_exit, e.weight))
        for d in phi.end_assignment(axis, sign):
            edges.append(SpaceCurveEdge("ray", B, d, None, e.weight))
    out = SpaceCurve(tuple(edges))
    assert out.is_balanced(), "lifted curve is not balanced"
    counts = out.end_counts()
    assert all(counts.get(d, 0) == 2 * prof.d1 for d in PLANE_RAYS), (
        f"lifted curve has wrong end counts {counts}"
    )
    return out


# --- planes through points ----------------------------------------------


def plane_through(p1: Vec3, p2: Vec3, p3: Vec3) -> TropicalPlane:
    """The tropical plane through three general points.

    Membership of p in the plane with vertex v means the maximum of
    (p1-v1, p2-v2, p3-v3, 0) is attained at least twice, so assigning a
    tying pair to each point gives a linear system in v plus inequality
    checks; the finitely many assignments are solved exactly."""
    pts = [v3(p1), v3(p2), v3(p3)]
    sols = set()
    families = []
    for assign in itertools.product(itertools.combinations(range(4), 2), repeat=3):
        rows, rhs = [], []
        for p, (i, j) in zip(pts, assign):
            # form_i(p, v) = form_j(p, v), forms linear in v
            ci = [Q(0)] * 3
            cj = [Q(0)] * 3
            bi = bj = Q(0)
            if i < 3:
                ci[i] = Q(-1)
                bi = p[i]
            if j < 3:
                cj[j] = Q(-1)
                bj = p[j]
            rows.append([a - b for a, b in zip(ci, cj)])
            rhs.append(bj - bi)
        try:
            part, null = lin_solve(rows, rhs)
        except SolveError:
            continue
        if null:
            families.append((assign, part, null))
            continue
        v = tuple(part)
        if _plane_assign_ok(pts, assign, v):
            sols.add(v)
    for assign, part, null in families:
        # a feasible positive-dimensional vertex family means infinitely
        # many planes; sample two points of the affine set and test
        hits = []
        for t in (Q(0), Q(1), Q(-1), Q(1, 2)):
            v = tuple(a + t * b for a, b in zip(part, null[0]))
            if _plane_assign_ok(pts, assign, v):
                hits.append(v)
        if len(hits) >= 2:
            raise DegenerateCurveError(
                f"infinitely many tropical planes through {pts}: vertex family "
                f"{tuple(part)} + t*{tuple(null[0])}"
            )
        sols.update(hits)
    if not sols:
        raise DegenerateCurveError(f"no tropical plane through {pts}")
    if len(sols) > 1:
        raise DegenerateCurveError(
            f"multiple tropical planes through {pts}: vertices {sorted(sols)}"
        )
    return TropicalPlane(next(iter(sols)))


def _plane_assign_ok(pts, assign, v) -> bool:
    P = TropicalPlane(tuple(v))
    for p, (i, j) in zip(pts, assign):
        f = P.forms(p)
        if f[i] != f[j] or f[i] < max(f):
            return False
    return True


# --- stable contact of a plane with a space curve ------------------------


def _cell_coords(P: TropicalPlane, i: int, j: int, p) -> Optional[Tuple]:
    """(a, b) with p = v + a r_i + b r_j if p lies in the span; else None."""
    ri, rj = PLANE_RAYS[i], PLANE_RAYS[j]
    n = cross3(ri, rj)
    w = v3sub(p, P.vertex)
    if dot3(n, w) != 0:
        return None
    # two independent coordinates suffice
    for (a1, a2) in itertools.combinations(range(3), 2):
        det = ri[a1] * rj[a2] - ri[a2] * rj[a1]
        if det:
            a = (w[a1] * rj[a2] - w[a2] * rj[a1]) / det
            b = (ri[a1] * w[a2] - ri[a2] * w[a1]) / det
            return (a, b)
    return None


def _overlap_intervals(P: TropicalPlane, e: SpaceCurveEdge):
    """Maximal parameter intervals of the edge lying in the 2-skeleton."""
    ivals = []
    hi = e.length if e.kind == "segment" else None
    for i, j in itertools.combinations(range(4), 2):
        base = _cell_coords(P, i, j, e.p)
        if base is None:
            continue
        step = _cell_coords(P, i, j, v3add(P.vertex, e.d))
        if step is None:
            continue
        # a(t) = base_a + t step_a >= 0, same for b, t in [0, hi]
        lo_t, hi_t = Q(0), hi
        ok = True
        for c0, c1 in zip(base, step):
            if c1 == 0:
                if c0 < 0:
                    ok = False
                    break
            else:
                bound = -c0 / c1
                if c1 > 0:
                    lo_t = max(lo_t, bound)
                else:
                    hi_t = bound if hi_t is None else min(hi_t, bound)
        if not ok or (hi_t is not None and lo_t >= hi_t):
            continue
        ivals.append((lo_t, hi_t))
    if not ivals:
        return []
    ivals.sort(key=lambda ab: (ab[0], ab[1] is None, ab[1] or 0))
    merged = [ivals[0]]
    for lo, hi2 in ivals[1:]:
        mlo, mhi = merged[-1]
        if mhi is None or lo <= mhi:
            nhi = None if (mhi is None or hi2 is None) else max(mhi, hi2)
            merged[-1] = (mlo, nhi)
        else:
            merged.append((lo, hi2))
    return merged


@dataclass(frozen=True)
class ContactComponent:
    """Connected piece of the plane-curve tangency locus."""

    loci: Tuple[Tuple[Vec3, ...], ...]  # points (p,) and segments (p, q)
    weight: int

    @property
    def representative(self) -> Vec3:
        reps = []
        for locus in self.loci:
            if len(locus) == 1:
                reps.append(locus[0])
            else:
                reps.append(s3mul(Q(1, 2), v3add(locus[0], locus[1])))
        return min(reps)


def plane_curve_contact(
    P: TropicalPlane, G: SpaceCurve
) -> Tuple[List[ContactComponent], Tuple[int, ...], int, List[Tuple[Vec3, int]]]:
    """Stable contact of a tropical plane with a space curve.

    Returns (components, partition, total weight, uncovered points): the
    perturbation-limit intersection points grouped into connected
    tangency components (overlap segments and weight >= 2 points, merged
    when closures touch), the sorted component weights, the total stable
    weight, and the stable points not covered by any component."""
    hits: Dict[Vec3, int] = {}
    eps = PERTURBATION3
    for i, j in itertools.combinations(range(4), 2):
        ri, rj = PLANE_RAYS[i], PLANE_RAYS[j]
        for e in G.edges:
            md = tuple(-c for c in e.d)
            det = det3(ri, rj, md)
            if det == 0:
                continue
            rhs = tuple(
                DualQ(a - b, c)
                for a, b, c in zip(e.p, P.vertex, eps)
            )
            a = det3(rhs, rj, md) / det
            b = det3(ri, rhs, md) / det
            t = det3(ri, rj, rhs) / det
            hi = None if e.kind == "ray" else e.length
            if not (
                a > DualQ(Q(0))
                and b > DualQ(Q(0))
                and _strictly_inside(t, Q(0), hi)
            ):
                continue
            pt = v3add(e.p, s3mul(t.re, e.d))
            hits[pt] = hits.get(pt, 0) + e.weight * abs(det)
    total = sum(hits.values())
    # overlap events: bounded maximal pieces of edges inside the 2-skeleton
    events: List[Tuple[Tuple[Vec3, ...], str]] = []
    for e in G.edges:
        for lo, hi in _overlap_intervals(P, e):
            if hi is None:
                continue
            if lo == hi:
                continue
            a = v3add(e.p, s3mul(lo, e.d))
            b = v3add(e.p, s3mul(hi, e.d))
            events.append(((a, b), "segment"))
    absorbed = set()
    for p in hits:
        for locus, _ in events:
            if _on_segment3(p, locus[0], locus[1]):
                absorbed.add(p)
                break
    for p, m in sorted(hits.items()):
        if p not in absorbed and m >= 2:
            events.append(((p,), "point"))
    # merge events whose closures touch
    parent = list(range(len(events)))

    def find(k: int) -> int:
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for x in range(len(events)):
        for y in range(x + 1, len(events)):
            if _loci_touch(events[x][0], events[y][0]):
                parent[find(x)] = find(y)
    groups: Dict[int, List] = {}
    for k, ev in enumerate(events):
        groups.setdefault(find(k), []).append(ev[0])
    comps = []
    for loci in groups.values():
        w = sum(
            m
            for p, m in hits.items()
            if any(
                _on_segment3(p, lc[0], lc[1]) if len(lc) == 2 else p == lc[0]
                for lc in loci
            )
        )
        comps.append(ContactComponent(tuple(sorted(loci)), w))
    comps.sort(key=lambda c: c.representative)
    uncovered = sorted(
        (p, m)
        for p, m in hits.items()
        if not any(
            _on_segment3(p, lc[0], lc[1]) if len(lc) == 2 else p == lc[0]
            for c in comps
            for lc in c.loci
        )
    )
    partition = tuple(sorted((c.weight for c in comps), reverse=True))
    return comps, partition, total, uncovered


def _on_segment3(p, a, b) -> bool:
    ab = v3sub(b, a)
    ap = v3sub(p, a)
    if cross3(ab, ap) != (0, 0, 0):
        return False
    t = dot3(ap, ab)
    return 0 <= t <= dot3(ab, ab)


def _loci_touch(l1, l2) -> bool:
    if len(l1) == 1 and len(l2) == 1:
        return l1[0] == l2[0]
    if len(l1) == 1:
        return _on_segment3(l1[0], l2[0], l2[1])
    if len(l2) == 1:
        return _on_segment3(l2[0], l1[0], l1[1])
    a1, b1 = l1
    a2, b2 = l2
    d1, d2 = v3sub(b1, a1), v3sub(b2, a2)
    n = cross3(d1, d2)
    r = v3sub(a2, a1)
    if n == (0, 0, 0):
        if cross3(d1, r) != (0, 0, 0):
            return False
        return max(min(a1, b1), min(a2, b2)) <= min(max(a1, b1), max(a2, b2))
    if dot3(n, r) != 0:
        return False  # skew
    nn = dot3(n, n)
    t = dot3(cross3(r, d2), n) / nn
    s = dot3(cross3(r, d1), n) / nn
    return 0 <= t <= 1 and 0 <= s <= 1


# --- tritangent planes of the lifted sextic ------------------------------


def tritangent_planes_of_lift(
    C: PlaneCurve,
    phi: LiftMap,
    classes: Optional[Sequence[TritangentClass]] = None,
    per_representative: bool = False,
) -> List[Tuple[TritangentClass, TropicalPlane]]:
    """Tritangent planes of the lifted curve, one per class.

    Lifts a representative (1,1)-curve of each class to a conic on the
    quadric and passes a plane through it.  With per_representative,
    family classes contribute one plane per sampled representative
    (all equivalent: same contact partition and theta characteristic)."""
    if classes is None:
        classes = enumerate_tritangents(C)
    out = []
    for tc in classes:
        reps = tc.representatives if per_representative else tc.representatives[:1]
        for L in reps:
            conic = lift_curve(L.curve(), phi)
            P = _plane_of_conic(conic)
            out.append((tc, P))
    return out


def _conic_probe_points(conic: SpaceCurve) -> List[Vec3]:
    pts = []
    for e in conic.edges:
        if e.kind == "segment":
            pts.append(v3add(e.p, s3mul(e.length / 2, e.d)))
        else:
            pts.append(v3add(e.p, e.d))
    return sorted(set(pts))


def _plane_of_conic(conic: SpaceCurve) -> TropicalPlane:
    probes = _conic_probe_points(conic)
    last = None
    for triple in itertools.combinations(probes, 3):
        try:
            P = plane_through(*triple)
        except DegenerateCurveError as exc:
            last = exc
            continue
        if all(P.contains(p) for p in probes):
            return P
    raise DegenerateCurveError(
        f"no tropical plane contains the lifted conic (last failure: {last})"
    )
