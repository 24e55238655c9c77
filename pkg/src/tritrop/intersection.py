"""Stable intersection of tropical plane curves, tangencies, tritangency.

The perturbation limit is exact: the second curve is translated by eps*v
where eps is an infinitesimal (dual numbers Q[eps]/(eps^2), compared
lexicographically) and v = (1, 31/47) is a fixed direction not parallel to
any edge direction occurring here. Transverse crossings of the perturbed
curves are aggregated at their eps -> 0 limits; each contributes
m1*m2*|det| by the lattice-index formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from tritrop.exceptions import DegenerateCurveError, InputError
from tritrop.plane_curve import (
    CurveEdge,
    PlaneCurve,
    Vec2,
    cross,
    degree_profile,
    dot,
    vadd,
    vsub,
)

Q = Fraction

PERTURBATION = (Q(1), Q(31, 47))


@dataclass(frozen=True, order=True)
class DualQ:
    """a + b*eps with eps^2 = 0; the derived order is lexicographic, which
    matches 'for all sufficiently small eps > 0'."""

    re: Fraction
    eps: Fraction = Q(0)

    def _co(self, other) -> "DualQ":
        return other if isinstance(other, DualQ) else DualQ(Q(other))

    def __add__(self, other):
        o = self._co(other)
        return DualQ(self.re + o.re, self.eps + o.eps)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        return DualQ(self.re - o.re, self.eps - o.eps)

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        return DualQ(self.re * o.re, self.re * o.eps + self.eps * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, DualQ):
            raise InputError("division restricted to rational scalars")
        return DualQ(self.re / Q(other), self.eps / Q(other))

    def __neg__(self):
        return DualQ(-self.re, -self.eps)


@dataclass(frozen=True)
class IntersectionDivisor:
    """Stable intersection points with multiplicities, sorted by position."""

    points: Tuple[Tuple[Vec2, int], ...]

    def total(self) -> int:
        return sum(m for _, m in self.points)

    def multiplicity_at(self, p: Vec2) -> int:
        for q, m in self.points:
            if q == p:
                return m
        return 0

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class TangencyEvent:
    """A tangency locus: a point, or a closed bounded segment."""

    kind: str  # "point" | "segment"
    locus: Tuple[Vec2, ...]  # (p,) or (p1, p2)
    multiplicity: int
    hosts: Tuple[Tuple[int, int], ...]  # contributing (edge of C1, edge of C2)

    @property
    def representative(self) -> Vec2:
        if self.kind == "point":
            return self.locus[0]
        (x1, y1), (x2, y2) = self.locus
        return ((x1 + x2) / 2, (y1 + y2) / 2)

    def contains(self, p: Vec2) -> bool:
        if self.kind == "point":
            return self.locus[0] == p
        a, b = self.locus
        if cross(vsub(b, a), vsub(p, a)) != 0:
            return False
        return min(a, b) <= p <= max(a, b)


def _bounds(e: CurveEdge) -> Tuple[Optional[Fraction], Optional[Fraction]]:
    if e.kind == "segment":
        return Q(0), e.length
    if e.kind == "ray":
        return Q(0), None
    return None, None


def _strictly_inside(t: DualQ, lo, hi) -> bool:
    if lo is not None and not t > DualQ(lo):
        return False
    if hi is not None and not t < DualQ(hi):
        return False
    return True


# slack for the float screen below; coordinates in practice stay below 1e3,
# so accumulated rounding is orders of magnitude smaller than this
_SCREEN_MARGIN = 1e-6


def _edge_floats(C: PlaneCurve):
    out = []
    for e in C.edges:
        lo, hi = _bounds(e)
        out.append(
            (
                float(e.p[0]),
                float(e.p[1]),
                float(e.d[0]),
                float(e.d[1]),
                -_SCREEN_MARGIN if lo is not None else None,
                float(hi) + _SCREEN_MARGIN if hi is not None else None,
            )
        )
    return out


def _transverse_hits(C1: PlaneCurve, C2: PlaneCurve, v: Vec2):
    """All crossings of C1 with C2 + eps*v, binned at their real limits.

    Pairs are screened in floating point first; the margin only ever lets
    extra pairs through to the exact test, never drops one, so the result
    stays exact."""
    hits: Dict[Vec2, int] = {}
    hosts: Dict[Vec2, List[Tuple[int, int]]] = {}
    f1 = _edge_floats(C1)
    f2 = _edge_floats(C2)
    for i1, e1 in enumerate(C1.edges):
        lo1, hi1 = _bounds(e1)
        p1x, p1y, d1x, d1y, flo1, fhi1 = f1[i1]
        for i2, e2 in enumerate(C2.edges):
            det = cross(e1.d, e2.d)
            if det == 0:
                continue
            fdet = float(det)
            p2x, p2y, _, _, flo2, fhi2 = f2[i2]
            rx, ry = p2x - p1x, p2y - p1y
            tf = (rx * float(e2.d[1]) - ry * float(e2.d[0])) / fdet
            if (flo1 is not None and tf < flo1) or (fhi1 is not None and tf > fhi1):
                continue
            sf = (rx * d1y - ry * d1x) / fdet
            if (flo2 is not None and sf < flo2) or (fhi2 is not None and sf > fhi2):
                continue
            lo2, hi2 = _bounds(e2)
            r = (
                DualQ(e2.p[0] - e1.p[0], v[0]),
                DualQ(e2.p[1] - e1.p[1], v[1]),
            )
            t = cross(r, e2.d) / det
            s = cross(r, e1.d) / det
            if not (_strictly_inside(t, lo1, hi1) and _strictly_inside(s, lo2, hi2)):
                continue
            p = (e1.p[0] + t.re * e1.d[0], e1.p[1] + t.re * e1.d[1])
            m = e1.weight * e2.weight * abs(det)
            hits[p] = hits.get(p, 0) + m
            hosts.setdefault(p, []).append((i1, i2))
    return hits, hosts


def _checked_divisor(C1: PlaneCurve, C2: PlaneCurve, hits) -> IntersectionDivisor:
    div = IntersectionDivisor(tuple(sorted(hits.items())))
    try:
        expected = degree_profile(C1).bezout(degree_profile(C2))
    except InputError:
        expected = None
    if expected is not None and div.total() != expected:
        raise DegenerateCurveError(
            f"stable intersection total {div.total()} != Bezout {expected}; "
            "perturbation direction not generic for this input"
        )
    return div


def stable_intersection(
    C1: PlaneCurve, C2: PlaneCurve, v: Vec2 = PERTURBATION
) -> IntersectionDivisor:
    """Stable intersection divisor of two tropical plane curves.

    When both degree profiles are recognized the total multiplicity is
    checked against the tropical Bezout number; curves with other end
    patterns are still intersected, just not cross-checked.
    """
    hits, _ = _transverse_hits(C1, C2, v)
    return _checked_divisor(C1, C2, hits)


def _line_key(d, p):
    if d < (0, 0) or (d[0] == 0 and d[1] < 0):
        d = (-d[0], -d[1])
    return d, cross(d, p)


def _interval_on_line(e: CurveEdge, dc) -> Tuple[Optional[Fraction], Optional[Fraction]]:
    """The cell's parameter interval under u(x) = <x, dc>; None = infinite."""
    lo, hi = _bounds(e)
    dd = dot(dc, dc)
    s = 1 if e.d == dc else -1
    u0 = dot(e.p, dc)
    a = None if lo is None else u0 + s * lo * dd
    b = None if hi is None else u0 + s * hi * dd
    if s == -1:
        a, b = b, a
    return a, b


def _overlap_segments(C1: PlaneCurve, C2: PlaneCurve):
    """Maximal bounded positive-length components of the set-theoretic
    intersection, grouped per supporting line. Unbounded components are
    dropped: a tangency segment must be bounded."""
    by_line: Dict[Tuple, List] = {}
    for i1, e1 in enumerate(C1.edges):
        for i2, e2 in enumerate(C2.edges):
            if cross(e1.d, e2.d) != 0:
                continue
            if cross(e1.d, vsub(e2.p, e1.p)) != 0:
                continue
            key = _line_key(e1.d, e1.p)
            dc = key[0]
            a1, b1 = _interval_on_line(e1, dc)
            a2, b2 = _interval_on_line(e2, dc)
            lo = a1 if a2 is None else a2 if a1 is None else max(a1, a2)
            hi = b1 if b2 is None else b2 if b1 is None else min(b1, b2)
            if lo is not None and hi is not None and lo >= hi:
                continue
            by_line.setdefault(key, []).append((lo, hi, (i1, i2)))
    out = []
    for (d, c), ivals in sorted(by_line.items()):
        ivals.sort(key=lambda iv: (iv[0] is not None, iv[0] if iv[0] is not None else Q(0)))
        merged: List = []
        for lo, hi, pair in ivals:
            if merged:
                mlo, mhi, pairs = merged[-1]
                if mhi is None or lo is None or lo <= mhi:
                    nhi = None if (mhi is None or hi is None) else max(mhi, hi)
                    merged[-1] = (mlo, nhi, pairs + [pair])
                    continue
            merged.append((lo, hi, [pair]))
        for lo, hi, pairs in merged:
            if lo is None or hi is None:
                continue
            out.append(
                ((_point_on_line(d, c, lo), _point_on_line(d, c, hi)), tuple(pairs))
            )
    return out


def _point_on_line(d, c, u) -> Vec2:
    # solve <x, d> = u, cross(d, x) = c
    dd = dot(d, d)
    x = (u * d[0] - c * d[1]) / dd
    y = (u * d[1] + c * d[0]) / dd
    return (x, y)


def tangencies(C1: PlaneCurve, C2: PlaneCurve) -> List[TangencyEvent]:
    """Tangency events: weight >= 2 stable points, and maximal bounded
    overlap segments carrying the stable weight of their closure."""
    hits, hosts = _transverse_hits(C1, C2, PERTURBATION)
    return _events_from_hits(C1, C2, hits, hosts)


def _events_from_hits(C1, C2, hits, hosts) -> List[TangencyEvent]:
    events: List[TangencyEvent] = []
    absorbed = set()
    for (p1, p2), pairs in _overlap_segments(C1, C2):
        weight = 0
        for p, m in hits.items():
            if _on_segment(p, p1, p2):
                weight += m
                absorbed.add(p)
        events.append(TangencyEvent("segment", (p1, p2), weight, pairs))
    for p in sorted(hits):
        if p not in absorbed and hits[p] >= 2:
            events.append(TangencyEvent("point", (p,), hits[p], tuple(hosts[p])))
    return events


def _on_segment(p: Vec2, a: Vec2, b: Vec2) -> bool:
    if cross(vsub(b, a), vsub(p, a)) != 0:
        return False
    t = dot(vsub(p, a), vsub(b, a))
    return 0 <= t <= dot(vsub(b, a), vsub(b, a))


def _segments_touch(a1: Vec2, b1: Vec2, a2: Vec2, b2: Vec2) -> bool:
    d1, d2 = vsub(b1, a1), vsub(b2, a2)
    det = cross(d1, d2)
    if det == 0:
        if cross(d1, vsub(a2, a1)) != 0:
            return False
        # collinear; lexicographic order is the order along the line
        return max(min(a1, b1), min(a2, b2)) <= min(max(a1, b1), max(a2, b2))
    r = vsub(a2, a1)
    t = cross(r, d2) / det
    s = cross(r, d1) / det
    return 0 <= t <= 1 and 0 <= s <= 1


def _events_touch(e1: TangencyEvent, e2: TangencyEvent) -> bool:
    if e1.kind == "point":
        return e2.contains(e1.locus[0])
    if e2.kind == "point":
        return e1.contains(e2.locus[0])
    return _segments_touch(*e1.locus, *e2.locus)


def contact_components(
    C1: PlaneCurve, C2: PlaneCurve
) -> Optional[List[Tuple[Tuple[TangencyEvent, ...], int]]]:
    """Connected components of the tangency locus, each with the stable
    weight carried by its closure.

    Tangency events whose closures share a point form one connected place;
    a stable point lying on several events of the place is counted once,
    so chains of overlap segments around a common vertex are not inflated.
    Returns None when some stable intersection point lies outside every
    event: such a transverse crossing rules out tritangency."""
    hits, hosts = _transverse_hits(C1, C2, PERTURBATION)
    events = _events_from_hits(C1, C2, hits, hosts)
    div = _checked_divisor(C1, C2, hits)
    for p, _ in div:
        if not any(ev.contains(p) for ev in events):
            return None
    parent = list(range(len(events)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(events)):
        for j in range(i + 1, len(events)):
            if _events_touch(events[i], events[j]):
                parent[find(i)] = find(j)
    groups: Dict[int, List[TangencyEvent]] = {}
    for i, ev in enumerate(events):
        groups.setdefault(find(i), []).append(ev)
    out = []
    for evs in groups.values():
        weight = sum(
            m for p, m in div if any(ev.contains(p) for ev in evs)
        )
        out.append((tuple(evs), weight))
    out.sort(key=lambda cw: min(ev.representative for ev in cw[0]))
    return out


def tritangency_certificate(
    C1: PlaneCurve, C2: PlaneCurve
) -> Optional[Tuple[List[Tuple[Vec2, int]], Tuple[int, ...]]]:
    """Contact divisor and multiplicity partition if the curves are
    tritangent: the tangency locus falls into connected places of even
    stable weight forming a partition of 6, covering every stable
    intersection point. Returns None otherwise.

    Each place contributes weight/2 chips at its representative point
    (the smallest event representative; for segments, the midpoint)."""
    comps = contact_components(C1, C2)
    if comps is None:
        return None
    mults = tuple(sorted((w for _, w in comps), reverse=True))
    if any(m % 2 for m in mults) or mults not in {(2, 2, 2), (4, 2), (6,)}:
        return None
    contacts = [
        (min(ev.representative for ev in evs), w // 2) for evs, w in comps
    ]
    contacts.sort()
    return contacts, mults
