"""Enumeration of tritangent (1,1)-curves to a smooth (3,3)-curve.

A (1,1)-curve with heights (0, h10, h01, h11) is determined by its four ray
levels: the south ray sits at x = s = -h10, the west ray at y = w = -h01,
the north ray at x = n = h01 - h11 and the east ray at y = e = h10 - h11.
With t = n - s = e - w the curve has a bounded edge of direction (1,1) for
t > 0 (type +) and (1,-1) for t < 0 (type -). All tangency conditions are
affine in (h10, h01, h11) once the type is fixed, so candidates come from
solving small linear systems attached to combinatorial event templates:

  * overlap of a ray / the bounded edge with a parallel edge of C (1 equality),
  * a vertex of C in the relative interior of a cell of the (1,1)-curve (1),
  * a vertex of the (1,1)-curve on a cell of C (1), or on a vertex of C (2),
  * a transverse crossing of cells with lattice multiplicity >= 2 (0).

Each template guarantees a contact of some even minimal weight; combos of
templates whose minimal weights sum to 6 are solved and every sample is
certified by the exact stable-intersection tangency certificate. Higher
actual weights always come from further affine coincidences, which occupy
template slots of their own, so this enumeration sees every tritangent.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from tritrop.exceptions import DegenerateCurveError, InputError
from tritrop.intersection import (
    _interval_on_line,
    _line_key,
    contact_components,
    tritangency_certificate,
)
from tritrop.linear import solve as lin_solve
from tritrop.exceptions import SolveError
from tritrop.metric_graph import Divisor
from tritrop.plane_curve import (
    PlaneCurve,
    Skeleton,
    TropicalPolynomial,
    Vec2,
    cross,
    curve_from_polynomial,
    degree_profile,
    dot,
    is_smooth,
    primitive,
    skeleton,
)
from tritrop.theta import ThetaCharacteristic, all_theta_characteristics

Q = Fraction

# affine expressions a*h10 + b*h01 + c*h11 + d over the height unknowns
Expr = Tuple[Fraction, Fraction, Fraction, Fraction]

EX_S: Expr = (Q(-1), Q(0), Q(0), Q(0))
EX_W: Expr = (Q(0), Q(-1), Q(0), Q(0))
EX_N: Expr = (Q(0), Q(1), Q(-1), Q(0))
EX_E: Expr = (Q(1), Q(0), Q(-1), Q(0))
EX_T: Expr = (Q(1), Q(1), Q(-1), Q(0))  # = n - s = e - w


def ex_const(v) -> Expr:
    return (Q(0), Q(0), Q(0), Q(v))


def ex_add(x: Expr, y: Expr) -> Expr:
    return tuple(a + b for a, b in zip(x, y))  # type: ignore[return-value]


def ex_sub(x: Expr, y: Expr) -> Expr:
    return tuple(a - b for a, b in zip(x, y))  # type: ignore[return-value]


def ex_scale(c, x: Expr) -> Expr:
    c = Q(c)
    return tuple(c * a for a in x)  # type: ignore[return-value]


def ex_eval(x: Expr, h: Tuple[Fraction, Fraction, Fraction]) -> Fraction:
    return x[0] * h[0] + x[1] * h[1] + x[2] * h[2] + x[3]


@dataclass(frozen=True)
class OneOneCurve:
    """Heights (h00 = 0, h10, h01, h11) of a curve of bi-degree (1,1)."""

    h10: Fraction
    h01: Fraction
    h11: Fraction

    @property
    def levels(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        """(s, w, n, e): south/west/north/east ray levels."""
        return (-self.h10, -self.h01, self.h01 - self.h11, self.h10 - self.h11)

    @property
    def edge_type(self) -> int:
        t = self.h10 + self.h01 - self.h11
        return (t > 0) - (t < 0)

    def polynomial(self) -> TropicalPolynomial:
        return TropicalPolynomial(
            {(0, 0): Q(0), (1, 0): self.h10, (0, 1): self.h01, (1, 1): self.h11}
        )

    def curve(self) -> PlaneCurve:
        return curve_from_polynomial(self.polynomial())


@dataclass(frozen=True)
class EventTemplate:
    """Affine conditions forcing one tangency event of minimal even weight."""

    kind: str  # ray-overlap | edge-overlap | curve-vertex | line-vertex | vertex-vertex | crossing
    slot: str  # W | E | S | N | B | V1 | V2
    sigma: int  # +1 / -1: type of the (1,1)-curve the conditions assume
    eqs: Tuple[Expr, ...]
    ineqs: Tuple[Expr, ...]
    min_weight: int
    target: Tuple  # ("edge", j) or ("vertex", i) on the fixed curve


@dataclass
class TritangentClass:
    """An equivalence class of tritangent (1,1)-curves."""

    theta: ThetaCharacteristic
    representatives: List[OneOneCurve]
    contact_divisor: Divisor  # retracted to the skeleton
    contacts: List[Tuple[Vec2, int]]  # plane contact chips of representatives[0]
    partition: Tuple[int, ...]
    family: bool
    class_key: Tuple


class _CellData:
    """Per-edge geometry of the fixed curve used by the template builders."""

    def __init__(self, C: PlaneCurve):
        self.C = C
        self.lines = []  # (normal nu, gamma) with nu . x = gamma
        self.intervals = []  # (dc, a, b): parameter <x, dc> range, None = infinite
        for e in C.edges:
            nu = primitive((-e.d[1], e.d[0]))
            if nu < (0, 0):
                nu = (-nu[0], -nu[1])
            self.lines.append((nu, dot(nu, e.p)))
            dc = _line_key(e.d, e.p)[0]
            a, b = _interval_on_line(e, dc)
            self.intervals.append((dc, a, b))
        xs = [v[0] for v in C.vertices]
        ys = [v[1] for v in C.vertices]
        margin = (max(xs) - min(xs)) + (max(ys) - min(ys)) + 5
        self.box = (
            min(xs) - margin,
            max(xs) + margin,
            min(ys) - margin,
            max(ys) + margin,
        )


def _slot_exprs(sigma: int):
    """Symbolic ray extents and bounded-edge data for a fixed type."""
    min_sn = EX_S if sigma > 0 else EX_N
    max_sn = EX_N if sigma > 0 else EX_S
    min_we = EX_W if sigma > 0 else EX_E
    max_we = EX_E if sigma > 0 else EX_W
    b_base = (EX_S, EX_W) if sigma > 0 else (EX_N, EX_W)
    b_dir = (1, 1) if sigma > 0 else (1, -1)
    return min_sn, max_sn, min_we, max_we, b_base, b_dir


def _cross_point(slot: str, sigma: int, nu, gamma) -> Optional[Tuple[Expr, Expr]]:
    """Symbolic intersection of the slot's supporting line with nu.x = gamma."""
    min_sn, max_sn, min_we, max_we, b_base, b_dir = _slot_exprs(sigma)
    if slot in ("W", "E"):
        lvl = EX_W if slot == "W" else EX_E
        if nu[0] == 0:
            return None
        x = ex_add(ex_const(Q(gamma, nu[0])), ex_scale(Q(-nu[1], nu[0]), lvl))
        return x, lvl
    if slot in ("S", "N"):
        lvl = EX_S if slot == "S" else EX_N
        if nu[1] == 0:
            return None
        y = ex_add(ex_const(Q(gamma, nu[1])), ex_scale(Q(-nu[0], nu[1]), lvl))
        return lvl, y
    den = nu[0] * b_dir[0] + nu[1] * b_dir[1]
    if den == 0:
        return None
    tau = ex_scale(
        Q(1, den),
        ex_sub(ex_const(gamma), ex_add(ex_scale(nu[0], b_base[0]), ex_scale(nu[1], b_base[1]))),
    )
    return (
        ex_add(b_base[0], ex_scale(b_dir[0], tau)),
        ex_add(b_base[1], ex_scale(b_dir[1], tau)),
    )


def _slot_range_ineqs(slot: str, sigma: int, pt: Tuple[Expr, Expr]) -> List[Expr]:
    min_sn, max_sn, min_we, max_we, _, _ = _slot_exprs(sigma)
    x, y = pt
    if slot == "W":
        return [ex_sub(min_sn, x)]
    if slot == "E":
        return [ex_sub(x, max_sn)]
    if slot == "S":
        return [ex_sub(min_we, y)]
    if slot == "N":
        return [ex_sub(y, max_we)]
    return [ex_sub(x, min_sn), ex_sub(max_sn, x)]


def _cell_range_ineqs(pt: Tuple[Expr, Expr], dc, a, b) -> List[Expr]:
    u = ex_add(ex_scale(dc[0], pt[0]), ex_scale(dc[1], pt[1]))
    out = []
    if a is not None:
        out.append(ex_sub(u, ex_const(a)))
    if b is not None:
        out.append(ex_sub(ex_const(b), u))
    return out


_SLOT_DIRS = {"W": (1, 0), "E": (1, 0), "S": (0, 1), "N": (0, 1)}


def _build_templates(C: PlaneCurve, data: _CellData, sigma: int) -> List[EventTemplate]:
    out: List[EventTemplate] = []
    min_sn, max_sn, min_we, max_we, b_base, b_dir = _slot_exprs(sigma)
    for j, e in enumerate(C.edges):
        nu, gamma = data.lines[j]
        dc, a, b = data.intervals[j]
        # overlaps of the four rays with parallel cells of C
        if e.d[1] == 0:  # horizontal
            if a is not None:
                out.append(EventTemplate(
                    "ray-overlap", "W", sigma,
                    (ex_sub(EX_W, ex_const(gamma)),),
                    (ex_sub(min_sn, ex_const(a)),), 2, ("edge", j)))
            if b is not None:
                out.append(EventTemplate(
                    "ray-overlap", "E", sigma,
                    (ex_sub(EX_E, ex_const(gamma)),),
                    (ex_sub(ex_const(b), max_sn),), 2, ("edge", j)))
        if e.d[0] == 0:  # vertical
            if a is not None:
                out.append(EventTemplate(
                    "ray-overlap", "S", sigma,
                    (ex_sub(EX_S, ex_const(gamma)),),
                    (ex_sub(min_we, ex_const(a)),), 2, ("edge", j)))
            if b is not None:
                out.append(EventTemplate(
                    "ray-overlap", "N", sigma,
                    (ex_sub(EX_N, ex_const(gamma)),),
                    (ex_sub(ex_const(b), max_we),), 2, ("edge", j)))
        # overlap of the bounded edge with a parallel diagonal cell
        if e.d == (b_dir[0], b_dir[1]) or e.d == (-b_dir[0], -b_dir[1]):
            if sigma > 0:
                eq = ex_sub(ex_sub(EX_W, EX_S), ex_const(gamma if nu == (-1, 1) else -gamma))
                ulo = ex_add(EX_S, EX_W)
                uhi = ex_add(EX_N, EX_E)
            else:
                # supporting line x + y = -h11 against the cell line x + y = gamma
                eq = ex_sub((Q(0), Q(0), Q(-1), Q(0)), ex_const(gamma))
                ulo = ex_sub(EX_N, EX_W)
                uhi = ex_sub(EX_S, EX_E)
            ineqs = []
            if a is not None:
                ineqs.append(ex_sub(uhi, ex_const(a)))
            if b is not None:
                ineqs.append(ex_sub(ex_const(b), ulo))
            out.append(EventTemplate(
                "edge-overlap", "B", sigma, (eq,), tuple(ineqs), 2, ("edge", j)))
        # the (1,1)-curve's vertices on the cell
        for vslot in ("V1", "V2"):
            V = _vertex_exprs(vslot, sigma)
            eq = ex_sub(
                ex_add(ex_scale(nu[0], V[0]), ex_scale(nu[1], V[1])), ex_const(gamma)
            )
            ineqs = tuple(_cell_range_ineqs(V, dc, a, b))
            out.append(EventTemplate(
                "line-vertex", vslot, sigma, (eq,), ineqs, 2, ("edge", j)))
        # transverse crossings of lattice multiplicity >= 2
        for slot in ("W", "E", "S", "N", "B"):
            dL = _SLOT_DIRS.get(slot, b_dir)
            det = abs(cross(dL, e.d)) * e.weight
            if det < 2:
                continue
            pt = _cross_point(slot, sigma, nu, gamma)
            if pt is None:
                continue
            ineqs = tuple(
                _slot_range_ineqs(slot, sigma, pt) + _cell_range_ineqs(pt, dc, a, b)
            )
            out.append(EventTemplate(
                "crossing", slot, sigma, (), ineqs, det, ("edge", j)))
    for i, (vx, vy) in enumerate(C.vertices):
        out.append(EventTemplate(
            "curve-vertex", "W", sigma, (ex_sub(EX_W, ex_const(vy)),),
            (ex_sub(min_sn, ex_const(vx)),), 2, ("vertex", i)))
        out.append(EventTemplate(
            "curve-vertex", "E", sigma, (ex_sub(EX_E, ex_const(vy)),),
            (ex_sub(ex_const(vx), max_sn),), 2, ("vertex", i)))
        out.append(EventTemplate(
            "curve-vertex", "S", sigma, (ex_sub(EX_S, ex_const(vx)),),
            (ex_sub(min_we, ex_const(vy)),), 2, ("vertex", i)))
        out.append(EventTemplate(
            "curve-vertex", "N", sigma, (ex_sub(EX_N, ex_const(vx)),),
            (ex_sub(ex_const(vy), max_we),), 2, ("vertex", i)))
        if sigma > 0:
            eq = ex_sub(ex_const(vy - vx), ex_sub(EX_W, EX_S))
        else:
            eq = ex_sub((Q(0), Q(0), Q(-1), Q(0)), ex_const(vx + vy))
        out.append(EventTemplate(
            "curve-vertex", "B", sigma, (eq,),
            (ex_sub(ex_const(vx), min_sn), ex_sub(max_sn, ex_const(vx))),
            2, ("vertex", i)))
        for vslot in ("V1", "V2"):
            V = _vertex_exprs(vslot, sigma)
            out.append(EventTemplate(
                "vertex-vertex", vslot, sigma,
                (ex_sub(V[0], ex_const(vx)), ex_sub(V[1], ex_const(vy))),
                (), 2, ("vertex", i)))
    return out


def _vertex_exprs(vslot: str, sigma: int) -> Tuple[Expr, Expr]:
    if sigma > 0:
        return (EX_S, EX_W) if vslot == "V1" else (EX_N, EX_E)
    return (EX_N, EX_W) if vslot == "V1" else (EX_S, EX_E)


# -- exact feasibility and sampling over the heights --------------------------

def _fm_sample(ineqs: List[Tuple[Tuple[Fraction, ...], Fraction]], nvars: int,
               fractions=(Q(1, 2),)) -> Optional[List[Tuple[Fraction, ...]]]:
    """Fourier-Motzkin over <= 3 variables. ineqs: (coeffs, const) meaning
    coeffs . y + const >= 0, the feasible set is assumed bounded. Returns
    None when empty, else one sample per requested interpolation fraction."""
    if nvars == 0:
        return [()] if all(d >= 0 for c, d in ineqs) else None
    stack = [ineqs]
    for k in range(nvars, 1, -1):
        cur, nxt, lows, ups = stack[-1], [], [], []
        for c, d in cur:
            ck = c[k - 1]
            rest = (c[: k - 1], d)
            if ck == 0:
                nxt.append(rest)
            elif ck > 0:  # y_k >= -(rest)/ck
                lows.append((tuple(-x / ck for x in c[: k - 1]), -d / ck))
            else:  # y_k <= -(rest)/ck
                ups.append((tuple(-x / ck for x in c[: k - 1]), -d / ck))
        for lc, ld in lows:
            for uc, ud in ups:
                nxt.append((tuple(u - l for u, l in zip(uc, lc)), ud - ld))
        seen = set()
        dedup = []
        for c, d in nxt:
            key = (c, d)
            if key not in seen:
                seen.add(key)
                dedup.append((c, d))
        stack.append(dedup)
    samples = []
    for frac in fractions:
        y: List[Fraction] = []
        ok = True
        for k in range(1, nvars + 1):
            cur = stack[nvars - k]
            lo = hi = None
            feas = True
            for c, d in cur:
                ck = c[k - 1]
                val = sum(ci * yi for ci, yi in zip(c[: k - 1], y)) + d
                if ck == 0:
                    if val < 0:
                        feas = False
                        break
                elif ck > 0:
                    bound = -val / ck
                    lo = bound if lo is None or bound > lo else lo
                else:
                    bound = -val / ck
                    hi = bound if hi is None or bound < hi else hi
            if not feas or (lo is not None and hi is not None and lo > hi):
                ok = False
                break
            if lo is None and hi is None:
                y.append(Q(0))
            elif lo is None:
                y.append(hi - 1)
            elif hi is None:
                y.append(lo + 1)
            else:
                y.append(lo + (hi - lo) * frac)
        if ok:
            samples.append(tuple(y))
    return samples or None


def _box_ineqs(data: _CellData) -> List[Expr]:
    x0, x1, y0, y1 = data.box
    out = []
    for ex, lo, hi in ((EX_S, x0, x1), (EX_N, x0, x1), (EX_W, y0, y1), (EX_E, y0, y1)):
        out.append(ex_sub(ex, ex_const(lo)))
        out.append(ex_sub(ex_const(hi), ex))
    return out


def _solve_combo(combo: Sequence[EventTemplate], base_ineqs: List[Expr],
                 want_family_samples: bool) -> Tuple[List[Tuple[Fraction, Fraction, Fraction]], int]:
    """Solve a template combo; returns (height samples, solution dimension)."""
    eqs: List[Expr] = []
    for t in combo:
        eqs.extend(t.eqs)
    A = [[q for q in ex[:3]] for ex in eqs]
    bvec = [-ex[3] for ex in eqs]
    try:
        h0, null = lin_solve(A, bvec) if eqs else ([Q(0)] * 3, [[Q(1), Q(0), Q(0)], [Q(0), Q(1), Q(0)], [Q(0), Q(0), Q(1)]])
    except SolveError:
        return [], 0
    ineqs: List[Expr] = list(base_ineqs)
    for t in combo:
        ineqs.extend(t.ineqs)
    dim = len(null)
    if dim == 0:
        h = (h0[0], h0[1], h0[2])
        if all(ex_eval(ex, h) >= 0 for ex in ineqs):
            return [h], 0
        return [], 0
    reduced = []
    for ex in ineqs:
        coeffs = tuple(
            sum(ex[i] * null[v][i] for i in range(3)) for v in range(dim)
        )
        const = sum(ex[i] * h0[i] for i in range(3)) + ex[3]
        reduced.append((coeffs, const))
    fracs = (Q(1, 2), Q(1, 3)) if want_family_samples else (Q(1, 2),)
    ys = _fm_sample(reduced, dim, fracs)
    if ys is None:
        return [], dim
    out = []
    for y in ys:
        h = tuple(h0[i] + sum(null[v][i] * y[v] for v in range(dim)) for i in range(3))
        out.append((h[0], h[1], h[2]))
    return out, dim


# -- public operations ---------------------------------------------------------

def candidate_events(C: PlaneCurve) -> List[EventTemplate]:
    """All tangency event templates for both (1,1)-curve types."""
    _require_33(C)
    data = _CellData(C)
    return _build_templates(C, data, 1) + _build_templates(C, data, -1)


def _require_33(C: PlaneCurve) -> None:
    prof = degree_profile(C)
    if prof.kind != "bidegree" or (prof.d1, prof.d2) != (3, 3):
        raise InputError("tritangent enumeration needs a curve of bi-degree (3,3)")
    if not is_smooth(C):
        raise DegenerateCurveError("tritangent enumeration needs a smooth curve")


def solve_template(C: PlaneCurve, combo: Sequence[EventTemplate]) -> List[OneOneCurve]:
    """Solve one template combo exactly and certify the samples against C.

    Inconsistent or infeasible systems yield an empty list. Positive
    dimensional solution sets yield several sampled representatives."""
    _require_33(C)
    if not combo:
        raise InputError("empty template combo")
    sigma = combo[0].sigma
    if any(t.sigma != sigma for t in combo):
        raise InputError("templates of mixed (1,1)-curve type")
    data = _CellData(C)
    base = _box_ineqs(data) + [ex_scale(sigma, EX_T)]
    hs, _dim = _solve_combo(combo, base, want_family_samples=True)
    out = []
    for h in hs:
        L = OneOneCurve(*h)
        if tritangency_certificate(C, L.curve()) is not None:
            out.append(L)
    return out


_PARTITIONS = {(2, 2, 2), (4, 2), (6,)}


def _sample_step(S: Skeleton, thetas) -> Fraction:
    """Offset grid spacing fine enough to express theta representatives:
    half the lattice spanned by the skeleton edge lengths and the chip
    offsets of the theta divisors."""
    den = 1
    for _, _, length in S.graph.edges:
        den = math.lcm(den, Q(length).denominator)
    for t in thetas:
        for p, _ in t.divisor.items():
            den = math.lcm(den, Q(p.offset).denominator)
    return Q(1, 2 * den)


def _region_points(S: Skeleton, evs, step: Fraction) -> List:
    """Candidate chip positions on the retraction of a contact place:
    retract each tangency segment sampled at lattice-length steps of
    `step`. Core cells map isometrically to skeleton edges, so the samples
    land on the offset grid of the same spacing."""
    pts = set()
    for ev in evs:
        if ev.kind == "point":
            pts.add(S.retract(ev.locus[0]))
            continue
        (x1, y1), (x2, y2) = ev.locus
        d = primitive((x2 - x1, y2 - y1))
        length = (x2 - x1) / d[0] if d[0] else (y2 - y1) / d[1]
        for k in range(int(length / step) + 1):
            t = k * step / length
            pts.add(S.retract((x1 + t * (x2 - x1), y1 + t * (y2 - y1))))
        pts.add(S.retract((x2, y2)))
    return sorted(pts)


def _certify(C: PlaneCurve, S: Skeleton, h, theta_keys, step: Fraction) -> Optional[Tuple]:
    """Tritangency data of the (1,1)-curve with heights h, or None.

    Point contacts retract to pinned chips. A contact place with segments
    leaves its weight/2 chips free on the retracted place; the chips are
    then positioned so the total divisor is an effective theta class,
    which pins the class (the position combination is not unique, the
    class is, and that is asserted). The position grid is refined twice
    before giving up, since a representative can sit strictly between
    grid points when edge lengths mix denominators."""
    L = OneOneCurve(*h)
    comps = contact_components(C, L.curve())
    if comps is None:
        return None
    partition = tuple(sorted((w for _, w in comps), reverse=True))
    if any(m % 2 for m in partition) or partition not in _PARTITIONS:
        return None
    contacts = [(min(ev.representative for ev in evs), w // 2) for evs, w in comps]
    contacts.sort()
    fixed = []
    free = []
    for evs, w in comps:
        if len(evs) == 1 and evs[0].kind == "point":
            fixed.append((S.retract(evs[0].locus[0]), w // 2))
        else:
            free.append((evs, w // 2))
    base = Divisor(fixed)
    if not free:
        assert base.degree() == 3
        key = S.graph.divisor_class_key(base)
        if key not in theta_keys:
            raise AssertionError(
                "contact divisor matches no theta characteristic; 2D ~ K violated"
            )
        return L, contacts, partition, base, key
    found: Dict[Tuple, Divisor] = {}
    seen = set()
    for s in (step, step / 2, step / 4):
        for choice in itertools.product(
            *(
                itertools.combinations_with_replacement(_region_points(S, evs, s), k)
                for evs, k in free
            )
        ):
            D = base + Divisor([(p, 1) for grp in choice for p in grp])
            dk = D.key()
            if dk in seen:
                continue
            seen.add(dk)
            key = S.graph.divisor_class_key(D)
            if key in theta_keys and key not in found:
                found[key] = D
        if found:
            break
    if len(found) != 1:
        raise AssertionError(
            f"contact places admit {len(found)} theta characteristics; chips "
            "on the retracted contact locus must pin a unique effective class"
        )
    key, D = next(iter(found.items()))
    return L, contacts, partition, D, key


def enumerate_tritangents(C: PlaneCurve) -> List[TritangentClass]:
    """All equivalence classes of tritangent (1,1)-curves to C.

    Classes are grouped by linear equivalence of the retracted contact
    divisors on the skeleton and matched to the effective theta
    characteristics; the count never exceeds 15."""
    _require_33(C)
    S = skeleton(C)
    thetas = all_theta_characteristics(S.graph)
    theta_by_key = {S.graph.divisor_class_key(t.divisor): t for t in thetas}
    theta_keys = frozenset(theta_by_key)
    step = _sample_step(S, thetas)
    data = _CellData(C)
    classes: Dict[Tuple, TritangentClass] = {}
    cert_cache: Dict[Tuple, Optional[Tuple]] = {}

    def visit(h, family_pair: Optional[List] = None):
        if h in cert_cache:
            res = cert_cache[h]
        else:
            res = _certify(C, S, h, theta_keys, step)
            cert_cache[h] = res
        if res is None:
            return None
        L, contacts, partition, D, key = res
        tc = classes.get(key)
        if tc is None:
            theta = theta_by_key[key]
            assert theta.effective
            tc = TritangentClass(theta, [], D, list(contacts), partition, False, key)
            classes[key] = tc
        if L not in tc.representatives and len(tc.representatives) < 8:
            tc.representatives.append(L)
        return key

    for sigma in (1, -1):
        templates = _build_templates(C, data, sigma)
        base = _box_ineqs(data) + [ex_scale(sigma, EX_T)]
        t2 = [i for i, t in enumerate(templates) if t.min_weight == 2]
        t4 = [i for i, t in enumerate(templates) if t.min_weight == 4]
        t6 = [i for i, t in enumerate(templates) if t.min_weight >= 6]
        combos: List[Tuple[int, ...]] = [(i,) for i in t6]
        combos += [(i, j) for i in t4 for j in t2]
        # pairwise feasibility over the weight-2 pool, then triples
        feas: Dict[Tuple[int, int], bool] = {}

        def pair_ok(i: int, j: int) -> bool:
            key = (i, j) if i < j else (j, i)
            hit = feas.get(key)
            if hit is None:
                hs, _ = _solve_combo(
                    (templates[key[0]], templates[key[1]]), base, False
                )
                hit = bool(hs)
                feas[key] = hit
            return hit

        neighbors: Dict[int, List[int]] = {}
        for ii, i in enumerate(t2):
            for j in t2[ii + 1:]:
                if pair_ok(i, j):
                    neighbors.setdefault(i, []).append(j)
        for i, nbrs in sorted(neighbors.items()):
            for jj, j in enumerate(nbrs):
                js = set(neighbors.get(j, ()))
                for k in nbrs[jj + 1:]:
                    if k in js:
                        combos.append((i, j, k))
        for combo_ids in combos:
            combo = tuple(templates[i] for i in combo_ids)
            hs, dim = _solve_combo(combo, base, want_family_samples=True)
            keys = [visit(h) for h in hs]
            if dim >= 1 and len(hs) >= 2 and len(set(hs)) >= 2:
                if keys[0] is not None and all(k == keys[0] for k in keys):
                    classes[keys[0]].family = True

    out = sorted(classes.values(), key=lambda c: c.class_key)
    assert len(out) <= 15, f"{len(out)} tritangent classes exceed the bound 15"
    return out


def theta_class_of(C: PlaneCurve, L: OneOneCurve) -> ThetaCharacteristic:
    """The effective theta characteristic of a tritangent (1,1)-curve."""
    _require_33(C)
    S = skeleton(C)
    thetas = all_theta_characteristics(S.graph)
    by_key = {S.graph.divisor_class_key(t.divisor): t for t in thetas}
    res = _certify(
        C, S, (L.h10, L.h01, L.h11), frozenset(by_key), _sample_step(S, thetas)
    )
    if res is None:
        raise InputError("the given (1,1)-curve is not tritangent to C")
    return by_key[res[4]]
