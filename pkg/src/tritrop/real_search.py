"""Numerical search for totally-real tritangent planes of space sextics.

The sextic is the transversal intersection of a real quadric {q2 = 0}
and a real cubic {c3 = 0} in affine 3-space.  A plane n.x = c is
tritangent when it meets the curve with multiplicity two at three
points; at a contact point P the plane must contain the curve's tangent
direction grad(q2) x grad(c3).  Eliminating c = n.P1 leaves 12 smooth
equations in the 12 unknowns (P1, P2, P3, n), solved by damped Newton
from random seed triples sampled on the curve.  Everything here is
double-precision floating point; the counts are checked, not certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

Monomial = Tuple[int, int, int]
Matrix3 = Tuple[Tuple[float, float, float], ...]

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 100
CLUSTER_RADIUS = 1e-4
RESIDUAL_BOUND = 1e-10
COND_BOUND = 1e10


@dataclass(frozen=True)
class Poly3:
    """Sparse real polynomial in (x, y, z) with ndarray evaluation."""

    terms: Tuple[Tuple[Monomial, float], ...]

    @classmethod
    def make(cls, terms: Mapping[Monomial, float]) -> "Poly3":
        clean = tuple(sorted((m, c) for m, c in terms.items() if c != 0.0))
        return cls(clean)

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        """Evaluate at pts of shape (..., 3)."""
        x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
        out = np.zeros(pts.shape[:-1])
        for (i, j, k), c in self.terms:
            out += c * (x ** i) * (y ** j) * (z ** k)
        return out

    def diff(self, axis: int) -> "Poly3":
        d: Dict[Monomial, float] = {}
        for m, c in self.terms:
            if m[axis] == 0:
                continue
            m2 = list(m)
            m2[axis] -= 1
            key = (m2[0], m2[1], m2[2])
            d[key] = d.get(key, 0.0) + c * m[axis]
        return Poly3.make(d)

    def gradient(self) -> Tuple["Poly3", "Poly3", "Poly3"]:
        return (self.diff(0), self.diff(1), self.diff(2))


def _grad_eval(grad: Sequence[Poly3], pts: np.ndarray) -> np.ndarray:
    return np.stack([g(pts) for g in grad], axis=-1)


def _hess_eval(hess: Sequence[Sequence[Poly3]], pts: np.ndarray) -> np.ndarray:
    rows = [np.stack([h(pts) for h in row], axis=-1) for row in hess]
    return np.stack(rows, axis=-2)


@dataclass(frozen=True)
class AffineSextic:
    """A space sextic {q2 = 0, c3 = 0} with optional symmetry group.

    seed_radius scales the sphere from which curve seeds are projected;
    symmetries is a list of orthogonal 3x3 matrices fixing both
    hypersurfaces, used to saturate the found-plane set.
    """

    name: str
    q2: Poly3
    c3: Poly3
    seed_radius: float = 1.0
    symmetries: Tuple[Matrix3, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "_gq", self.q2.gradient())
        object.__setattr__(self, "_gc", self.c3.gradient())
        object.__setattr__(
            self, "_hq", tuple(tuple(g.diff(a) for a in range(3)) for g in self._gq)
        )
        object.__setattr__(
            self, "_hc", tuple(tuple(g.diff(a) for a in range(3)) for g in self._gc)
        )

    def curve_residual(self, pts: np.ndarray) -> np.ndarray:
        return np.stack([self.q2(pts), self.c3(pts)], axis=-1)

    def tangent_direction(self, pts: np.ndarray) -> np.ndarray:
        return np.cross(_grad_eval(self._gq, pts), _grad_eval(self._gc, pts))


@dataclass(frozen=True)
class PlaneCandidate:
    """A numerically verified totally-real tritangent plane.

    normal is a unit vector with its first nonzero component positive,
    offset the value of normal . P at the contacts, contacts the three
    tangency points sorted lexicographically; label is the oval pattern
    ((1,1,1), (2,1) or (3)) with the doubled oval's kind when known."""

    normal: Tuple[float, float, float]
    offset: float
    contacts: Tuple[Tuple[float, float, float], ...]
    residual: float
    condition: float
    label: str = "unlabeled"

    def key(self) -> Tuple[float, ...]:
        return tuple(round(v, 6) for v in (*self.normal, self.offset))


def clebsch_sextic() -> AffineSextic:
    """Unit sphere cut with the Clebsch diagonal cubic."""
    q2 = Poly3.make({(2, 0, 0): 1.0, (0, 2, 0): 1.0, (0, 0, 2): 1.0, (0, 0, 0): -1.0})
    c3: Dict[Monomial, float] = {}

    def add(m: Monomial, c: float) -> None:
        c3[m] = c3.get(m, 0.0) + c

    for m in [(3, 0, 0), (0, 3, 0), (0, 0, 3)]:
        add(m, 81.0)
    for m in [(2, 1, 0), (2, 0, 1), (1, 2, 0), (0, 2, 1), (1, 0, 2), (0, 1, 2)]:
        add(m, -189.0)
    add((1, 1, 1), 54.0)
    for m in [(1, 1, 0), (1, 0, 1), (0, 1, 1)]:
        add(m, 126.0)
    for m in [(2, 0, 0), (0, 2, 0), (0, 0, 2)]:
        add(m, -9.0)
    for m in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        add(m, -9.0)
    add((0, 0, 0), 1.0)
    perms = []
    for p in [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]:
        rows = []
        for r in range(3):
            rows.append(tuple(1.0 if p[r] == c else 0.0 for c in range(3)))
        perms.append(tuple(rows))
    return AffineSextic("clebsch", q2, Poly3.make(c3), 1.0, tuple(perms))


def emch_sextic() -> AffineSextic:
    """Radius-5 sphere cut with the cylinder over p(x, y) = 2, where
    p is the product of three lines bounding an equilateral triangle."""
    s3 = math.sqrt(3.0)
    q2 = Poly3.make({(2, 0, 0): 1.0, (0, 2, 0): 1.0, (0, 0, 2): 1.0, (0, 0, 0): -25.0})
    # (x + s3)((x - 3)^2 - 3 y^2) - 2
    c3 = Poly3.make(
        {
            (3, 0, 0): 1.0,
            (2, 0, 0): -6.0 + s3,
            (1, 2, 0): -3.0,
            (1, 0, 0): 9.0 - 6.0 * s3,
            (0, 2, 0): -3.0 * s3,
            (0, 0, 0): 9.0 * s3 - 2.0,
        }
    )
    c, s = -0.5, s3 / 2.0
    rot = ((c, -s, 0.0), (s, c, 0.0), (0.0, 0.0, 1.0))
    rot2 = ((c, s, 0.0), (-s, c, 0.0), (0.0, 0.0, 1.0))
    ident = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    refl_y = ((1.0, 0.0, 0.0), (0.0, -1.0, 0.0), (0.0, 0.0, 1.0))
    refl_z = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, -1.0))
    group = []
    for r in (ident, rot, rot2):
        for fy in (False, True):
            for fz in (False, True):
                m = np.array(r)
                if fy:
                    m = np.array(refl_y) @ m
                if fz:
                    m = np.array(refl_z) @ m
                group.append(tuple(tuple(float(v) for v in row) for row in m))
    return AffineSextic("emch", q2, c3, 5.0, tuple(group))


def project_to_curve(
    S: AffineSextic, pts: np.ndarray, iters: int = 60, tol: float = 1e-11
) -> np.ndarray:
    """Gauss-Newton projection of points onto {q2 = 0, c3 = 0}.

    Returns the subset that converged."""
    x = np.asarray(pts, dtype=float).copy()
    for _ in range(iters):
        f = S.curve_residual(x)
        if np.all(np.abs(f) < tol):
            break
        j = np.stack([_grad_eval(S._gq, x), _grad_eval(S._gc, x)], axis=-2)
        jjt = j @ np.swapaxes(j, -1, -2)
        jjt += 1e-14 * np.eye(2)
        step = np.swapaxes(j, -1, -2) @ np.linalg.solve(jjt, f[..., None])
        # clamp so a near-singular Jacobian cannot fling the iterate away
        nrm = np.linalg.norm(step[..., 0], axis=-1, keepdims=True)
        scale = np.minimum(1.0, S.seed_radius / np.maximum(nrm, 1e-30))
        x -= step[..., 0] * scale
    ok = np.all(np.abs(S.curve_residual(x)) < 1e-9, axis=-1)
    ok &= np.all(np.isfinite(x), axis=-1)
    return x[ok]


def tritangent_system(
    S: AffineSextic, u: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Residual (..., 12) and Jacobian (..., 12, 12) of the tangency system.

    Unknowns u = (P1, P2, P3, n).  Rows: q2(Pi), c3(Pi), the coplanarity
    of n with the curve tangent at Pi, membership n.(P2 - P1) and
    n.(P3 - P1), and |n|^2 = 1."""
    u = np.asarray(u, dtype=float)
    P = u[..., :9].reshape(*u.shape[:-1], 3, 3)
    n = u[..., 9:]
    F = np.zeros(u.shape[:-1] + (12,))
    J = np.zeros(u.shape[:-1] + (12, 12))
    gq = _grad_eval(S._gq, P)
    gc = _grad_eval(S._gc, P)
    hq = _hess_eval(S._hq, P)
    hc = _hess_eval(S._hc, P)
    tan = np.cross(gq, gc)
    for i in range(3):
        sl = slice(3 * i, 3 * i + 3)
        F[..., 0 + i] = S.q2(P[..., i, :])
        F[..., 3 + i] = S.c3(P[..., i, :])
        F[..., 6 + i] = np.einsum("...k,...k->...", n, tan[..., i, :])
        J[..., 0 + i, sl] = gq[..., i, :]
        J[..., 3 + i, sl] = gc[..., i, :]
        # d/dP of n.(gq x gc): n.(Hq e_a x gc) + n.(gq x Hc e_a)
        da = np.cross(np.swapaxes(hq[..., i, :, :], -1, -2), gc[..., i, None, :])
        db = np.cross(gq[..., i, None, :], np.swapaxes(hc[..., i, :, :], -1, -2))
        J[..., 6 + i, sl] = np.einsum("...k,...ak->...a", n, da + db)
        J[..., 6 + i, 9:] = tan[..., i, :]
    for r, i in ((9, 1), (10, 2)):
        F[..., r] = np.einsum("...k,...k->...", n, P[..., i, :] - P[..., 0, :])
        J[..., r, 3 * i : 3 * i + 3] = n
        J[..., r, 0:3] = -n
        J[..., r, 9:] = P[..., i, :] - P[..., 0, :]
    F[..., 11] = np.einsum("...k,...k->...", n, n) - 1.0
    J[..., 11, 9:] = 2.0 * n
    return F, J


def _newton(S: AffineSextic, u0: np.ndarray) -> np.ndarray:
    """Damped Newton on the tangency system; returns converged rows."""
    u = u0.copy()
    active = np.arange(u.shape[0])
    for _ in range(NEWTON_MAX_ITER):
        if active.size == 0:
            break
        F, J = tritangent_system(S, u[active])
        norms = np.max(np.abs(F), axis=-1)
        done = norms < NEWTON_TOL
        active = active[~done]
        if active.size == 0:
            break
        F, J = F[~done], J[~done]
        ok = np.isfinite(F).all(axis=-1) & np.isfinite(J).all(axis=(-1, -2))
        with np.errstate(all="ignore"):
            step = np.full_like(F, np.nan)
            if ok.any():
                try:
                    step[ok] = np.linalg.solve(J[ok], F[ok][..., None])[..., 0]
                except np.linalg.LinAlgError:
                    for idx in np.nonzero(ok)[0]:
                        try:
                            step[idx] = np.linalg.solve(J[idx], F[idx])
                        except np.linalg.LinAlgError:
                            pass
        base = np.linalg.norm(F, axis=-1)
        lam = np.ones(active.size)
        improved = np.zeros(active.size, dtype=bool)
        trial = u[active].copy()
        for _ in range(14):
            pending = ~improved
            if not pending.any():
                break
            cand = u[active[pending]] - lam[pending, None] * step[pending]
            fc, _ = tritangent_system(S, cand)
            with np.errstate(invalid="ignore"):
                good = np.linalg.norm(fc, axis=-1) < base[pending]
            good &= np.isfinite(cand).all(axis=-1)
            sel = np.nonzero(pending)[0]
            trial[sel[good]] = cand[good]
            improved[sel[good]] = True
            lam[pending] *= 0.5
        u[active[improved]] = trial[improved]
        active = active[improved]
    F, _ = tritangent_system(S, u)
    conv = np.max(np.abs(F), axis=-1) < NEWTON_TOL
    return u[conv]


def _canonical(u: np.ndarray, radius: float = CLUSTER_RADIUS) -> Optional[PlaneCandidate]:
    P = u[:9].reshape(3, 3)
    n = u[9:].copy()
    for v in n:
        if abs(v) > 1e-8:
            if v < 0:
                n = -n
            break
    c = float(n @ P[0])
    for i in range(3):
        for j in range(i + 1, 3):
            if np.linalg.norm(P[i] - P[j]) <= radius:
                return None
    pts = sorted(tuple(float(x) for x in row) for row in P)
    return PlaneCandidate(tuple(float(x) for x in n), c, tuple(pts), 0.0, 0.0)


def _polish(S: AffineSextic, u: np.ndarray) -> Optional[Tuple[np.ndarray, float, float]]:
    for _ in range(4):
        F, J = tritangent_system(S, u)
        try:
            u = u - np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            return None
    F, J = tritangent_system(S, u)
    res = float(np.max(np.abs(F)))
    if not math.isfinite(res) or res > RESIDUAL_BOUND:
        return None
    cond = float(np.linalg.cond(J))
    if not math.isfinite(cond) or cond > COND_BOUND:
        return None
    return u, res, cond


class _PlanePool:
    """Deduplicating accumulator keyed by canonical (normal, offset)."""

    def __init__(self, radius: float = CLUSTER_RADIUS) -> None:
        self.planes: List[PlaneCandidate] = []
        self._params: List[np.ndarray] = []
        self.radius = radius

    def add(self, cand: PlaneCandidate) -> bool:
        v = np.array((*cand.normal, cand.offset))
        for k, w in enumerate(self._params):
            if np.linalg.norm(v - w) < self.radius:
                if cand.residual < self.planes[k].residual:
                    self.planes[k] = cand
                    self._params[k] = v
                return False
        self.planes.append(cand)
        self._params.append(v)
        return True


def _seed_triples(S: AffineSextic, rng: np.random.Generator, count: int) -> np.ndarray:
    raw = rng.normal(size=(int(count * 3.5), 3))
    raw *= S.seed_radius / np.linalg.norm(raw, axis=-1, keepdims=True)
    on_curve = project_to_curve(S, raw)
    if on_curve.shape[0] < 9:
        return np.empty((0, 12))
    m = (on_curve.shape[0] // 3) * 3
    rng.shuffle(on_curve[:m])
    P = on_curve[:m].reshape(-1, 3, 3)[:count]
    n = np.cross(P[:, 1] - P[:, 0], P[:, 2] - P[:, 0])
    nrm = np.linalg.norm(n, axis=-1, keepdims=True)
    keep = nrm[:, 0] > 1e-10
    P, n, nrm = P[keep], n[keep], nrm[keep]
    return np.concatenate([P.reshape(-1, 9), n / nrm], axis=-1)


def _search_batch(
    S: AffineSextic,
    ss: np.random.SeedSequence,
    want: int,
    radius: float = CLUSTER_RADIUS,
) -> List[PlaneCandidate]:
    rng = np.random.default_rng(ss)
    u0 = _seed_triples(S, rng, want)
    found: List[PlaneCandidate] = []
    if u0.shape[0] == 0:
        return found
    for u in _newton(S, u0):
        pol = _polish(S, u)
        if pol is None:
            continue
        u2, res, cond = pol
        cand = _canonical(u2, radius)
        if cand is None:
            continue
        found.append(PlaneCandidate(cand.normal, cand.offset, cand.contacts, res, cond))
    return found


def search(
    S: AffineSextic,
    seeds: int = 10_000,
    rng_seed: int = 0,
    batch_size: int = 20_000,
    symmetrize: bool = True,
    label: bool = True,
    threads: int = 1,
    cluster_radius: float = CLUSTER_RADIUS,
) -> List[PlaneCandidate]:
    """Newton search for totally-real tritangent planes of S.

    Draws `seeds` random contact-point triples on the curve, runs the
    tangency system to convergence, polishes, deduplicates within the
    clustering radius, and (optionally) closes the result under the
    sextic's symmetry group and labels contact patterns by oval.
    Batches carry independent rng streams and merge in stream order, so
    the result is reproducible at any thread count.  Returns planes
    sorted by canonical parameters."""
    if seeds < 1:
        return []
    pool = _PlanePool(cluster_radius)
    streams = np.random.SeedSequence(rng_seed).spawn(
        (seeds + batch_size - 1) // batch_size
    )
    sizes = [
        min(batch_size, seeds - k * batch_size) for k in range(len(streams))
    ]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as ex:
            futs = [
                ex.submit(_search_batch, S, ss, n, cluster_radius)
                for ss, n in zip(streams, sizes)
            ]
            batches = [f.result() for f in futs]
    else:
        batches = [
            _search_batch(S, ss, n, cluster_radius) for ss, n in zip(streams, sizes)
        ]
    for batch in batches:
        for cand in batch:
            pool.add(cand)
    if symmetrize and S.symmetries:
        frontier = list(pool.planes)
        while frontier:
            nxt = []
            for cand in frontier:
                for M in S.symmetries:
                    m = np.array(M)
                    P = (m @ np.array(cand.contacts).T).T
                    n = m @ np.array(cand.normal)
                    u = np.concatenate([P.reshape(9), n])
                    pol = _polish(S, u)
                    if pol is None:
                        continue
                    u2, res, cond = pol
                    c2 = _canonical(u2, cluster_radius)
                    if c2 is None:
                        continue
                    c2 = PlaneCandidate(c2.normal, c2.offset, c2.contacts, res, cond)
                    if pool.add(c2):
                        nxt.append(c2)
            frontier = nxt
    planes = pool.planes
    if label:
        ovals = _OvalAtlas(S)
        planes = [
            PlaneCandidate(
                p.normal, p.offset, p.contacts, p.residual, p.condition,
                ovals.pattern(p),
            )
            for p in planes
        ]
    return sorted(planes, key=PlaneCandidate.key)


def _correct_to_curve(S: AffineSextic, p: np.ndarray, iters: int = 4) -> np.ndarray:
    for _ in range(iters):
        f = S.curve_residual(p[None])[0]
        j = np.stack(
            [_grad_eval(S._gq, p[None])[0], _grad_eval(S._gc, p[None])[0]]
        )
        jjt = j @ j.T + 1e-14 * np.eye(2)
        p = p - j.T @ np.linalg.solve(jjt, f)
    return p


def _trace_oval(
    S: AffineSextic, p0: np.ndarray, h: float, max_steps: int = 50_000
) -> Optional[np.ndarray]:
    """Follow the curve from p0 by tangent steps until it closes up."""
    p = p0.copy()
    out = [p0.copy()]
    t_prev = None
    for k in range(max_steps):
        t = S.tangent_direction(p[None])[0]
        nt = np.linalg.norm(t)
        if nt < 1e-10:
            return None
        t /= nt
        if t_prev is not None and float(t @ t_prev) < 0:
            t = -t
        t_prev = t
        p = _correct_to_curve(S, p + h * t)
        out.append(p.copy())
        if k > 10 and np.linalg.norm(p - p0) < 0.75 * h:
            return np.array(out)
    return None


class _OvalAtlas:
    """Connected-component labeling of curve samples.

    Projects random starting points onto the curve, then traces each
    unclaimed oval by predictor-corrector continuation until it closes.
    Components whose z-coordinate never changes sign get the N/S kind,
    the rest O."""

    def __init__(self, S: AffineSextic, samples: int = 600):
        from scipy.spatial import cKDTree

        rng = np.random.default_rng(np.random.SeedSequence((hash(S.name) & 0xFFFF,)))
        raw = rng.normal(size=(samples * 4, 3))
        raw *= S.seed_radius / np.linalg.norm(raw, axis=-1, keepdims=True)
        starts = project_to_curve(S, raw)[:samples]
        self.ok = starts.shape[0] >= samples // 2
        if not self.ok:
            return
        self.h = 0.02 * S.seed_radius
        loop_pts: List[np.ndarray] = []
        loop_ids: List[int] = []
        self.kind: Dict[int, str] = {}
        claimed = np.zeros(starts.shape[0], dtype=bool)
        cid = 0
        for i in range(starts.shape[0]):
            if claimed[i]:
                continue
            loop = _trace_oval(S, starts[i], self.h)
            if loop is None:
                claimed[i] = True
                continue
            tree = cKDTree(loop)
            d, _ = tree.query(starts[~claimed])
            near = d < 3.0 * self.h
            idx = np.nonzero(~claimed)[0]
            claimed[idx[near]] = True
            claimed[i] = True
            loop_pts.append(loop)
            loop_ids.extend([cid] * loop.shape[0])
            z = loop[:, 2]
            self.kind[cid] = "NS" if (np.all(z > 0) or np.all(z < 0)) else "O"
            cid += 1
        self.ok = cid > 0
        if not self.ok:
            return
        self.comp = np.array(loop_ids)
        self.tree = cKDTree(np.concatenate(loop_pts))
        self.count = cid

    def component_of(self, p: Sequence[float]) -> Optional[int]:
        d, idx = self.tree.query(np.asarray(p, dtype=float))
        if d > 5.0 * self.h:
            return None
        return int(self.comp[idx])

    def pattern(self, plane: PlaneCandidate) -> str:
        if not self.ok:
            return "unlabeled"
        comps = [self.component_of(p) for p in plane.contacts]
        if any(c is None for c in comps):
            return "unlabeled"
        counts: Dict[int, int] = {}
        for c in comps:
            counts[c] = counts.get(c, 0) + 1
        sig = tuple(sorted(counts.values(), reverse=True))
        if sig == (1, 1, 1):
            return "(1,1,1)"
        if sig == (2, 1):
            doubled = next(c for c, k in counts.items() if k == 2)
            return "(2,1) on N/S" if self.kind[doubled] == "NS" else "(2,1) on O"
        if sig == (3,):
            return "(3)"
        return "unlabeled"


def classify_contacts(S: AffineSextic, plane: PlaneCandidate) -> str:
    """Contact pattern of a plane: which ovals hold the three points."""
    return _OvalAtlas(S).pattern(plane)
