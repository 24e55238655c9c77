from fractions import Fraction

import pytest

from conftest import big_quadric_heights
from tritrop.exceptions import DegenerateCurveError, InputError
from tritrop.plane_curve import curve_from_polynomial
from tritrop.space_lift import (
    PLANE_RAYS,
    QUADRIC_SUPPORT,
    TropicalPlane,
    is_smooth_quadric,
    lift_curve,
    lift_map,
    plane_curve_contact,
    plane_through,
    quadric_bounded_face,
    quadric_contains,
    tritangent_planes_of_lift,
    v3add,
    v3sub,
)

Q = Fraction


def test_quadric_support():
    assert len(QUADRIC_SUPPORT) == 10
    assert all(sum(m) <= 2 and min(m) >= 0 for m in QUADRIC_SUPPORT)


def test_smooth_quadric_detection():
    assert is_smooth_quadric(big_quadric_heights())
    flat = {m: Q(0) for m in QUADRIC_SUPPORT}
    assert not is_smooth_quadric(flat)


def test_bounded_face_is_a_parallelogram():
    q = big_quadric_heights()
    face, u1, u2 = quadric_bounded_face(q)
    assert len(face) == 4
    d1 = v3sub(face[1], face[0])
    d2 = v3sub(face[3], face[0])
    assert v3add(face[0], v3add(d1, d2)) == face[2]
    # side vectors are positive multiples of the primitive ruling directions
    for d, u in ((d1, u1), (d2, u2)):
        t = next(Q(a) / b for a, b in zip(d, u) if b)
        assert t > 0 and tuple(t * c for c in u) == tuple(map(Q, d))
    for corner in face:
        assert quadric_contains(q, corner)


def test_lift_map_geometry(big_lift):
    q = dict(big_lift.quadric)
    x0, x1, y0, y1 = big_lift.rectangle
    assert (x0, x1, y0, y1) == (-14, 18, -14, 18)
    assert big_lift((x0, y0)) == big_lift.p0
    step1 = v3sub(big_lift((x0 + 1, y0)), big_lift((x0, y0)))
    step2 = v3sub(big_lift((x0, y0 + 1)), big_lift((x0, y0)))
    assert step1 == big_lift.u1 and step2 == big_lift.u2
    for p in ((x0, y0), (x1, y1), (x0, y1), ((x0 + x1) / 2, (y0 + y1) / 2)):
        assert quadric_contains(q, big_lift(p))


def test_end_assignment_partitions_plane_rays(big_lift):
    for axis, u in ((1, big_lift.u1), (2, big_lift.u2)):
        plus = big_lift.end_assignment(axis, 1)
        minus = big_lift.end_assignment(axis, -1)
        assert set(plus) | set(minus) == set(PLANE_RAYS)
        assert set(plus).isdisjoint(minus)
        assert v3add(*plus) == u
        assert v3add(*minus) == tuple(-c for c in u)


def test_lift_honeycomb(big_lift, honeycomb_curve):
    q = dict(big_lift.quadric)
    G = lift_curve(honeycomb_curve, big_lift)
    assert G.is_balanced()
    counts = G.end_counts()
    assert all(counts[d] == 6 for d in PLANE_RAYS)
    for e in G.edges[:10]:
        if e.kind == "segment":
            mid = v3add(e.p, tuple(e.length / 2 * c for c in e.d))
            assert quadric_contains(q, mid)


def test_lift_validation(big_lift):
    cubic = curve_from_polynomial(
        {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 0, (2, 0): -1, (0, 2): -1,
         (2, 1): -2, (1, 2): -2, (3, 0): -4, (0, 3): -4}
    )
    with pytest.raises(InputError):
        lift_curve(cubic, big_lift)
    lopsided = curve_from_polynomial(
        {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): -1, (1, 2): -3, (0, 2): -3}
    )
    with pytest.raises(InputError):
        lift_curve(lopsided, big_lift)
    offset = lift_map(big_quadric_heights(), (1000, 1000))
    square = curve_from_polynomial(
        {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): -1}
    )
    with pytest.raises(InputError):
        lift_curve(square, offset)


def test_plane_membership():
    P = TropicalPlane((0, 0, 0))
    assert P.contains((-5, 0, 0))
    assert P.contains((2, 2, 0))
    assert P.contains((3, 3, 3))
    assert P.contains((0, 0, 0))
    assert P.contains((0, -1, -2))  # the cone spanned by -e2 and -e3
    assert not P.contains((1, 2, 3))
    assert not P.contains((-1, -2, -3))


def test_plane_through_three_points():
    pts = ((10, 0, 0), (0, 12, 3), (-7, -5, -6))
    P = plane_through(*pts)
    for p in pts:
        assert P.contains(p)
    with pytest.raises(DegenerateCurveError):
        plane_through((0, 0, 0), (1, 0, 0), (2, 0, 0))


def test_lifted_tritangents_sample(big_lift, honeycomb_curve, honeycomb_classes):
    G = lift_curve(honeycomb_curve, big_lift)
    sample = [honeycomb_classes[0], honeycomb_classes[4]]
    pairs = tritangent_planes_of_lift(honeycomb_curve, big_lift, classes=sample)
    assert len(pairs) == 2
    for cls, plane in pairs:
        comps, partition, total, uncovered = plane_curve_contact(plane, G)
        assert total == 6
        assert not uncovered
        assert partition == cls.partition
