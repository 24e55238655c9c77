import pytest

from _oracles import equivalent_oracle
from tritrop.exceptions import DegenerateCurveError, InputError
from tritrop.intersection import tritangency_certificate
from tritrop.plane_curve import curve_from_polynomial, skeleton
from tritrop.theta import all_theta_characteristics
from tritrop.tritangent import (
    OneOneCurve,
    candidate_events,
    enumerate_tritangents,
    ex_eval,
    solve_template,
    theta_class_of,
)


def test_fifteen_classes(honeycomb_classes):
    assert len(honeycomb_classes) == 15
    assert len({c.class_key for c in honeycomb_classes}) == 15


def test_classes_exhaust_effective_thetas(honeycomb_curve, honeycomb_classes):
    S = skeleton(honeycomb_curve)
    effective_keys = {
        S.graph.divisor_class_key(t.divisor)
        for t in all_theta_characteristics(S.graph)
        if t.effective
    }
    assert len(effective_keys) == 15
    assert {c.class_key for c in honeycomb_classes} == effective_keys
    for c in honeycomb_classes:
        assert c.theta.effective


def test_partition_census(honeycomb_classes):
    parts = sorted(c.partition for c in honeycomb_classes)
    assert parts == [(2, 2, 2)] * 12 + [(4, 2)] * 2 + [(6,)]
    for c in honeycomb_classes:
        assert sum(c.partition) == 6
        assert sum(m for _, m in c.contacts) == 3


def test_contact_divisors_are_theta_representatives(
    honeycomb_curve, honeycomb_classes
):
    S = skeleton(honeycomb_curve)
    for c in honeycomb_classes:
        D = c.contact_divisor
        assert D.degree() == 3 and D.is_effective()
        assert S.graph.is_equivalent(D, c.theta.divisor)
    for c in honeycomb_classes[:3]:
        assert equivalent_oracle(S.graph, c.contact_divisor, c.theta.divisor)


def test_family_flags(honeycomb_classes):
    families = [c for c in honeycomb_classes if c.family]
    assert len(families) == 8
    for c in families:
        assert len(c.representatives) >= 2
    for c in honeycomb_classes:
        assert 1 <= len(c.representatives) <= 8


def test_representatives_certify(honeycomb_curve, honeycomb_classes):
    for c in honeycomb_classes:
        for L in c.representatives[:2]:
            cert = tritangency_certificate(honeycomb_curve, L.curve())
            assert cert is not None
            contacts, mults = cert
            assert mults == c.partition


def test_theta_class_of_roundtrip(honeycomb_curve, honeycomb_classes):
    for c in (honeycomb_classes[0], honeycomb_classes[-1]):
        t = theta_class_of(honeycomb_curve, c.representatives[0])
        assert t.divisor == c.theta.divisor
    with pytest.raises(InputError):
        theta_class_of(honeycomb_curve, OneOneCurve(1000, 1000, 2000))


def test_candidate_event_templates(honeycomb_curve):
    templates = candidate_events(honeycomb_curve)
    assert templates
    assert {t.sigma for t in templates} == {1, -1}
    assert all(t.min_weight in (2, 4, 6) for t in templates)


def test_solve_template_reproduces_known_tangency(honeycomb_curve, honeycomb_classes):
    # re-solve the templates active at a known rigid tritangent curve
    six = next(c for c in honeycomb_classes if c.partition == (6,))
    L = six.representatives[0]
    h = (L.h10, L.h01, L.h11)
    sigma = 1 if L.edge_type >= 0 else -1
    active = [
        t
        for t in candidate_events(honeycomb_curve)
        if t.sigma == sigma
        and all(ex_eval(e, h) == 0 for e in t.eqs)
        and all(ex_eval(e, h) >= 0 for e in t.ineqs)
    ]
    assert active
    sols = solve_template(honeycomb_curve, tuple(active))
    assert sols
    partitions = {
        tritangency_certificate(honeycomb_curve, s.curve())[1] for s in sols
    }
    assert (6,) in partitions


def test_mixed_type_combo_rejected(honeycomb_curve):
    templates = candidate_events(honeycomb_curve)
    plus = next(t for t in templates if t.sigma == 1)
    minus = next(t for t in templates if t.sigma == -1)
    with pytest.raises(InputError):
        solve_template(honeycomb_curve, (plus, minus))
    with pytest.raises(InputError):
        solve_template(honeycomb_curve, ())


def test_requires_smooth_bidegree_33():
    line = curve_from_polynomial({(0, 0): 0, (1, 0): 0, (0, 1): 0})
    with pytest.raises(InputError):
        enumerate_tritangents(line)
    coarse = curve_from_polynomial(
        {(0, 0): 0, (3, 0): 0, (0, 3): 0, (3, 3): 0}
    )
    with pytest.raises(DegenerateCurveError):
        enumerate_tritangents(coarse)


def test_one_one_curve_geometry():
    L = OneOneCurve(0, 0, -1)
    assert L.edge_type == 1
    C = L.curve()
    assert len(C.vertices) == 2
    assert C.genus == 0
    s, w, n, e = L.levels
    assert (s, w, n, e) == (0, 0, 1, 1)
