import random
from fractions import Fraction

import pytest

from _oracles import (
    random_bidegree_polynomial,
    random_degree_polynomial,
    stable_intersection_oracle,
)
from conftest import HONEYCOMB_HEIGHTS
from tritrop.exceptions import DegenerateCurveError
from tritrop.intersection import (
    contact_components,
    stable_intersection,
    tangencies,
    tritangency_certificate,
)
from tritrop.plane_curve import curve_from_polynomial

Q = Fraction

# a line meeting a (1,1)-curve in a single point of multiplicity 2
LINE = curve_from_polynomial({(0, 0): 0, (1, 0): 0, (0, 1): 0})
HYPERBOLA = curve_from_polynomial(
    {(0, 0): 0, (1, 0): -1, (0, 1): -1, (1, 1): -1}
)

# a conic-like curve sharing the whole segment [(0,0), (2,0)] with the
# horizontal line y = 0
SEG_CURVE = curve_from_polynomial({(1, 0): 0, (0, 1): 0, (1, 1): 0, (2, 1): -2})
H_LINE = curve_from_polynomial({(0, 0): 0, (0, 1): 0})


def test_multiplicity_two_point():
    div = stable_intersection(LINE, HYPERBOLA)
    assert list(div) == [((Q(1, 2), Q(1, 2)), 2)]
    assert div.total() == 2
    [ev] = tangencies(LINE, HYPERBOLA)
    assert ev.kind == "point" and ev.multiplicity == 2
    assert ev.locus == ((Q(1, 2), Q(1, 2)),)


def test_segment_contact_two_simple_points():
    div = stable_intersection(SEG_CURVE, H_LINE)
    assert list(div) == [((Q(0), Q(0)), 1), ((Q(2), Q(0)), 1)]
    [ev] = tangencies(SEG_CURVE, H_LINE)
    assert ev.kind == "segment" and ev.multiplicity == 2
    assert ev.locus == ((Q(0), Q(0)), (Q(2), Q(0)))
    comps = contact_components(SEG_CURVE, H_LINE)
    assert len(comps) == 1
    assert comps[0][1] == 2


def test_examples_match_oracle():
    for A, B in [(LINE, HYPERBOLA), (SEG_CURVE, H_LINE)]:
        assert list(stable_intersection(A, B)) == stable_intersection_oracle(A, B)


def test_transverse_crossing_has_no_tangency():
    shifted = curve_from_polynomial(
        {(0, 0): 0, (1, 0): Q(-1, 3), (0, 1): Q(-2, 3)}
    )
    div = stable_intersection(LINE, shifted)
    assert div.total() == 1 and all(m == 1 for _, m in div)
    assert tangencies(LINE, shifted) == []
    assert contact_components(LINE, shifted) is None
    assert tritangency_certificate(LINE, shifted) is None


def test_self_intersection_is_stable():
    assert stable_intersection(LINE, LINE).total() == 1
    C = curve_from_polynomial(HONEYCOMB_HEIGHTS)
    assert stable_intersection(C, C).total() == 18


def test_intersection_commutes():
    a = {p: m for p, m in stable_intersection(LINE, HYPERBOLA)}
    b = {p: m for p, m in stable_intersection(HYPERBOLA, LINE)}
    assert a == b


def test_divisor_queries():
    div = stable_intersection(SEG_CURVE, H_LINE)
    assert len(div) == 2
    assert div.multiplicity_at((Q(0), Q(0))) == 1
    assert div.multiplicity_at((Q(5), Q(5))) == 0


def test_random_pairs_match_oracle_and_bezout():
    rng = random.Random(11)
    for _ in range(6):
        A = curve_from_polynomial(random_degree_polynomial(rng, rng.randint(1, 3)))
        B = curve_from_polynomial(random_degree_polynomial(rng, rng.randint(1, 2)))
        div = stable_intersection(A, B)
        assert list(div) == stable_intersection_oracle(A, B)
    for _ in range(4):
        A = curve_from_polynomial(
            random_bidegree_polynomial(rng, rng.randint(1, 2), rng.randint(1, 2))
        )
        B = curve_from_polynomial(
            random_bidegree_polynomial(rng, rng.randint(1, 2), rng.randint(1, 2))
        )
        assert list(stable_intersection(A, B)) == stable_intersection_oracle(A, B)


def test_certificate_partitions():
    # tangency weight 2 at one point is not a tritangency of anything
    assert tritangency_certificate(LINE, HYPERBOLA) is None
    assert tritangency_certificate(SEG_CURVE, H_LINE) is None
