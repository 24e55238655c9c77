import pytest

from tritrop.exceptions import InputError
from tritrop.real_counts import (
    RealTopologyType,
    emch_census,
    lifting_multiplicity,
    odd_even_counts,
    real_theta_counts,
)


def test_genus_four_counts():
    c = odd_even_counts(4)
    assert c == (120, 136)
    assert c.odd == 120 and c.even == 136


def test_odd_even_totals():
    for g in range(9):
        c = odd_even_counts(g)
        assert c.odd + c.even == 4 ** g
        assert c.even - c.odd == 2 ** g


def test_m_curve_realizes_every_theta():
    # with the maximal g+1 ovals, every characteristic is real
    for g in range(1, 6):
        r = real_theta_counts(RealTopologyType(g, g + 1, True))
        c = odd_even_counts(g)
        assert (r.odd, r.even) == (c.odd, c.even)


def test_separating_five_ovals():
    r = real_theta_counts(4, 5, True)
    assert r.odd == 120 and r.even == 136


def test_non_separating_one_oval():
    r = real_theta_counts(4, 1, False)
    assert r == (8, 8)
    assert r.odd == 8


def test_separating_one_oval_has_no_real_odd():
    r = real_theta_counts(RealTopologyType(4, 1, True))
    assert r.odd == 0 and r.even == 16


def test_type_validation():
    with pytest.raises(InputError):
        RealTopologyType(-1, 1, False)
    with pytest.raises(InputError):
        RealTopologyType(4, 0, False)
    with pytest.raises(InputError):
        RealTopologyType(4, 6, True)  # Harnack: s <= g + 1
    with pytest.raises(InputError):
        RealTopologyType(4, 2, True)  # parity: s = g + 1 (mod 2)
    with pytest.raises(InputError):
        RealTopologyType(4, 5, False)  # maximal curves separate


def test_lifting_multiplicity():
    assert lifting_multiplicity(4) == 8
    assert lifting_multiplicity(1) == 1
    assert [lifting_multiplicity(g) for g in range(1, 6)] == [1, 2, 4, 8, 16]
    with pytest.raises(InputError):
        lifting_multiplicity(0)
    # odd characteristics distribute evenly over effective tropical ones
    for g in range(1, 7):
        assert odd_even_counts(g).odd == (2 ** g - 1) * lifting_multiplicity(g)


def test_emch_census():
    census = emch_census()
    assert census.total == 108
    assert [r.count for r in census.rows] == [80, 6, 18, 4]
    assert census.rows[0].contact == "(1,1,1)"
    assert census.rows[0].derivation == "8 * C(5,3) = 80"
    assert all(r.derivation for r in census.rows)
    assert any("12" in n for n in census.notes)
