from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from supercoh import weights as wt


def omega_by_search(lam, span=range(-8, 9)):
    """Brute-force Omega membership over integer a, b in a window."""
    n = len(lam)
    for i in range(n):
        for a in span:
            for b in span:
                cand = [a] * i + [b] + [a + 1] * (n - i - 1)
                if list(lam) == cand:
                    return True
    return False


def omega_w_by_search(lam, span=range(-8, 9)):
    n = len(lam)
    return any(list(lam) == [0] * i + [a] + [1] * (n - i - 1) for i in range(n) for a in span)


def test_atypical_w_examples():
    assert wt.is_atypical_W((5, 1, 1))
    assert wt.is_atypical_W((0, 0, 1))
    assert not wt.is_atypical_W((1, 2, 3))


def test_atypical_sbar_examples():
    for a in range(-3, 4):
        assert wt.is_atypical_Sbar((a, a, a))
    assert wt.is_atypical_Sbar((0, 0, 0))
    assert not wt.is_atypical_Sbar((2, 1, 0))


def test_dominant_form_examples():
    assert wt.atypical_dominant_form((3, 3, 1))
    assert not wt.atypical_dominant_form((3, 2, 1))
    assert wt.atypical_dominant_form((0, 0, 0))
    with pytest.raises(wt.NotDominant):
        wt.atypical_dominant_form((1, 2, 0))


def test_sigma_shift_examples():
    a, bar = wt.sigma_shift((2, 0, 3))
    assert a == 2 and bar == [0, -2, 1]
    assert wt.is_atypical_W(bar)
    with pytest.raises(wt.IsSigmaMultiple):
        wt.sigma_shift((3, 3, 3))
    with pytest.raises(wt.NotAtypical):
        wt.sigma_shift((2, 1, 0))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_membership_matches_search(n):
    for lam in product(range(-3, 4), repeat=n):
        assert wt.is_atypical_Sbar(lam) == omega_by_search(lam)
        assert wt.is_atypical_W(lam) == omega_w_by_search(lam)


def test_sigma_shift_needs_rank_three():
    # for n = 2 the shift is ambiguous: (0, -1) = 0 sigma + (0, -1) = -1 sigma + (1, 0)
    with pytest.raises(ValueError):
        wt.sigma_shift((0, -1))


@given(st.lists(st.integers(-4, 4), min_size=3, max_size=5))
def test_sigma_shift_lands_in_omega_w(lam):
    if not wt.is_atypical_Sbar(lam) or wt.sigma_multiple(lam) is not None:
        return
    a, bar = wt.sigma_shift(lam)
    assert wt.is_atypical_W(bar)
    assert [x - a for x in lam] == bar
    # uniqueness by scan over a wide window
    hits = [b for b in range(-12, 13) if wt.is_atypical_W([x - b for x in lam])]
    assert hits == [a]


def test_dominant_weights_enumeration():
    ws = list(wt.dominant_weights(3, -1, 1))
    assert len(ws) == len(set(ws)) == 10
    assert all(wt.is_dominant(w) for w in ws)


def test_parse_weight():
    assert wt.parse_weight("2,1/2,-3") == [2, Fraction(1, 2), -3]
    assert wt.parse_weight("(1, 0, 0)") == [1, 0, 0]


def test_dominant_form_is_contained_in_omega():
    # one direction of the dominant-weight identity holds everywhere
    for n in (3, 4):
        for lam in wt.dominant_weights(n, -3, 3):
            if wt.atypical_dominant_form(lam):
                assert wt.is_atypical_Sbar(lam)


def test_dominant_omega_weights_outside_the_printed_form():
    # (b, c, ..., c) with b > c sits in Omega via i = 1 but is not of the form (a, ..., a, b)
    assert wt.is_atypical_Sbar((1, 0, 0))
    assert not wt.atypical_dominant_form((1, 0, 0))
    extra = [lam for n in (3, 4) for lam in wt.dominant_weights(n, -3, 3)
             if wt.is_atypical_Sbar(lam) and not wt.atypical_dominant_form(lam)]
    assert len(extra) == 42
    assert all(lam[0] > lam[1] and len(set(lam[1:])) == 1 for lam in extra)
