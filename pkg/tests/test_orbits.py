"""Orbit census: label counts, frozen lengths, product law, GL cross-check."""

from itertools import product

import pytest

from ringmat.errors import BudgetExceededError, VerificationError
from ringmat.matrix import Mat
from ringmat.orbits import (
    CensusReport,
    census_by_enumeration,
    enumerate_orbit_labels,
    expected_label_count,
    verify_orbit_product,
)
from ringmat.ring import ring_spec
from ringmat.smith import invariant_factors

# lengths frozen from exhaustive enumeration, cross-checked by the
# per-component product law and by the total h**(m*n)
Z6_2X2_LENGTHS = {
    ((0, 0), (0, 0)): 288,
    ((0, 0), (0, 1)): 192,
    ((0, 0), (1, 1)): 6,
    ((0, 1), (0, 0)): 432,
    ((0, 1), (0, 1)): 288,
    ((0, 1), (1, 1)): 9,
    ((1, 1), (0, 0)): 48,
    ((1, 1), (0, 1)): 32,
    ((1, 1), (1, 1)): 1,
}


def test_census_z4_1x1():
    rep = census_by_enumeration(ring_spec(4), 1, 1)
    assert dict(rep.entries) == {((0,),): 2, ((1,),): 1, ((2,),): 1}
    assert rep.total == 4
    assert rep.label_count == 3 == expected_label_count(ring_spec(4), 1, 1)


def test_census_z6_2x2_frozen_lengths():
    rep = census_by_enumeration(ring_spec(6), 2, 2)
    assert dict(rep.entries) == Z6_2X2_LENGTHS
    assert rep.length_of(((0, 0), (0, 0))) == 288


def test_identity_orbit_is_the_invertible_matrices():
    """The orbit of I is GL_2, so its length equals the invertible count."""
    ring = ring_spec(6)
    rep = census_by_enumeration(ring, 2, 2)
    gl_count = sum(
        1
        for entries in product(range(6), repeat=4)
        if Mat(ring, 2, 2, entries).is_invertible()
    )
    assert rep.length_of(((0, 0), (0, 0))) == gl_count == 288


def test_census_length_matches_gl_action():
    """Independent cross-check: enumerate one orbit literally as {P @ D @ Q}."""
    ring = ring_spec(4)
    rep = census_by_enumeration(ring, 2, 2)
    gl = [
        Mat(ring, 2, 2, entries)
        for entries in product(range(4), repeat=4)
        if Mat(ring, 2, 2, entries).is_invertible()
    ]
    d = Mat.diagonal(ring, [1, 2])
    orbit = {p @ d @ q for p in gl for q in gl}
    assert invariant_factors(d).omega == ((0, 1),)
    assert len(orbit) == rep.length_of(((0, 1),))
    assert all(invariant_factors(x).omega == ((0, 1),) for x in orbit)


def test_label_count_formula():
    for h, m, n in ((4, 2, 2), (6, 2, 2), (6, 2, 3), (12, 2, 2), (8, 1, 3)):
        ring = ring_spec(h)
        labels = enumerate_orbit_labels(ring, m, n)
        assert len(labels) == expected_label_count(ring, m, n)
        assert sorted(set(labels)) == labels


def test_census_labels_match_enumeration():
    ring = ring_spec(12)
    rep = census_by_enumeration(ring, 2, 2)
    assert [lab for lab, _ in rep.entries] == enumerate_orbit_labels(ring, 2, 2)


def test_product_law():
    for h in (6, 12):
        rep = verify_orbit_product(ring_spec(h), 2, 2)
        assert rep.ok
        assert rep.first_violation() is None


def test_census_budget_guard():
    with pytest.raises(BudgetExceededError):
        census_by_enumeration(ring_spec(12), 3, 3, budget=1000)


def test_census_report_validation():
    ring = ring_spec(4)
    with pytest.raises(VerificationError):
        CensusReport(ring, 1, 1, ((((0,),), 2), (((1,),), 1), (((2,),), 2)))
    with pytest.raises(VerificationError):
        CensusReport(ring, 1, 1, ((((1,),), 3), (((0,),), 1)))
