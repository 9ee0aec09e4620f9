"""Canonical cliques, classification, rebuild gates, extremal verification."""

import pytest

from ringmat.cliques import (
    build_canonical_clique,
    CanonicalCliqueSpec,
    classify_max_clique,
    CliqueForm,
    COL_FORM,
    enumerate_max_cliques,
    is_clique,
    MIXED_FORM,
    random_clique_form,
    rebuild_clique,
    ROW_FORM,
    verify_ekr,
)
from ringmat.errors import (
    BudgetExceededError,
    NotIntersectingError,
    UsageError,
    VerificationError,
)
from ringmat.graph import GraphSpec
from ringmat.matrix import Mat
from ringmat.ring import ring_spec


def _spec(h, m=2, n=2, r=1):
    return GraphSpec(ring_spec(h), m, n, r)


def test_canonical_clique_sizes():
    for h, alphas in ((6, [(0, 0), (1, 1), (0, 1), (1, 0)]),
                      (12, [(0, 0), (2, 1), (0, 1), (2, 0)])):
        spec = _spec(h)
        for alpha in alphas:
            fam = build_canonical_clique(CanonicalCliqueSpec(spec, alpha))
            assert len(fam) == spec.clique_bound
            assert is_clique(spec, fam)
    rect = _spec(6, 2, 3, 1)
    fam = build_canonical_clique(CanonicalCliqueSpec(rect, (0, 0)))
    assert len(fam) == 216
    assert is_clique(rect, fam, pair_budget=30000)


def test_canonical_spec_validation():
    spec = _spec(12)
    with pytest.raises(UsageError):
        CanonicalCliqueSpec(spec, (1, 1))  # exponents must be 0 or s_i
    with pytest.raises(UsageError):
        CanonicalCliqueSpec(spec, (2,))  # one exponent per prime
    rect = _spec(6, 2, 3, 1)
    with pytest.raises(UsageError):
        CanonicalCliqueSpec(rect, (1, 1))  # nonzero alpha needs m == n


def test_is_clique_detects_violations():
    spec = _spec(6)
    ring = spec.ring
    assert not is_clique(spec, [Mat.zeros(ring, 2, 2), Mat.identity(ring, 2)])
    with pytest.raises(BudgetExceededError):
        fam = build_canonical_clique(CanonicalCliqueSpec(spec, (0, 0)))
        is_clique(spec, fam, pair_budget=10)


def test_classification_round_trip_all_tags():
    spec = _spec(6)
    for alpha, tag in (((0, 0), ROW_FORM), ((1, 1), COL_FORM),
                       ((0, 1), MIXED_FORM), ((1, 0), MIXED_FORM)):
        for seed in range(5):
            form = random_clique_form(spec, alpha, seed)
            fam = rebuild_clique(form)
            back = classify_max_clique(spec, fam)
            assert back.tag == tag
            assert back.alpha == alpha
            assert rebuild_clique(back) == fam


def test_classify_rejects_wrong_size():
    spec = _spec(6)
    fam = list(build_canonical_clique(CanonicalCliqueSpec(spec, (0, 0))))
    with pytest.raises(VerificationError):
        classify_max_clique(spec, fam[:-1])


def test_classify_rejects_right_size_non_clique():
    spec = _spec(6)
    fam = sorted(build_canonical_clique(CanonicalCliqueSpec(spec, (0, 0))),
                 key=lambda m: m.entries)
    outside = Mat.identity(spec.ring, 2)
    assert outside not in fam
    tampered = fam[:-1] + [outside]
    with pytest.raises(VerificationError):
        classify_max_clique(spec, tampered)


def test_rebuild_rejects_collapsing_parameters():
    spec = _spec(6)
    bad = CliqueForm(spec, ROW_FORM, Mat.zeros(spec.ring, 2, 2), None,
                     (0, 0), Mat.zeros(spec.ring, 2, 2))
    with pytest.raises(VerificationError):
        rebuild_clique(bad)


def test_clique_form_tag_validation():
    spec = _spec(6)
    with pytest.raises(UsageError):
        CliqueForm(spec, "Sideways", None, None, (0, 0), Mat.zeros(spec.ring, 2, 2))


def test_enumerate_max_cliques_z2():
    spec = _spec(2)
    cliques = enumerate_max_cliques(spec)
    assert len(cliques) == 24
    assert all(len(c) == 4 for c in cliques)
    assert len(set(map(frozenset, cliques))) == 24
    for fam in cliques:
        assert is_clique(spec, fam)


def test_enumerate_max_cliques_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_max_cliques(_spec(6), budget=256)


def test_verify_ekr_accepts_subfamily_without_form():
    spec = _spec(6)
    fam = sorted(build_canonical_clique(CanonicalCliqueSpec(spec, (0, 0))),
                 key=lambda m: m.entries)
    rep = verify_ekr(spec, fam[:10])
    assert rep.within_bound and not rep.extremal
    assert rep.form is None
    assert rep.size == 10 and rep.bound == 36


def test_verify_ekr_rejects_non_intersecting():
    spec = _spec(6)
    family = [Mat.zeros(spec.ring, 2, 2), Mat.identity(spec.ring, 2)]
    with pytest.raises(NotIntersectingError):
        verify_ekr(spec, family)


def test_verify_ekr_classifies_extremal():
    spec = _spec(12)
    fam = rebuild_clique(random_clique_form(spec, (0, 1), 9))
    rep = verify_ekr(spec, fam)
    assert rep.extremal
    assert rep.form is not None and rep.form.tag == MIXED_FORM


def test_random_clique_form_deterministic():
    spec = _spec(6)
    f1 = random_clique_form(spec, (0, 1), 5)
    f2 = random_clique_form(spec, (0, 1), 5)
    assert f1 == f2
    assert rebuild_clique(f1) == rebuild_clique(f2)
