"""Rank-distance codes, coset colorings, complement covers, certificates."""

import math
from itertools import product

import pytest

from ringmat.codes import (
    certify_graph_parameters,
    clique_cover_complement,
    color_graph,
    crt_combine,
    FieldSpec,
    gabidulin_code,
    independent_set_from_code,
    lift_code,
    mrd_code,
    RankCode,
    verify_distance,
)
from ringmat.errors import BudgetExceededError, UsageError, VerificationError
from ringmat.graph import build_graph, GraphSpec
from ringmat.matrix import Mat
from ringmat.ring import ring_spec
from ringmat.smith import inner_rank

FROZEN_MODULI = {
    (2, 2): (1, 1, 1),      # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),   # x^3 + x + 1
    (3, 2): (1, 0, 1),      # x^2 + 1
    (3, 3): (1, 2, 0, 1),   # x^3 + 2x + 1
    (5, 2): (2, 0, 1),      # x^2 + 2
}


def _spec(h, m=2, n=2, r=1):
    return GraphSpec(ring_spec(h), m, n, r)


def test_default_field_moduli_frozen():
    for (p, n), coeffs in FROZEN_MODULI.items():
        assert FieldSpec.default(p, n).modulus == coeffs


def test_field_axioms_sampled():
    field = FieldSpec.default(3, 2)
    elems = list(field.elements())
    assert len(elems) == 9
    one = field.one()
    zero = field.zero()
    # the nonzero elements form a group of order p^n - 1
    for x in elems:
        if x == zero:
            continue
        assert field._pow(x, 8) == one
    # frobenius is additive and fixes the prime subfield
    for x in elems[:5]:
        for y in elems[:5]:
            fx = field.frobenius_power(x, 1)
            fy = field.frobenius_power(y, 1)
            assert field.frobenius_power(field.add(x, y), 1) == field.add(fx, fy)
            assert field.frobenius_power(field.mul(x, y), 1) == field.mul(fx, fy)


def test_gabidulin_sizes_and_distances():
    for p, m, n, d in ((2, 2, 2, 2), (3, 2, 2, 2), (2, 2, 3, 2)):
        field = FieldSpec.default(p, n)
        code = gabidulin_code(field, m, n, d)
        assert code.size == p ** (n * (m - d + 1))
        assert verify_distance(code) == d
        assert code.linear
        zero = Mat.zeros(code.ring, m, n)
        assert zero in code.members


def test_gabidulin_distance_one_is_whole_space():
    field = FieldSpec.default(2, 2)
    code = gabidulin_code(field, 2, 2, 1)
    assert code.size == 16
    assert verify_distance(code) == 1


def test_lift_preserves_size_and_distance():
    field = FieldSpec.default(2, 2)
    base = gabidulin_code(field, 2, 2, 2)
    lifted = lift_code(base, 2)
    assert lifted.ring.h == 4
    assert lifted.size == 16
    assert verify_distance(lifted) == 2
    assert lifted.linear
    # linearity spot check: closed under addition
    members = sorted(lifted.members, key=lambda m: m.entries)[:6]
    for a in members:
        for b in members:
            assert (a + b) in lifted.members


def test_crt_combine_matches_component_codes():
    c2 = gabidulin_code(FieldSpec.default(2, 2), 2, 2, 2)
    c3 = gabidulin_code(FieldSpec.default(3, 2), 2, 2, 2)
    code = crt_combine([c2, c3])
    assert code.ring.h == 6
    assert code.size == 36
    assert verify_distance(code) == 2
    with pytest.raises(UsageError):
        crt_combine([c3, c2])  # component order must match the prime order


def test_mrd_sizes_all_rings():
    for h, m, n in ((2, 2, 2), (3, 2, 2), (4, 2, 2), (6, 2, 2), (12, 2, 2), (4, 2, 3)):
        spec = _spec(h, m, n, 1)
        code = mrd_code(spec)
        assert code.size == spec.independence_bound
        assert code.claimed_min_distance == 2


def test_code_is_independent_set():
    for h in (2, 3):
        spec = _spec(h)
        members = sorted(independent_set_from_code(spec), key=lambda m: m.entries)
        assert len(members) == spec.independence_bound
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                assert inner_rank(a - b) > spec.r


def test_verify_distance_edge_cases():
    ring = ring_spec(4)
    singleton = RankCode(ring, 2, 2, frozenset([Mat.zeros(ring, 2, 2)]), 1, False, None)
    assert verify_distance(singleton) == math.inf
    linear_no_zero = RankCode(
        ring, 2, 2, frozenset([Mat.identity(ring, 2), Mat.diagonal(ring, [2, 2])]),
        1, True, None,
    )
    with pytest.raises(VerificationError):
        verify_distance(linear_no_zero)
    pair = RankCode(
        ring, 2, 2,
        frozenset([Mat.zeros(ring, 2, 2), Mat.identity(ring, 2)]), 2, False, None,
    )
    assert verify_distance(pair) == 2
    with pytest.raises(BudgetExceededError):
        verify_distance(mrd_code(_spec(6)), pair_budget=3)


def test_coloring_small_graph_fully_checked():
    spec = _spec(4)
    col = color_graph(spec, vertex_budget=500)
    assert col.n_colors == 16
    assert col.verification == "edges"
    # independent re-check against the materialized graph
    g = build_graph(spec, vertex_budget=spec.n_vertices)
    for u in range(spec.n_vertices):
        for v in g.neighbor_ids(u):
            assert col.colors[u] != col.colors[v]
    # cosets partition the vertices evenly
    from collections import Counter

    sizes = Counter(col.colors)
    assert len(sizes) == 16 and set(sizes.values()) == {16}


def test_coloring_structural_above_budget():
    spec = _spec(12)
    col = color_graph(spec, vertex_budget=100)
    assert col.n_colors == 144
    assert col.verification == "structural"


def test_clique_cover_partitions():
    spec = _spec(6)
    cover = clique_cover_complement(spec, vertex_budget=2000)
    assert len(cover.parts) == 36
    assert all(len(p) == 36 for p in cover.parts)
    seen = set()
    for part in cover.parts:
        ids = {spec.vertex_id(m) for m in part}
        assert not (seen & ids)
        seen |= ids
    assert len(seen) == spec.n_vertices
    with pytest.raises(BudgetExceededError):
        clique_cover_complement(_spec(12), vertex_budget=100)


def test_certificate_pins_parameters():
    spec = _spec(6)
    cert = certify_graph_parameters(spec, vertex_budget=2000)
    assert cert.omega == cert.chi == 36
    assert cert.alpha == 36
    assert cert.code_distance == 2
    assert cert.clique_size == 36 and cert.code_size == 36
