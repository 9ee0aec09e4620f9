"""Maximum cliques of the low-rank-difference graph and their classification.

The canonical maximum cliques are the sets

    C = { [[X1, X2], [X3, 0]] }            (block sizes r, m-r by r, n-r)

where X1 is free, the entries of X2 range over the ideal with exponent
vector alpha, and the entries of X3 range over the complementary ideal with
exponents s - alpha; each alpha_i must be 0 or s_i, and any nonzero alpha
requires m = n for the set to reach the extremal size h**(n*r).  Every
maximum clique is an image S @ C @ T + B0 of such a set, and the shape of
alpha splits the classification into three forms:

  RowForm    alpha = 0:        S @ C_r(0) + B0        (any m <= n)
  ColForm    alpha = s:        C_r(s) @ T + B0        (m = n)
  MixedForm  otherwise:        S @ C_r(alpha) @ T + B0 (m = n)

classify_max_clique recovers a parameterization by translating the clique
to contain 0, projecting to each prime component, and reading off whether
the member columns span a free rank-r column module (row type) or the
member rows span a free rank-r row module (column type) from the Smith
exponents of stacked members; the recovered form is always verified by
exact rebuild before it is returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    DEFAULT_EXACT_SEARCH_BUDGET,
    DEFAULT_PAIR_BUDGET,
    BudgetExceededError,
    NotIntersectingError,
    ShapeError,
    UsageError,
    VerificationError,
)
from .graph import GraphSpec, RankGraph, build_graph
from .matrix import Mat, crt_lift_mat, random_invertible, random_matrix
from .ring import RingSpec
from .smith import _pp_exponents, _pp_smith_cached
from . import oracle

ROW_FORM = "RowForm"
COL_FORM = "ColForm"
MIXED_FORM = "MixedForm"


@dataclass(frozen=True)
class CanonicalCliqueSpec:
    """Parameters of a canonical maximum clique: the graph and the ideal exponents.

    alpha[i] must be 0 or s_i.  A nonzero alpha only yields a *maximum*
    clique for square matrices, so m < n with alpha != 0 is rejected.
    """

    graph: GraphSpec
    alpha: tuple[int, ...]

    def __post_init__(self) -> None:
        ring = self.graph.ring
        if len(self.alpha) != ring.t:
            raise UsageError("alpha must have one exponent per prime component")
        for a, (_, s) in zip(self.alpha, ring.primes):
            if a not in (0, s):
                raise UsageError(f"alpha entries must be 0 or saturated, got {a} (s = {s})")
        if any(self.alpha) and self.graph.m != self.graph.n:
            raise UsageError("nonzero alpha needs square matrices to reach the extremal size")


def _ideal_generator(ring: RingSpec, exponents: Sequence[int]) -> int:
    g = 1
    for (p, _), a in zip(ring.primes, exponents):
        g *= p**a
    return g % ring.h if g % ring.h else ring.h  # h encodes the zero ideal's step


def build_canonical_clique(cspec: CanonicalCliqueSpec) -> frozenset[Mat]:
    """Materialize the canonical clique; its size is h**(n*r) by construction."""
    g = cspec.graph
    ring = g.ring
    h = ring.h
    m, n, r = g.m, g.n, g.r
    step_a = _ideal_generator(ring, cspec.alpha)
    step_b = _ideal_generator(ring, tuple(s - a for a, (_, s) in zip(cspec.alpha, ring.primes)))
    free = range(h)
    upper = range(0, h, step_a)   # ideal with exponents alpha
    lower = range(0, h, step_b)   # complementary ideal with exponents s - alpha
    members = []
    n_upper = r * (n - r)
    n_lower = (m - r) * r
    for x1 in product(free, repeat=r * r):
        for x2 in product(upper, repeat=n_upper):
            for x3 in product(lower, repeat=n_lower):
                ents = [0] * (m * n)
                for i in range(r):
                    row = i * n
                    for j in range(r):
                        ents[row + j] = x1[i * r + j]
                    for j in range(n - r):
                        ents[row + r + j] = x2[i * (n - r) + j]
                for i in range(m - r):
                    row = (r + i) * n
                    for j in range(r):
                        ents[row + j] = x3[i * r + j]
                members.append(Mat(ring, m, n, tuple(ents)))
    return frozenset(members)


def is_clique(spec: GraphSpec, family: Iterable[Mat], pair_budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    """Pairwise check that all distinct members differ by inner rank <= r.

    Works per prime component on flat entry tuples so the exponent kernel's
    cache carries the load; a pair fails as soon as one component's rank
    exceeds r.
    """
    members = list(family)
    npairs = len(members) * (len(members) - 1) // 2
    if npairs > pair_budget:
        raise BudgetExceededError(f"{npairs} pairs exceed the budget {pair_budget}")
    ring = spec.ring
    rows, cols, r = spec.m, spec.n, spec.r
    comps = [
        [tuple(e % q for e in mat.entries) for mat in members]
        for q in ring.prime_powers
    ]
    for k, ((p, s), q) in enumerate(zip(ring.primes, ring.prime_powers)):
        proj = comps[k]
        for i in range(len(members)):
            a = proj[i]
            for j in range(i + 1, len(members)):
                b = proj[j]
                if a == b:
                    continue
                diff = tuple((x - y) % q for x, y in zip(a, b))
                alpha = _pp_exponents(p, s, q, rows, cols, diff)
                if sum(1 for x in alpha if x < s) > r:
                    return False
    return True


@dataclass(frozen=True)
class CliqueForm:
    """A verified parameterization of a maximum clique.

    tag is one of RowForm / ColForm / MixedForm; S is present unless the tag
    is ColForm, T is present unless the tag is RowForm, and alpha records
    the per-prime ideal exponents (all 0 for RowForm, all s_i for ColForm).
    """

    graph: GraphSpec
    tag: str
    S: Mat | None
    T: Mat | None
    alpha: tuple[int, ...]
    B0: Mat

    def __post_init__(self) -> None:
        if self.tag not in (ROW_FORM, COL_FORM, MIXED_FORM):
            raise UsageError(f"unknown form tag {self.tag!r}")


def rebuild_clique(form: CliqueForm) -> frozenset[Mat]:
    """Materialize { S @ M @ T + B0 : M in the canonical clique of alpha }."""
    g = form.graph
    base = build_canonical_clique(CanonicalCliqueSpec(g, form.alpha))
    out = []
    for mtx in base:
        x = mtx
        if form.S is not None:
            x = form.S @ x
        if form.T is not None:
            x = x @ form.T
        out.append(x + form.B0)
    fam = frozenset(out)
    if len(fam) != len(base):
        raise VerificationError("transforms collapsed the canonical clique")
    return fam


def _stack_horizontal(members: list[tuple[int, ...]], m: int, n: int) -> tuple[int, ...]:
    width = len(members) * n
    out = [0] * (m * width)
    for k, ents in enumerate(members):
        for i in range(m):
            base = i * width + k * n
            src = i * n
            for j in range(n):
                out[base + j] = ents[src + j]
    return tuple(out)


def _stack_vertical(members: list[tuple[int, ...]], m: int, n: int) -> tuple[int, ...]:
    out = []
    for ents in members:
        out.extend(ents)
    return tuple(out)


def classify_max_clique(spec: GraphSpec, family: Iterable[Mat]) -> CliqueForm:
    """Recover a (tag, S, T, alpha, B0) parameterization of a maximum clique.

    The input must be a maximum clique: size h**(n*r) and pairwise inner
    rank of differences <= r.  The translated set G = family - B0 projects,
    in each prime component, onto the transformed canonical set; whether the
    component is row type (alpha_i = 0) or column type (alpha_i = s_i) is
    read off the Smith exponents of the horizontally / vertically stacked
    members, and the transforms are the outer Smith factors of those stacks.
    Ties (possible only when r = m = n) resolve to the row type.  The
    recovered form is rebuilt and compared for exact set equality; any
    mismatch raises VerificationError, since it would witness a maximum
    clique outside the classified shapes.
    """
    ring = spec.ring
    m, n, r = spec.m, spec.n, spec.r
    members = list(family)
    if not members:
        raise UsageError("empty family")
    for mem in members:
        if mem.ring != ring or (mem.rows, mem.cols) != (m, n):
            raise ShapeError("family members do not match the graph parameters")
    size = len(set(members))
    if size != spec.clique_bound:
        raise VerificationError(
            f"family has size {size}, a maximum clique has {spec.clique_bound}"
        )

    b0 = min(members, key=lambda mat: mat.entries)
    shifted = sorted({(mem - b0).entries for mem in members})

    s_comps: list[Mat | None] = []
    t_comps: list[Mat | None] = []
    alpha: list[int] = []
    for idx, ((p, s), q) in enumerate(zip(ring.primes, ring.prime_powers)):
        proj = sorted({tuple(v % q for v in ents) for ents in shifted})
        comp = ring.component(idx)

        hstack = _stack_horizontal(proj, m, n)
        h_alpha, _, h_uinv, _, _ = _pp_smith_cached(p, s, q, m, len(proj) * n, hstack, True)
        if h_alpha == (0,) * r + (s,) * (m - r):
            s_comps.append(Mat(comp, m, m, h_uinv))
            t_comps.append(None)
            alpha.append(0)
            continue

        vstack = _stack_vertical(proj, m, n)
        v_alpha, _, _, _, v_vinv = _pp_smith_cached(p, s, q, len(proj) * m, n, vstack, True)
        if v_alpha == (0,) * r + (s,) * (n - r):
            if m != n:
                raise VerificationError(
                    f"component {idx} is column type but the matrices are not square; "
                    "this contradicts the classification of maximum cliques"
                )
            s_comps.append(None)
            t_comps.append(Mat(comp, n, n, v_vinv))
            alpha.append(s)
            continue

        raise VerificationError(
            f"component {idx} matches neither the row nor the column shape "
            f"(column exponents {h_alpha}, row exponents {v_alpha}); "
            "this contradicts the classification of maximum cliques"
        )

    row_like = [a == 0 for a in alpha]
    if all(row_like):
        tag = ROW_FORM
        s_mat: Mat | None = crt_lift_mat(ring, [c for c in s_comps if c is not None])
        t_mat: Mat | None = None
    elif not any(row_like):
        tag = COL_FORM
        s_mat = None
        t_mat = crt_lift_mat(ring, [c for c in t_comps if c is not None])
    else:
        tag = MIXED_FORM
        s_mat = crt_lift_mat(
            ring,
            [c if c is not None else Mat.identity(ring.component(i), m) for i, c in enumerate(s_comps)],
        )
        t_mat = crt_lift_mat(
            ring,
            [c if c is not None else Mat.identity(ring.component(i), n) for i, c in enumerate(t_comps)],
        )

    form = CliqueForm(spec, tag, s_mat, t_mat, tuple(alpha), b0)
    rebuilt = rebuild_clique(form)
    if rebuilt != frozenset(members):
        raise VerificationError(
            "recovered parameterization does not rebuild the family; "
            "this contradicts the classification of maximum cliques"
        )
    return form


@dataclass(frozen=True)
class EkrReport:
    """Outcome of checking a pairwise low-rank-difference family against the bound."""

    size: int
    bound: int
    extremal: bool
    form: CliqueForm | None

    @property
    def within_bound(self) -> bool:
        return self.size <= self.bound


def verify_ekr(spec: GraphSpec, family: Iterable[Mat], pair_budget: int = DEFAULT_PAIR_BUDGET) -> EkrReport:
    """Check the extremal bound for a family whose members pairwise differ by rank <= r.

    Families that are not pairwise intersecting in this sense are rejected
    with NotIntersectingError.  Extremal families (size exactly h**(n*r))
    are classified; smaller ones are reported as within the bound.
    """
    members = list(family)
    if not members:
        raise UsageError("empty family")
    if not is_clique(spec, members, pair_budget):
        raise NotIntersectingError(
            f"family is not pairwise rank-{spec.r} intersecting"
        )
    size = len(set(members))
    bound = spec.clique_bound
    if size > bound:
        raise VerificationError(f"family of size {size} exceeds the extremal bound {bound}")
    form = classify_max_clique(spec, members) if size == bound else None
    return EkrReport(size, bound, size == bound, form)


def enumerate_max_cliques(
    spec: GraphSpec, budget: int = DEFAULT_EXACT_SEARCH_BUDGET
) -> list[frozenset[Mat]]:
    """All maximum cliques, by exhaustive search; needs h**(m*n) <= budget vertices."""
    if spec.n_vertices > budget:
        raise BudgetExceededError(
            f"{spec.n_vertices} vertices exceed the exact-search budget {budget}"
        )
    g = build_graph(spec, vertex_budget=spec.n_vertices)
    masks = g.adjacency_masks(budget)
    target = spec.clique_bound
    found = oracle.enumerate_cliques_of_size(masks, target)
    # no clique can be larger, but confirm none extends (maximum = target)
    best = oracle.exact_clique(masks)
    if len(best) != target:
        raise VerificationError(f"search found a clique of size {len(best)}, expected {target}")
    return [frozenset(spec.vertex(v) for v in ids) for ids in found]


def random_clique_form(
    spec: GraphSpec, alpha: Sequence[int], rng: random.Random | int
) -> CliqueForm:
    """A random valid parameterization with the given alpha (for round-trip tests)."""
    r = random.Random(rng) if isinstance(rng, int) else rng
    ring = spec.ring
    all_zero = not any(alpha)
    all_sat = tuple(alpha) == ring.saturated
    tag = ROW_FORM if all_zero else (COL_FORM if all_sat else MIXED_FORM)
    s_mat = random_invertible(ring, spec.m, r) if tag != COL_FORM else None
    t_mat = random_invertible(ring, spec.n, r) if tag != ROW_FORM else None
    b0 = random_matrix(ring, spec.m, spec.n, r)
    return CliqueForm(spec, tag, s_mat, t_mat, tuple(alpha), b0)
