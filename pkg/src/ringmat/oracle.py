"""Independent verification oracles.

Everything here recomputes quantities that the main modules produce by
faster or more structured algorithms, using deliberately different and
simpler methods: exponent tables from valuations of integer minors,
inner rank by brute-force search over factorizations, and exact clique /
independent-set numbers by branch-and-bound over bitset adjacency.  This
module must stay independent of the smith / graph implementations it is
used to check, so it imports only the ring and matrix layers.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Sequence

from .errors import BudgetExceededError, UsageError
from .matrix import Mat

_INF = float("inf")

DEFAULT_FACTOR_SEARCH_BUDGET = 4 * 10**6
MAX_MINOR_SIZE = 4


def _det_cofactor(rows: list[list[int]]) -> int:
    """Integer determinant by cofactor expansion along the first row."""
    k = len(rows)
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j, head in enumerate(rows[0]):
        if head == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = head * _det_cofactor(minor)
        total += term if j % 2 == 0 else -term
    return total


def _valuation(p: int, x: int) -> float:
    if x == 0:
        return _INF
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def omega_via_minors(a: Mat) -> tuple[tuple[int, ...], ...]:
    """Recover the exponent table of a from valuations of integer minors.

    For each prime component, raw_k is the least p-adic valuation over all
    k x k minors of the canonical integer lift.  Because exponents live in
    Z_{p**s}, the k-th cumulative exponent is the minimum of j*s + raw_{k-j}
    over 0 <= j <= k (equivalently: the k-th determinantal divisor of the
    integer lift augmented by p**s times the identity, which presents the
    same module); raw_k alone over-counts once valuations pass s.  The row
    of exponents is then the difference sequence of the cumulative values.
    """
    m, n = a.rows, a.cols
    k_max = min(m, n)
    if k_max > MAX_MINOR_SIZE:
        raise UsageError(f"minor oracle supports min(m, n) <= {MAX_MINOR_SIZE}")
    ring = a.ring
    out = []
    for (p, s), q in zip(ring.primes, ring.prime_powers):
        lift = [[v % q for v in a.row(i)] for i in range(m)]
        raw: list[float] = [0.0]
        for k in range(1, k_max + 1):
            best = _INF
            for rows_idx in combinations(range(m), k):
                for cols_idx in combinations(range(n), k):
                    sub = [[lift[i][j] for j in cols_idx] for i in rows_idx]
                    v = _valuation(p, _det_cofactor(sub))
                    if v < best:
                        best = v
                        if best == 0:
                            break
                if best == 0:
                    break
            raw.append(best)
        cumulative = [0]
        for k in range(1, k_max + 1):
            d = min(j * s + raw[k - j] for j in range(k + 1))
            cumulative.append(int(d))
        out.append(tuple(cumulative[k] - cumulative[k - 1] for k in range(1, k_max + 1)))
    return tuple(out)


def inner_rank_by_factorization(a: Mat, budget: int = DEFAULT_FACTOR_SEARCH_BUDGET) -> int:
    """Least r with a = B @ C for some m x r and r x n matrices, by exhaustive search.

    r = min(m, n) always works (identity factorization), so only smaller r
    are searched; the search over (B, C) pairs for one r costs h**((m+n)*r)
    candidate pairs and is capped by the budget.
    """
    if a.is_zero():
        return 0
    m, n = a.rows, a.cols
    h = a.ring.h
    ring = a.ring
    for r in range(1, min(m, n)):
        pairs = h ** ((m + n) * r)
        if pairs > budget:
            raise BudgetExceededError(
                f"factorization search for rank {r} needs {pairs} candidate pairs (budget {budget})"
            )
        for b_entries in product(range(h), repeat=m * r):
            b = Mat(ring, m, r, b_entries)
            for c_entries in product(range(h), repeat=r * n):
                if (b @ Mat(ring, r, n, c_entries)) == a:
                    return r
    return min(m, n)


# --- exact clique / independent set -------------------------------------------
#
# Branch and bound in the style of Tomita: candidates are greedily colored,
# vertices are expanded in reverse color order, and a branch is pruned when
# the current clique plus its color bound cannot beat the incumbent.  All
# choices are deterministic, so results are reproducible.


def _greedy_color_order(cand: int, masks: Sequence[int]) -> tuple[list[int], list[int]]:
    order: list[int] = []
    bounds: list[int] = []
    color = 0
    rest = cand
    while rest:
        color += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~(1 << v)
            avail &= ~masks[v]
            rest &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def exact_clique(masks: Sequence[int], budget: int = 10**9) -> list[int]:
    """A maximum clique of the graph given by bitset adjacency rows.

    masks[v] has bit w set iff v and w are adjacent; rows must be symmetric
    and irreflexive.  Returns the vertex list of one maximum clique; the
    deterministic search makes the returned witness reproducible.
    """
    n = len(masks)
    if n == 0:
        return []
    # order vertices by degree (desc) then index (asc) for a stable search
    best: list[int] = []
    steps = 0

    def expand(clique: list[int], cand: int) -> None:
        nonlocal best, steps
        steps += 1
        if steps > budget:
            raise BudgetExceededError("clique search exceeded its step budget")
        order, bounds = _greedy_color_order(cand, masks)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[i] <= len(best):
                return
            v = order[i]
            clique.append(v)
            nxt = cand & masks[v]
            if nxt:
                expand(clique, nxt)
            elif len(clique) > len(best):
                best = clique[:]
            clique.pop()
            cand &= ~(1 << v)

    start = (1 << n) - 1
    expand([], start)
    return sorted(best)


def exact_mis(masks: Sequence[int], budget: int = 10**9) -> list[int]:
    """A maximum independent set: a maximum clique of the complement."""
    n = len(masks)
    full = (1 << n) - 1
    comp = [full & ~masks[v] & ~(1 << v) for v in range(n)]
    return exact_clique(comp, budget)


def enumerate_cliques_of_size(masks: Sequence[int], size: int) -> list[tuple[int, ...]]:
    """All cliques with exactly `size` vertices, as sorted vertex tuples.

    Plain ordered extension with a popcount prune; fine for the small graphs
    this package enumerates exhaustively.
    """
    n = len(masks)
    out: list[tuple[int, ...]] = []
    if size == 0:
        return [()]

    def extend(clique: list[int], cand: int) -> None:
        need = size - len(clique)
        if need == 0:
            out.append(tuple(clique))
            return
        while cand:
            if bin(cand).count("1") < need:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            clique.append(v)
            extend(clique, cand & masks[v])
            clique.pop()

    extend([], (1 << n) - 1)
    return out
