"""Rank-distance codes: extremal independent sets, colorings and clique covers.

Over a prime field the classical construction evaluates the additive
polynomials c_0 x + c_1 x^p + ... + c_{k-1} x^(p^(k-1)) (k = m - r) on a
basis of the degree-n extension field, expands the images over the base
field, and truncates to m rows.  Each nonzero polynomial has at most
p^(k-1) roots, so each nonzero codeword has rank at least m - k + 1 = r + 1,
and the code meets the size bound p^(n*(m-r)) with equality: a maximum
independent set of the low-rank-difference graph.

For prime powers the prime-field code is lifted entrywise and closed under
Z_{p**s}-linear combinations of its basis, which multiplies the size by the
right power of p while preserving the minimum distance; a Chinese remainder
product then assembles the code over Z_h.  Every construction step re-runs
an exhaustive distance verification before the code is returned, so emitted
codes never rely on the argument above.

The same codes drive the two coloring-style certificates: the cosets of the
code properly color the graph with h**(n*r) colors, and the translates of
the canonical clique by the code members partition the vertices into
h**(n*(m-r)) cliques (a clique cover of the complement), which pins down
the clique, independence and chromatic numbers exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .cliques import CanonicalCliqueSpec, build_canonical_clique
from .errors import (
    DEFAULT_PAIR_BUDGET,
    DEFAULT_VERTEX_BUDGET,
    BudgetExceededError,
    UsageError,
    VerificationError,
)
from .graph import GraphSpec
from .matrix import Mat
from .ring import RingSpec, ring_spec
from .smith import inner_rank


# --- small finite fields -------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """The field with p**n elements, as polynomials modulo a fixed irreducible.

    Elements are coefficient tuples of length n, constant term first.  The
    modulus is the lexicographically least monic irreducible of degree n
    (ordered by the tuple of coefficients from x^(n-1) down to the constant).
    """

    p: int
    n: int
    modulus: tuple[int, ...]  # length n + 1, constant first, leading 1

    @classmethod
    def default(cls, p: int, n: int) -> "FieldSpec":
        for code in range(p**n):
            digits = []
            x = code
            for _ in range(n):
                digits.append(x % p)
                x //= p
            # digits are constant-first; ascending `code` orders candidates by
            # the coefficient tuple (a_{n-1}, ..., a_0)
            candidate = tuple(digits) + (1,)
            if _poly_irreducible(p, candidate):
                return cls(p, n, candidate)
        raise VerificationError(f"no irreducible of degree {n} over F_{p}")  # unreachable

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.n

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.n - 1)

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        p, n = self.p, self.n
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the monic modulus
        for d in range(2 * n - 2, n - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j in range(n):
                    prod[d - n + j] = (prod[d - n + j] - c * self.modulus[j]) % p
        return tuple(prod[:n])

    def frobenius_power(self, a: Sequence[int], j: int) -> tuple[int, ...]:
        """a ** (p**j), by repeated p-th powers."""
        out = tuple(a)
        for _ in range(j):
            out = self._pow(out, self.p)
        return out

    def _pow(self, a: tuple[int, ...], e: int) -> tuple[int, ...]:
        out = self.one()
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def elements(self) -> Iterable[tuple[int, ...]]:
        return product(range(self.p), repeat=self.n)


def _poly_mul_mod_p(p: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_irreducible(p: int, poly: Sequence[int]) -> bool:
    """Trial division by all monic polynomials of degree up to deg(poly) // 2."""
    n = len(poly) - 1
    if n == 0:
        return False
    if poly[-1] != 1:
        return False
    for d in range(1, n // 2 + 1):
        for lower in product(range(p), repeat=d):
            divisor = list(lower) + [1]
            if _poly_divides(p, divisor, list(poly)):
                return False
    return True


def _poly_divides(p: int, divisor: list[int], poly: list[int]) -> bool:
    rem = poly[:]
    dd = len(divisor) - 1
    while len(rem) - 1 >= dd:
        lead = rem[-1]
        if lead:
            shift = len(rem) - 1 - dd
            for i, c in enumerate(divisor):
                rem[shift + i] = (rem[shift + i] - lead * c) % p
        rem.pop()
    return not any(rem)


# --- codes ---------------------------------------------------------------------


@dataclass(frozen=True)
class RankCode:
    """A set of m x n matrices with a verified minimum rank distance.

    For linear codes (closed under addition and scalar multiples) `basis`
    holds a generating set and the distance equals the minimum rank of a
    nonzero member; verify_distance re-establishes the claim exhaustively.
    """

    ring: RingSpec
    rows: int
    cols: int
    members: frozenset[Mat]
    claimed_min_distance: int
    linear: bool
    basis: tuple[Mat, ...] | None

    @property
    def size(self) -> int:
        return len(self.members)


def verify_distance(code: RankCode, pair_budget: int = DEFAULT_PAIR_BUDGET) -> float:
    """Exact minimum rank distance; +inf for a singleton code.

    Linear codes need only the nonzero members (distance = minimum nonzero
    rank); general codes take all pairs.  The work is capped by pair_budget.
    """
    members = sorted(code.members, key=lambda mat: mat.entries)
    if len(members) < 2:
        return math.inf
    best: float = math.inf
    if code.linear:
        if len(members) - 1 > pair_budget:
            raise BudgetExceededError("too many members for the distance budget")
        zero = Mat.zeros(code.ring, code.rows, code.cols)
        if zero not in code.members:
            raise VerificationError("a linear code must contain the zero matrix")
        for mem in members:
            if mem.is_zero():
                continue
            rk = inner_rank(mem)
            if rk < best:
                best = rk
    else:
        npairs = len(members) * (len(members) - 1) // 2
        if npairs > pair_budget:
            raise BudgetExceededError("too many pairs for the distance budget")
        for a, b in combinations(members, 2):
            rk = inner_rank(a - b)
            if rk < best:
                best = rk
    return best


def _checked(code: RankCode, pair_budget: int = DEFAULT_PAIR_BUDGET) -> RankCode:
    d = verify_distance(code, pair_budget)
    if len(code.members) >= 2 and d != code.claimed_min_distance:
        raise VerificationError(
            f"verified distance {d} != claimed {code.claimed_min_distance}"
        )
    return code


def gabidulin_code(field: FieldSpec, m: int, n: int, d: int) -> RankCode:
    """The evaluation code over F_p with m x n matrices and distance exactly d.

    Needs 1 <= d <= m <= n = field.n.  Messages are coefficient vectors
    (c_0, ..., c_{k-1}) over the extension field with k = m - d + 1; the
    codeword is the matrix of x -> sum c_j x^(p**j) restricted to the first
    m coordinates.  The result carries p**(n*k) members and is linear over
    the prime field.
    """
    if n != field.n:
        raise UsageError("n must equal the extension degree of the field")
    if not 1 <= d <= m <= n:
        raise UsageError(f"need 1 <= d <= m <= n, got d={d}, m={m}, n={n}")
    p = field.p
    k = m - d + 1
    ring = ring_spec(p)

    # images of the polynomial basis under each q-power: frob[j][l] = (x^l)^(p^j)
    basis_elems = [tuple(1 if i == l else 0 for i in range(n)) for l in range(n)]
    frob = [[field.frobenius_power(b, j) for b in basis_elems] for j in range(k)]

    def codeword(message: Sequence[tuple[int, ...]]) -> Mat:
        cols = []
        for l in range(n):
            acc = field.zero()
            for j, c in enumerate(message):
                acc = field.add(acc, field.mul(c, frob[j][l]))
            cols.append(acc)
        ents = tuple(cols[l][i] for i in range(m) for l in range(n))
        return Mat(ring, m, n, ents)

    members = []
    for message in product(field.elements(), repeat=k):
        members.append(codeword(message))
    basis = []
    for j in range(k):
        for e in range(n):
            msg = [field.zero()] * k
            msg[j] = tuple(1 if i == e else 0 for i in range(n))
            basis.append(codeword(msg))
    code = RankCode(ring, m, n, frozenset(members), d, True, tuple(basis))
    if code.size != p ** (n * k):
        raise VerificationError("evaluation map is not injective")
    return _checked(code)


def lift_code(code: RankCode, s: int, pair_budget: int = DEFAULT_PAIR_BUDGET) -> RankCode:
    """Close the integer lift of a prime-field linear code under Z_{p**s} combinations.

    The lifted code has size p**(s * len(basis)) and the same minimum
    distance: ranks never drop under the lift because a codeword with unit
    content reduces mod p to a nonzero member of the original code, and any
    p-divisible member is a p-multiple of a lifted one.  The claim is still
    re-verified exhaustively before the code is returned.
    """
    if not code.linear or code.basis is None:
        raise UsageError("only linear codes with a basis can be lifted")
    if code.ring.t != 1 or code.ring.primes[0][1] != 1:
        raise UsageError("lift starts from a code over a prime field")
    p = code.ring.primes[0][0]
    ring = ring_spec(p**s)
    h = ring.h
    basis = [Mat(ring, b.rows, b.cols, b.entries) for b in code.basis]
    members: set[Mat] = set()
    for coeffs in product(range(h), repeat=len(basis)):
        acc = [0] * (code.rows * code.cols)
        for c, b in zip(coeffs, basis):
            if c:
                for i, v in enumerate(b.entries):
                    acc[i] += c * v
        members.add(Mat(ring, code.rows, code.cols, tuple(v % h for v in acc)))
    lifted = RankCode(
        ring, code.rows, code.cols, frozenset(members),
        code.claimed_min_distance, True, tuple(basis),
    )
    if lifted.size != p ** (s * len(basis)):
        raise VerificationError("lift collapsed some combinations")
    return _checked(lifted, pair_budget)


def crt_combine(codes: Sequence[RankCode], pair_budget: int = DEFAULT_PAIR_BUDGET) -> RankCode:
    """Entrywise Chinese remainder product of codes over coprime prime powers."""
    if not codes:
        raise UsageError("no codes to combine")
    dims = {(c.rows, c.cols) for c in codes}
    dists = {c.claimed_min_distance for c in codes}
    if len(dims) != 1 or len(dists) != 1:
        raise UsageError("codes must share dimensions and claimed distance")
    h = 1
    for c in codes:
        if c.ring.t != 1:
            raise UsageError("components must be prime-power codes")
        h *= c.ring.h
    ring = ring_spec(h)
    if ring.prime_powers != tuple(c.ring.h for c in codes):
        raise UsageError("component moduli must be the ordered prime powers of their product")
    (rows, cols), = dims
    members = []
    for combo in product(*(sorted(c.members, key=lambda mat: mat.entries) for c in codes)):
        ents = tuple(
            ring.crt([mat.entries[i] for mat in combo]) for i in range(rows * cols)
        )
        members.append(Mat(ring, rows, cols, ents))
    linear = all(c.linear for c in codes)
    basis: tuple[Mat, ...] | None = None
    if linear:
        out = []
        for i, c in enumerate(codes):
            assert c.basis is not None
            for b in c.basis:
                comps = [
                    b.entries if j == i else (0,) * (rows * cols) for j in range(len(codes))
                ]
                ents = tuple(ring.crt([comp[e] for comp in comps]) for e in range(rows * cols))
                out.append(Mat(ring, rows, cols, ents))
        basis = tuple(out)
    combined = RankCode(
        ring, rows, cols, frozenset(members), dists.pop(), linear, basis
    )
    expected = 1
    for c in codes:
        expected *= c.size
    if combined.size != expected:
        raise VerificationError("CRT product lost members")
    return _checked(combined, pair_budget)


def mrd_code(spec: GraphSpec, pair_budget: int = DEFAULT_PAIR_BUDGET) -> RankCode:
    """A verified code over Z_h of size h**(n*(m-r)) with minimum distance r + 1.

    Per prime: evaluation code over F_p, lifted to Z_{p**s}; the components
    are then CRT-combined.  For r = m the code degenerates to {0}.
    """
    ring = spec.ring
    m, n, r = spec.m, spec.n, spec.r
    comps = []
    for (p, s), q in zip(ring.primes, ring.prime_powers):
        field = FieldSpec.default(p, n)
        base = gabidulin_code(field, m, n, r + 1)
        comps.append(lift_code(base, s, pair_budget) if s > 1 else base)
    code = comps[0] if len(comps) == 1 else crt_combine(comps, pair_budget)
    if code.size != spec.independence_bound:
        raise VerificationError(
            f"code size {code.size} != h^(n(m-r)) = {spec.independence_bound}"
        )
    return code


def independent_set_from_code(spec: GraphSpec, pair_budget: int = DEFAULT_PAIR_BUDGET) -> frozenset[Mat]:
    """A maximum independent set of the graph: the members of a verified code.

    Members pairwise differ by rank >= r + 1, so no two are adjacent, and the
    cardinality h**(n*(m-r)) meets the independence number exactly.
    """
    return mrd_code(spec, pair_budget).members


# --- colorings and covers ---------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    """A proper coloring by cosets of a code; colors[v] is the color of vertex id v."""

    spec: GraphSpec
    colors: tuple[int, ...]
    n_colors: int
    verification: str  # "edges" (every edge checked) or "structural"

    def is_proper_on(self, u: int, v: int) -> bool:
        return self.colors[u] != self.colors[v]


def color_graph(
    spec: GraphSpec,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    sample_seed: int = 0,
    samples: int = 1000,
) -> Coloring:
    """Color the graph with h**(n*r) colors: the cosets of a verified code.

    Two vertices share a color exactly when their difference lies in the
    code, and every nonzero code member has rank > r, so no edge is
    monochromatic.  Within the vertex budget this is verified on every edge;
    above it the verified code distance stands as the certificate and a
    seeded sample of vertex pairs is checked explicitly.
    """
    import random

    code = mrd_code(spec)
    nv = spec.n_vertices
    member_ids = sorted(spec.vertex_id(mem) for mem in code.members)
    member_ents = [spec.vertex_entries(i) for i in member_ids]
    h = spec.ring.h

    colors = [-1] * nv
    n_colors = 0
    for v in range(nv):
        if colors[v] >= 0:
            continue
        ev = spec.vertex_entries(v)
        for ents in member_ents:
            w = spec.vertex_id(tuple((a + b) % h for a, b in zip(ev, ents)))
            colors[w] = n_colors
        n_colors += 1

    if n_colors != spec.clique_bound:
        raise VerificationError(f"coset count {n_colors} != h^(n r) = {spec.clique_bound}")

    if nv <= vertex_budget:
        from .graph import build_graph

        g = build_graph(spec, vertex_budget)
        conn = g.connection_ids
        ents_all = [spec.vertex_entries(i) for i in range(nv)]
        for u in range(nv):
            eu = ents_all[u]
            cu = colors[u]
            for cid in conn:
                ec = ents_all[cid]
                w = spec.vertex_id(tuple((a + b) % h for a, b in zip(eu, ec)))
                if colors[w] == cu:
                    raise VerificationError(f"edge ({u}, {w}) is monochromatic")
        verification = "edges"
    else:
        rng = random.Random(sample_seed)
        from .graph import adjacent

        for _ in range(samples):
            u = rng.randrange(nv)
            v = rng.randrange(nv)
            if u == v:
                continue
            if adjacent(spec, spec.vertex(u), spec.vertex(v)) and colors[u] == colors[v]:
                raise VerificationError(f"sampled edge ({u}, {v}) is monochromatic")
        verification = "structural"
    return Coloring(spec, tuple(colors), n_colors, verification)


@dataclass(frozen=True)
class CliqueCover:
    """A partition of the vertices into h**(n*(m-r)) cliques of size h**(n*r).

    Each part is a translate of the canonical clique by a code member; the
    verified code distance keeps distinct translates disjoint.  This is a
    clique cover of the graph, i.e. a proper coloring of its complement
    with as many colors as the complement's clique number, pinning the
    complement's chromatic number.
    """

    spec: GraphSpec
    parts: tuple[frozenset[Mat], ...]


def clique_cover_complement(
    spec: GraphSpec,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    check_parts_are_cliques: bool = True,
) -> CliqueCover:
    """Partition all vertices into translates of the canonical clique by code members."""
    nv = spec.n_vertices
    if nv > vertex_budget:
        raise BudgetExceededError(f"{nv} vertices exceed the budget {vertex_budget}")
    code = mrd_code(spec)
    base = build_canonical_clique(CanonicalCliqueSpec(spec, (0,) * spec.ring.t))
    parts = []
    seen: set[int] = set()
    for mem in sorted(code.members, key=lambda mat: mat.entries):
        part = frozenset(mem + x for x in base)
        ids = {spec.vertex_id(mat) for mat in part}
        if len(part) != len(base) or seen & ids:
            raise VerificationError("translates are not pairwise disjoint")
        seen |= ids
        parts.append(part)
    if len(seen) != nv:
        raise VerificationError("translates do not cover every vertex")
    if check_parts_are_cliques:
        from .cliques import is_clique

        for part in parts:
            if not is_clique(spec, part):
                raise VerificationError("a translate failed the pairwise rank check")
    return CliqueCover(spec, tuple(parts))


@dataclass(frozen=True)
class GraphCertificate:
    """Constructively certified clique, independence and chromatic numbers.

    A clique of size h**(n*r) gives omega >= that; a coloring with h**(n*r)
    colors gives chi <= that; a code of size h**(n*(m-r)) gives alpha >=
    that.  Vertex-transitivity gives chi >= |V| / alpha >= omega, and
    |V| = alpha_bound * omega_bound closes the chain, so all three are
    pinned exactly.
    """

    spec: GraphSpec
    clique_size: int
    code_size: int
    code_distance: float
    coloring_colors: int
    coloring_verification: str

    @property
    def omega(self) -> int:
        return self.spec.clique_bound

    @property
    def alpha(self) -> int:
        return self.spec.independence_bound

    @property
    def chi(self) -> int:
        return self.spec.clique_bound


def certify_graph_parameters(spec: GraphSpec, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> GraphCertificate:
    """Build and verify the three certificates; raise if any bound fails."""
    from .cliques import is_clique

    clique = build_canonical_clique(CanonicalCliqueSpec(spec, (0,) * spec.ring.t))
    if len(clique) != spec.clique_bound:
        raise VerificationError("canonical clique has the wrong size")
    if not is_clique(spec, clique):
        raise VerificationError("canonical clique is not a clique")
    code = mrd_code(spec)
    dist = verify_distance(code)
    if dist <= spec.r:
        raise VerificationError("code distance does not clear the adjacency radius")
    coloring = color_graph(spec, vertex_budget)
    return GraphCertificate(
        spec, len(clique), code.size, dist, coloring.n_colors, coloring.verification
    )
