"""Smith normal form and inner rank over residue class rings.

Over a prime-power ring Z_{p**s} every matrix A has a diagonalization
U A V = diag(p**a_1, ..., p**a_k) with U, V invertible and nondecreasing
exponents a_1 <= ... <= a_k capped at s; the exponents are invariants of
the equivalence class of A.  Over a general Z_h the form is computed per
prime-power component and the transforms are glued back with the Chinese
remainder map, after normalizing each diagonal entry to the canonical
generator prod_i(p_i ** a_ic) of its ideal by absorbing residual units
into the row transform.

The exponent table omega (one row per prime) classifies matrices up to
equivalence, and the inner rank of A - the least r such that A factors
through r columns - is the number of omega columns that are not fully
saturated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import ShapeError, UsageError, VerificationError
from .matrix import Mat, crt_lift_mat
from .ring import RingSpec


@dataclass(frozen=True)
class InvariantFactorArray:
    """Exponent table omega: row i lists the exponents of p_i along the diagonal.

    Rows are nondecreasing and bounded by s_i; all rows have length
    min(rows, cols) of the matrix they describe.
    """

    ring: RingSpec
    omega: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.omega) != self.ring.t:
            raise UsageError("omega must have one row per prime component")
        widths = {len(row) for row in self.omega}
        if len(widths) != 1:
            raise UsageError("omega rows must have equal length")
        for row, (_, s) in zip(self.omega, self.ring.primes):
            if any(not 0 <= a <= s for a in row):
                raise VerificationError(f"omega row {row} out of range for exponent bound {s}")
            if any(row[c] > row[c + 1] for c in range(len(row) - 1)):
                raise VerificationError(f"omega row {row} is not nondecreasing")

    @property
    def width(self) -> int:
        return len(self.omega[0])

    @property
    def inner_rank(self) -> int:
        """Number of diagonal positions whose ideal is not the zero ideal."""
        sat = self.ring.saturated
        return sum(
            1
            for c in range(self.width)
            if any(row[c] < s for row, s in zip(self.omega, sat))
        )

    def diagonal_values(self) -> tuple[int, ...]:
        """Canonical diagonal entries prod_i(p_i ** omega[i][c]) mod h."""
        h = self.ring.h
        out = []
        for c in range(self.width):
            g = 1
            for (p, _), row in zip(self.ring.primes, self.omega):
                g *= p ** row[c]
            out.append(g % h)
        return tuple(out)


@dataclass(frozen=True)
class SmithForm:
    """A factorization A = S @ D @ T with S, T invertible and canonical diagonal D."""

    S: Mat
    D: Mat
    T: Mat
    omega: InvariantFactorArray

    @property
    def inner_rank(self) -> int:
        return self.omega.inner_rank


class RankProjections(NamedTuple):
    via_pi: int
    via_theta: int


# --- prime-power kernel ------------------------------------------------------
#
# Flat row-major lists of ints; pivot selection takes the minimum-valuation
# entry of the trailing block, ties broken by lowest (row, col).  The pivot
# row is scaled by the inverse of the pivot's unit part so the pivot becomes
# exactly p**a, after which every remaining entry in its row and column is an
# exact multiple and is cleared without division by zero divisors.


def _pp_smith(
    p: int, s: int, q: int, m: int, n: int, entries: tuple[int, ...], transforms: bool
) -> tuple[tuple[int, ...], tuple[int, ...] | None, tuple[int, ...] | None, tuple[int, ...] | None, tuple[int, ...] | None]:
    """Diagonalize over Z_{p**s}: returns (alpha, U, Uinv, V, Vinv), flat row-major.

    U @ A @ V = diag(p**alpha) and A = Uinv @ diag(p**alpha) @ Vinv.  The
    transform slots are None unless transforms is True.
    """
    a = list(entries)
    k = min(m, n)
    alpha = [s] * k
    if transforms:
        U = [1 if i == j else 0 for i in range(m) for j in range(m)]
        Ui = list(U)
        V = [1 if i == j else 0 for i in range(n) for j in range(n)]
        Vi = list(V)
    else:
        U = Ui = V = Vi = None

    for d in range(k):
        best_v, bi, bj = s, -1, -1
        for i in range(d, m):
            base = i * n
            for j in range(d, n):
                x = a[base + j]
                if x:
                    v = 0
                    while x % p == 0:
                        x //= p
                        v += 1
                    if v < best_v:
                        best_v, bi, bj = v, i, j
                        if v == 0:
                            break
            if best_v == 0:
                break
        if bi < 0:
            break  # trailing block is zero; remaining exponents stay at s
        alpha[d] = best_v

        if bi != d:
            for j in range(n):
                a[d * n + j], a[bi * n + j] = a[bi * n + j], a[d * n + j]
            if transforms:
                for j in range(m):
                    U[d * m + j], U[bi * m + j] = U[bi * m + j], U[d * m + j]
                for i in range(m):
                    Ui[i * m + d], Ui[i * m + bi] = Ui[i * m + bi], Ui[i * m + d]
        if bj != d:
            for i in range(m):
                a[i * n + d], a[i * n + bj] = a[i * n + bj], a[i * n + d]
            if transforms:
                for i in range(n):
                    V[i * n + d], V[i * n + bj] = V[i * n + bj], V[i * n + d]
                for j in range(n):
                    Vi[d * n + j], Vi[bj * n + j] = Vi[bj * n + j], Vi[d * n + j]

        pa = p**best_v
        u = a[d * n + d] // pa
        if u != 1:
            uinv = pow(u, -1, q)
            for j in range(d, n):
                a[d * n + j] = a[d * n + j] * uinv % q
            if transforms:
                for j in range(m):
                    U[d * m + j] = U[d * m + j] * uinv % q
                for i in range(m):
                    Ui[i * m + d] = Ui[i * m + d] * u % q

        # clear the column below the pivot: row_i -= c * row_d
        for i in range(d + 1, m):
            x = a[i * n + d]
            if x:
                c = x // pa
                for j in range(d, n):
                    a[i * n + j] = (a[i * n + j] - c * a[d * n + j]) % q
                if transforms:
                    for j in range(m):
                        U[i * m + j] = (U[i * m + j] - c * U[d * m + j]) % q
                    for r0 in range(m):
                        Ui[r0 * m + d] = (Ui[r0 * m + d] + c * Ui[r0 * m + i]) % q

        # clear the row right of the pivot: col_j -= c * col_d.  Column d is
        # zero off the pivot by now, so only the (d, j) entries change.
        for j in range(d + 1, n):
            x = a[d * n + j]
            if x:
                c = x // pa
                a[d * n + j] = 0
                if transforms:
                    for i in range(n):
                        V[i * n + j] = (V[i * n + j] - c * V[i * n + d]) % q
                    for j0 in range(n):
                        Vi[d * n + j0] = (Vi[d * n + j0] + c * Vi[j * n + j0]) % q

    to_t = tuple if transforms else (lambda _x: None)
    return tuple(alpha), to_t(U), to_t(Ui), to_t(V), to_t(Vi)


@lru_cache(maxsize=None)
def _pp_smith_cached(p, s, q, m, n, entries, transforms):
    return _pp_smith(p, s, q, m, n, entries, transforms)


@lru_cache(maxsize=None)
def _pp_exponents(p, s, q, m, n, entries):
    return _pp_smith(p, s, q, m, n, entries, False)[0]


def clear_kernel_caches() -> None:
    _pp_smith_cached.cache_clear()
    _pp_exponents.cache_clear()


def _component_exponents(a: Mat) -> tuple[tuple[int, ...], ...]:
    """Per-prime exponent rows of a, via the cached kernel on each projection."""
    ring = a.ring
    out = []
    for (p, s), q in zip(ring.primes, ring.prime_powers):
        proj = tuple(v % q for v in a.entries)
        out.append(_pp_exponents(p, s, q, a.rows, a.cols, proj))
    return tuple(out)


def invariant_factors(a: Mat) -> InvariantFactorArray:
    """The exponent table omega of a, without computing transforms."""
    return InvariantFactorArray(a.ring, _component_exponents(a))


def snf_prime_power(a: Mat) -> SmithForm:
    """Smith normal form over a prime-power ring (t = 1)."""
    ring = a.ring
    if ring.t != 1:
        raise UsageError(f"{ring} is not a prime-power ring")
    return snf(a)


def snf(a: Mat) -> SmithForm:
    """Smith normal form A = S @ D @ T over Z_h.

    D is diagonal with entry c equal to prod_i(p_i ** omega[i][c]) reduced
    mod h, the canonical generator of its ideal; S and T are invertible but
    not unique.  For rows > cols the form is computed on the transpose and
    transposed back.
    """
    if a.rows > a.cols:
        f = snf(a.transpose())
        omega = f.omega
        return SmithForm(f.T.transpose(), f.D.transpose(), f.S.transpose(), omega)

    ring = a.ring
    m, n = a.rows, a.cols
    k = m  # min(m, n)
    alphas: list[tuple[int, ...]] = []
    uinvs: list[Mat] = []
    vinvs: list[Mat] = []
    for i, ((p, s), q) in enumerate(zip(ring.primes, ring.prime_powers)):
        proj = tuple(v % q for v in a.entries)
        alpha, _U, Ui, _V, Vi = _pp_smith_cached(p, s, q, m, n, proj, True)
        comp = ring.component(i)
        alphas.append(alpha)
        uinvs.append(Mat(comp, m, m, Ui))
        vinvs.append(Mat(comp, n, n, Vi))

    omega = InvariantFactorArray(ring, tuple(alphas))
    S = crt_lift_mat(ring, uinvs)
    T = crt_lift_mat(ring, vinvs)

    # The glued transforms satisfy A = S @ diag(d_c) @ T where d_c is the CRT
    # lift of the p_i ** alpha_ic.  Rescale the columns of S to trade d_c for
    # the canonical generator g_c = prod_i(p_i ** alpha_ic): g_c = w_c * d_c
    # for the unit w_c built componentwise below.
    diag = omega.diagonal_values()
    scol = list(S.entries)
    h = ring.h
    for c in range(k):
        g_int = 1
        for (p, _), row in zip(ring.primes, omega.omega):
            g_int *= p ** row[c]
        w = ring.crt([(g_int // (p ** row[c])) % q
                      for (p, _), q, row in zip(ring.primes, ring.prime_powers, omega.omega)])
        winv = pow(w, -1, h)
        if winv != 1:
            for r0 in range(m):
                scol[r0 * m + c] = scol[r0 * m + c] * winv % h
    S = Mat(ring, m, m, tuple(scol))
    D = Mat.diagonal(ring, diag, m, n)
    return SmithForm(S, D, T, omega)


def inner_rank(a: Mat) -> int:
    """Least r such that a = B @ C with B of width r; read off the omega table."""
    sat = a.ring.saturated
    rows = _component_exponents(a)
    return max(sum(1 for x in row if x < s) for row, s in zip(rows, sat)) if rows else 0


def rank_via_projections(a: Mat) -> RankProjections:
    """Inner rank computed two redundant ways: over components and over cofactor quotients.

    via_pi is the maximum inner rank of the prime-power projections;
    via_theta the maximum over the complementary quotients.  For t = 1 the
    quotient route degenerates and via_theta is defined as via_pi.
    """
    ring = a.ring
    via_pi = max(
        sum(1 for x in row if x < s)
        for row, (_, s) in zip(_component_exponents(a), ring.primes)
    )
    if ring.t == 1:
        return RankProjections(via_pi, via_pi)
    via_theta = max(inner_rank(a.coproject(i)) for i in range(ring.t))
    return RankProjections(via_pi, via_theta)


def verify_smith_form(a: Mat, f: SmithForm) -> None:
    """Raise VerificationError unless f is a valid Smith form of a."""
    if f.S @ f.D @ f.T != a:
        raise VerificationError("S @ D @ T does not reproduce the input")
    if not f.S.is_invertible():
        raise VerificationError("S is not invertible")
    if not f.T.is_invertible():
        raise VerificationError("T is not invertible")
    if f.D != Mat.diagonal(a.ring, f.omega.diagonal_values(), a.rows, a.cols):
        raise VerificationError("D does not match the omega table")
