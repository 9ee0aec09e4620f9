"""Dense matrices over a residue class ring.

Entries are canonical residues stored as a flat row-major tuple of plain
ints, so matrices are hashable and exact.  Determinants are computed per
prime-power component by fraction-free elimination on integer lifts and
glued with the Chinese remainder map; a matrix is invertible exactly when
its determinant is a unit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotInvertibleError, ShapeError, UsageError
from .ring import RingSpec

Rows = Sequence[Sequence[int]]


@dataclass(frozen=True)
class Mat:
    ring: RingSpec
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ShapeError(f"dimensions must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError("entry count does not match dimensions")
        h = self.ring.h
        if any(not 0 <= v < h for v in self.entries):
            raise UsageError(f"entries must be canonical residues in [0, {h})")

    # --- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Rows) -> "Mat":
        m = len(rows)
        if m == 0 or len(set(len(r) for r in rows)) != 1:
            raise ShapeError("rows must be nonempty and of equal length")
        n = len(rows[0])
        h = ring.h
        return cls(ring, m, n, tuple(v % h for row in rows for v in row))

    @classmethod
    def zeros(cls, ring: RingSpec, rows: int, cols: int) -> "Mat":
        return cls(ring, rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "Mat":
        e = [0] * (n * n)
        for i in range(n):
            e[i * n + i] = 1 % ring.h
        return cls(ring, n, n, tuple(e))

    @classmethod
    def diagonal(cls, ring: RingSpec, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "Mat":
        k = len(values)
        m = rows if rows is not None else k
        n = cols if cols is not None else k
        if k > min(m, n):
            raise ShapeError("too many diagonal values")
        e = [0] * (m * n)
        for i, v in enumerate(values):
            e[i * n + i] = v % ring.h
        return cls(ring, m, n, tuple(e))

    # --- access --------------------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(v) for v in self.row(i)) for i in range(self.rows)) + f"] over {self.ring}"

    # --- arithmetic ------------------------------------------------------------

    def _same_ring(self, other: "Mat") -> None:
        if self.ring != other.ring:
            raise ShapeError(f"mixed rings: {self.ring} and {other.ring}")

    def __add__(self, other: "Mat") -> "Mat":
        self._same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("dimension mismatch in addition")
        h = self.ring.h
        return Mat(self.ring, self.rows, self.cols,
                   tuple((a + b) % h for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("dimension mismatch in subtraction")
        h = self.ring.h
        return Mat(self.ring, self.rows, self.cols,
                   tuple((a - b) % h for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Mat":
        h = self.ring.h
        return Mat(self.ring, self.rows, self.cols, tuple(-a % h for a in self.entries))

    def __matmul__(self, other: "Mat") -> "Mat":
        self._same_ring(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        m, k, n = self.rows, self.cols, other.cols
        h = self.ring.h
        a, b = self.entries, other.entries
        out = [0] * (m * n)
        for i in range(m):
            arow = a[i * k : (i + 1) * k]
            base = i * n
            for j in range(n):
                acc = 0
                for x in range(k):
                    acc += arow[x] * b[x * n + j]
                out[base + j] = acc % h
        return Mat(self.ring, m, n, tuple(out))

    def scale(self, c: int) -> "Mat":
        h = self.ring.h
        return Mat(self.ring, self.rows, self.cols, tuple(c * a % h for a in self.entries))

    def transpose(self) -> "Mat":
        m, n = self.rows, self.cols
        e = self.entries
        return Mat(self.ring, n, m, tuple(e[i * n + j] for j in range(n) for i in range(m)))

    # --- determinant and inverses -----------------------------------------------

    def det(self) -> int:
        """Determinant, via exact integer elimination per component and CRT."""
        if self.rows != self.cols:
            raise ShapeError("determinant needs a square matrix")
        ring = self.ring
        residues = []
        for q in ring.prime_powers:
            lift = [[v % q for v in self.row(i)] for i in range(self.rows)]
            residues.append(_det_bareiss(lift) % q)
        return ring.crt(residues)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.ring.is_unit(self.det())

    def inverse(self) -> "Mat":
        """Two-sided inverse, found by Gauss-Jordan per prime-power component.

        Over a prime-power ring every invertible matrix admits a unit pivot
        in each elimination column, so the sweep either completes or proves
        the matrix singular.
        """
        if self.rows != self.cols:
            raise ShapeError("inverse needs a square matrix")
        ring = self.ring
        comps = []
        for i in range(ring.t):
            p, _ = ring.primes[i]
            q = ring.prime_powers[i]
            comps.append(_invert_mod_prime_power(p, q, self.rows, [v % q for v in self.entries]))
        h = ring.h
        n = self.rows
        ents = tuple(ring.crt([c[k] for c in comps]) for k in range(n * n))
        return Mat(ring, n, n, ents)

    # --- component transport -------------------------------------------------------

    def project(self, i: int) -> "Mat":
        """Entrywise image in the i-th prime-power component ring (0-based)."""
        q = self.ring.prime_powers[i]
        return Mat(self.ring.component(i), self.rows, self.cols, tuple(v % q for v in self.entries))

    def coproject(self, i: int) -> "Mat":
        """Entrywise image in the complementary quotient ring (0-based)."""
        hq = self.ring.cofactors[i]
        return Mat(self.ring.cofactor_ring(i), self.rows, self.cols, tuple(v % hq for v in self.entries))


def project_mat(a: Mat, i: int) -> Mat:
    return a.project(i)


def coproject_mat(a: Mat, i: int) -> Mat:
    return a.coproject(i)


def crt_lift_mat(ring: RingSpec, components: Sequence[Mat]) -> Mat:
    """Entrywise Chinese remainder lift of one matrix per component of ring."""
    if len(components) != ring.t:
        raise UsageError(f"expected {ring.t} component matrices, got {len(components)}")
    dims = {(c.rows, c.cols) for c in components}
    if len(dims) != 1:
        raise ShapeError("component dimensions differ")
    for i, c in enumerate(components):
        if c.ring.h != ring.prime_powers[i]:
            raise UsageError(f"component {i} lives over {c.ring}, expected Z_{ring.prime_powers[i]}")
    (m, n), = dims
    ents = tuple(ring.crt([c.entries[k] for c in components]) for k in range(m * n))
    return Mat(ring, m, n, ents)


@dataclass(frozen=True)
class InvertiblePair:
    """A pair (S, T) of invertible matrices, checked at construction."""

    S: Mat
    T: Mat

    def __post_init__(self) -> None:
        if not self.S.is_invertible():
            raise NotInvertibleError("S is not invertible")
        if not self.T.is_invertible():
            raise NotInvertibleError("T is not invertible")


def random_matrix(ring: RingSpec, rows: int, cols: int, rng: random.Random | int) -> Mat:
    """Uniform random matrix; rng may be a seed or a random.Random instance."""
    r = random.Random(rng) if isinstance(rng, int) else rng
    h = ring.h
    return Mat(ring, rows, cols, tuple(r.randrange(h) for _ in range(rows * cols)))

def random_invertible(ring: RingSpec, n: int, rng: random.Random | int, max_tries: int = 10000) -> Mat:
    """Uniform random invertible matrix by rejection sampling.

    The acceptance rate is the GL density prod_i |GL_n(Z_{q_i})| / q_i^{n^2},
    which is bounded away from zero for fixed n, so rejection terminates
    quickly in practice; max_tries is a hard stop for safety.
    """
    r = random.Random(rng) if isinstance(rng, int) else rng
    for _ in range(max_tries):
        a = random_matrix(ring, n, n, r)
        if a.is_invertible():
            return a
    raise UsageError("failed to sample an invertible matrix")


# --- kernels -----------------------------------------------------------------


def _det_bareiss(a: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            arow = a[i]
            krow = a[k]
            for j in range(k + 1, n):
                arow[j] = (arow[j] * akk - aik * krow[j]) // prev
            arow[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def _invert_mod_prime_power(p: int, q: int, n: int, entries: list[int]) -> list[int]:
    """Inverse of an n x n matrix mod q = p ** s, flat row-major, or raise."""
    a = [entries[i * n : (i + 1) * n] + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    w = 2 * n
    for col in range(n):
        piv = -1
        for i in range(col, n):
            if a[i][col] % p:
                piv = i
                break
        if piv < 0:
            raise NotInvertibleError(f"matrix is singular mod {q}")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, q)
        a[col] = [v * inv % q for v in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                c = a[i][col]
                crow = a[col]
                irow = a[i]
                for j in range(w):
                    irow[j] = (irow[j] - c * crow[j]) % q
    return [a[i][j] for i in range(n) for j in range(n, w)]
