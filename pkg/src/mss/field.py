"""Exact arithmetic and linear algebra over a prime field.

Everything here works on plain Python ints, so 61-bit (or larger) moduli
never overflow; products use the full 128-bit intermediate before
reduction.  All functions are pure and all containers immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DimMismatch, DuplicateNode, Inconsistent, InvalidNode

#: Default modulus: the Mersenne prime 2^61 - 1.  Large enough that every
#: evaluation point used by the schemes is a distinct nonzero residue.
DEFAULT_PRIME = (1 << 61) - 1

# Strong-pseudoprime bases; the test is deterministic for n < 3.3e24,
# which covers every modulus these schemes are expected to run with.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=64)
def is_prime(n: int) -> bool:
    """Miller-Rabin primality test with fixed bases."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of residues modulo a prime q."""

    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"modulus {self.q} is not prime")

    def element(self, x: int) -> int:
        return x % self.q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return a * b % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def inv(self, a: int) -> int:
        """Multiplicative inverse (extended gcd via the builtin pow)."""
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.q)

    def rand(self, rng) -> int:
        return rng.randbelow(self.q)

    def rand_vec(self, rng, dim: int) -> tuple[int, ...]:
        return tuple(rng.randbelow(self.q) for _ in range(dim))

    # vectors are plain tuples of residues
    def vec(self, xs: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % self.q for x in xs)

    def vec_add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        if len(a) != len(b):
            raise DimMismatch(f"vector lengths {len(a)} != {len(b)}")
        return tuple((x + y) % self.q for x, y in zip(a, b))

    def vec_sub(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        if len(a) != len(b):
            raise DimMismatch(f"vector lengths {len(a)} != {len(b)}")
        return tuple((x - y) % self.q for x, y in zip(a, b))

    def vec_scale(self, s: int, a: Sequence[int]) -> tuple[int, ...]:
        return tuple(s * x % self.q for x in a)


@dataclass(frozen=True)
class Matrix:
    """Row-major matrix of residues."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.data) != self.rows * self.cols:
            raise ValueError(
                f"data length {len(self.data)} != {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Matrix":
        ncols = len(rows[0])
        flat: list[int] = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            flat.extend(row)
        return cls(len(rows), ncols, tuple(flat))

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def entry(self, i: int, j: int) -> int:
        return self.data[i * self.cols + j]


def mat_vec(field: PrimeField, m: Matrix, x: Sequence[int]) -> tuple[int, ...]:
    """Matrix-vector product over F_q."""
    if len(x) != m.cols:
        raise DimMismatch(f"matrix has {m.cols} columns, vector has {len(x)}")
    q = field.q
    out = []
    for i in range(m.rows):
        row = m.row(i)
        out.append(sum(a * b for a, b in zip(row, x)) % q)
    return tuple(out)


def matrix_rank(field: PrimeField, m: Matrix) -> int:
    """Row rank by Gaussian elimination (first-nonzero pivoting)."""
    q = field.q
    rows = [list(m.row(i)) for i in range(m.rows)]
    rank = 0
    for col in range(m.cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % q), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv_p = field.inv(rows[rank][col])
        prow = [v * inv_p % q for v in rows[rank]]
        rows[rank] = prow
        for r in range(rank + 1, len(rows)):
            f = rows[r][col] % q
            if f:
                rows[r] = [(a - f * b) % q for a, b in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


@dataclass(frozen=True)
class Solution:
    """Result of solving M x = b over F_q.

    When the solution is unique, ``vector`` holds it.  Otherwise ``vector``
    is None and the affine solution set is ``particular`` plus the span of
    ``nullspace`` (one basis vector per free column, in column order).
    """

    rank: int
    free_dims: int
    vector: tuple[int, ...] | None
    particular: tuple[int, ...]
    free_cols: tuple[int, ...]
    nullspace: tuple[tuple[int, ...], ...]

    @property
    def unique(self) -> bool:
        return self.free_dims == 0


def solve_linear(field: PrimeField, m: Matrix, b: Sequence[int]) -> Solution:
    """Solve M x = b exactly; raises Inconsistent when no solution exists.

    Column order is preserved during elimination so free variables are
    identifiable by index (used by the sub-threshold rank probe).
    """
    if len(b) != m.rows:
        raise DimMismatch(f"matrix has {m.rows} rows, rhs has {len(b)}")
    q = field.q
    ncols = m.cols
    rows = [list(m.row(i)) + [b[i] % q] for i in range(m.rows)]
    pivot_cols: list[int] = []
    pr = 0
    for col in range(ncols):
        pivot = next((r for r in range(pr, len(rows)) if rows[r][col] % q), None)
        if pivot is None:
            continue
        rows[pr], rows[pivot] = rows[pivot], rows[pr]
        inv_p = field.inv(rows[pr][col])
        prow = [v * inv_p % q for v in rows[pr]]
        rows[pr] = prow
        for r in range(len(rows)):
            if r == pr:
                continue
            f = rows[r][col] % q
            if f:
                rows[r] = [(a - f * p) % q for a, p in zip(rows[r], prow)]
        pivot_cols.append(col)
        pr += 1
        if pr == len(rows):
            break
    for r in range(pr, len(rows)):
        if rows[r][ncols] % q:
            raise Inconsistent("system has no solution")
    rank = pr
    pivot_set = set(pivot_cols)
    free_cols = tuple(c for c in range(ncols) if c not in pivot_set)

    particular = [0] * ncols
    for r, col in enumerate(pivot_cols):
        particular[col] = rows[r][ncols]

    nullspace = []
    for fc in free_cols:
        vec = [0] * ncols
        vec[fc] = 1
        for r, col in enumerate(pivot_cols):
            vec[col] = -rows[r][fc] % q
        nullspace.append(tuple(vec))

    vector = tuple(particular) if not free_cols else None
    return Solution(
        rank=rank,
        free_dims=len(free_cols),
        vector=vector,
        particular=tuple(particular),
        free_cols=free_cols,
        nullspace=tuple(nullspace),
    )


def vandermonde(field: PrimeField, xs: Sequence[int], width: int) -> Matrix:
    """Rows (1, x, x^2, ..., x^(width-1)) for each evaluation point x."""
    q = field.q
    rows = []
    for x in xs:
        x %= q
        row = [1]
        acc = 1
        for _ in range(width - 1):
            acc = acc * x % q
            row.append(acc)
        rows.append(row)
    return Matrix.from_rows(rows)


def lagrange_at_zero(
    field: PrimeField, points: Sequence[tuple[int, int]]
) -> int:
    """Value at 0 of the unique polynomial through the given points.

    Computes sum_j y_j * prod_{x != x_j} x / (x - x_j).  All nodes must be
    distinct and nonzero.
    """
    q = field.q
    xs = [x % q for x, _ in points]
    if len(set(xs)) != len(xs):
        raise DuplicateNode("interpolation nodes must be distinct")
    if any(x == 0 for x in xs):
        raise InvalidNode("node at x = 0 is not allowed")
    total = 0
    for j, (_, yj) in enumerate(points):
        num = 1
        den = 1
        xj = xs[j]
        for i, xi in enumerate(xs):
            if i == j:
                continue
            num = num * xi % q
            den = den * (xi - xj) % q
        total = (total + yj * num % q * field.inv(den)) % q
    return total


def binom_mod(field: PrimeField, j: int, l: int) -> int:
    """Binomial coefficient C(j, l) mod q; zero when j < l.

    Exact for any nonnegative j because C(j, l) * l! equals the falling
    factorial j(j-1)...(j-l+1) as integers, and l! is invertible for l < q.
    """
    if j < 0 or l < 0:
        raise ValueError("arguments must be nonnegative")
    if l >= field.q:
        raise ValueError("l must be smaller than the modulus")
    if j < l:
        return 0
    if l == 0:
        return 1
    q = field.q
    num = 1
    fact = 1
    for i in range(l):
        num = num * ((j - i) % q) % q
        fact = fact * (i + 1) % q
    return num * field.inv(fact) % q


def poly_eval(field: PrimeField, coeffs: Sequence[int], x: int) -> int:
    """Evaluate a polynomial given low-order-first coefficients (Horner)."""
    q = field.q
    x %= q
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % q
    return acc
