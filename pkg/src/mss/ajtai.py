"""Subset-sum hashing of binary vectors, share sampling, and commitments.

A random matrix A over F_q maps a binary vector x to A*x mod q; since x is
binary this is a subset sum of A's columns.  Finding a second binary
preimage for a uniformly random A is assumed hard at cryptographic sizes,
which is what makes the published commitments h_j = F*sh_j binding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimMismatch, NotBinary, RngSuspect, ShareSpaceExhausted
from .field import Matrix, PrimeField, matrix_rank

#: Keep the share space at >= 2^16 vectors even for tiny test parameters.
MIN_SHARE_BITS = 16

#: Consecutive duplicate draws tolerated while sampling distinct shares.
MAX_SHARE_RESAMPLES = 1000

#: Consecutive rank failures tolerated while sampling full-rank matrices;
#: for r >= t log t the failure probability per draw is negligible, so
#: hitting this limit signals broken randomness rather than bad luck.
MAX_RANK_RESAMPLES = 100


@dataclass(frozen=True)
class Share:
    """A participant's long-lived secret: a binary vector of length r."""

    owner: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.owner < 1:
            raise ValueError("owner index is 1-based")
        if any(b not in (0, 1) for b in self.bits):
            raise NotBinary("share bits must be 0 or 1")
        if not self.bits:
            raise ValueError("share must be nonempty")


@dataclass(frozen=True)
class Commitment:
    """Published image h = F * share bits, used to verify a share."""

    owner: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.owner < 1:
            raise ValueError("owner index is 1-based")


def share_length(max_threshold: int, n: int) -> int:
    """Share bit-length: max(ceil(t*log2 t), ceil(log2 n), 16).

    Computed exactly in integer arithmetic: ceil(t*log2 t) = ceil(log2 t^t).
    """
    if n < 2:
        raise ValueError("need at least 2 participants")
    if max_threshold < 2:
        raise ValueError("threshold must be at least 2")
    from_threshold = (max_threshold**max_threshold - 1).bit_length()
    from_n = (n - 1).bit_length()
    return max(from_threshold, from_n, MIN_SHARE_BITS)


def sample_binary_share(r: int, rng) -> tuple[int, ...]:
    """Uniform binary vector of length r."""
    if r < 1:
        raise ValueError("share length must be positive")
    return rng.bit_vector(r)


def sample_distinct_shares(n: int, r: int, rng) -> list[tuple[int, ...]]:
    """n pairwise-distinct binary vectors, resampling on collision."""
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    for _ in range(n):
        for _attempt in range(MAX_SHARE_RESAMPLES):
            bits = sample_binary_share(r, rng)
            if bits not in seen:
                seen.add(bits)
                out.append(bits)
                break
        else:
            raise ShareSpaceExhausted(
                f"cannot draw {n} distinct shares of {r} bits"
            )
    return out


def sample_matrix_full_rank(
    field: PrimeField, rows: int, cols: int, rng
) -> Matrix:
    """Uniform matrix, resampled until it has full row rank."""
    if rows > cols:
        raise DimMismatch("full row rank needs rows <= cols")
    for _attempt in range(MAX_RANK_RESAMPLES):
        m = Matrix(rows, cols, tuple(field.rand(rng) for _ in range(rows * cols)))
        if matrix_rank(field, m) == rows:
            return m
    raise RngSuspect(f"{MAX_RANK_RESAMPLES} rank-deficient draws in a row")


def ajtai_hash(field: PrimeField, a: Matrix, x: Sequence[int]) -> tuple[int, ...]:
    """A * x mod q for binary x: the subset sum of A's columns picked by x."""
    if len(x) != a.cols:
        raise DimMismatch(f"matrix has {a.cols} columns, vector has {len(x)}")
    if any(b not in (0, 1) for b in x):
        raise NotBinary("input vector must be binary")
    q = field.q
    picked = [j for j, b in enumerate(x) if b]
    data = a.data
    out = []
    for i in range(a.rows):
        base = i * a.cols
        acc = 0
        for j in picked:
            acc += data[base + j]
        out.append(acc % q)
    return tuple(out)


def verify_commitment(
    field: PrimeField, f: Matrix, share: Share, commitment: Commitment
) -> bool:
    """True iff hashing the share under f reproduces the commitment exactly."""
    if len(commitment.values) != f.rows:
        raise DimMismatch(
            f"commitment has {len(commitment.values)} entries, matrix {f.rows} rows"
        )
    return ajtai_hash(field, f, share.bits) == tuple(commitment.values)
