"""The four-phase multi-stage secret sharing protocol.

Four variants share one machinery.  In every variant, secret i is a vector
of dimension t_i (its threshold), hidden as the index-0 term of a recursion
sequence whose next t_i - 1 terms are masked participant shares (shadows).
Published offsets extend every participant's shadow into a sequence term,
and a few published extra terms give interpolating quorums enough samples.

  s1  per-secret constant vectors, plain recursion
  s2  per-secret constant vectors, alternating recursion
  s3  one shared constant vector, plain recursion
  s4  one shared constant vector, alternating recursion

Recovery: any t_i participants interpolate the general-term polynomial
(by a linear solve or directly at zero by the Lagrange formula), or t_i
participants with consecutive indices walk the recursion backward.  Each
secret recovers independently, in any order.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ajtai import (
    Commitment,
    Share,
    ajtai_hash,
    sample_distinct_shares,
    sample_matrix_full_rank,
    share_length,
)
from .errors import (
    BadIndex,
    BadQuorum,
    BadShares,
    DimMismatch,
    NotConsecutive,
)
from .field import (
    DEFAULT_PRIME,
    Matrix,
    PrimeField,
    lagrange_at_zero,
    solve_linear,
    vandermonde,
)
from .ilr import IlrSpec, backward_recover, fit_general_term, fold_value, forward_extend


class Variant(str, enum.Enum):
    S1 = "s1"
    S2 = "s2"
    S3 = "s3"
    S4 = "s4"

    @property
    def alternating(self) -> bool:
        return self in (Variant.S2, Variant.S4)

    @property
    def shared_constant(self) -> bool:
        """True when one constant vector serves every secret (s3/s4)."""
        return self in (Variant.S3, Variant.S4)

    def extras_count(self, threshold: int) -> int:
        """Published sequence terms beyond index n."""
        return threshold + 1 if self.shared_constant else 2


@dataclass(frozen=True)
class SchemeParams:
    """Validated deal parameters.

    r defaults to the share bit-length bound for (max threshold, n); pass
    r=0 to derive it.
    """

    variant: Variant
    n: int
    k: int
    thresholds: tuple[int, ...]
    q: int = DEFAULT_PRIME
    r: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "thresholds", tuple(self.thresholds))
        if self.n < 2:
            raise ValueError("need at least 2 participants")
        if self.k < 1:
            raise ValueError("need at least 1 secret")
        if len(self.thresholds) != self.k:
            raise ValueError(f"expected {self.k} thresholds")
        for t in self.thresholds:
            if not 2 <= t <= self.n:
                raise ValueError(f"threshold {t} outside [2, {self.n}]")
        PrimeField(self.q)  # primality check
        if self.q <= self.n + self.max_threshold + 1:
            raise ValueError("modulus too small for the evaluation points")
        if self.r == 0:
            object.__setattr__(
                self, "r", share_length(self.max_threshold, self.n)
            )
        if self.r < 1:
            raise ValueError("share length must be positive")

    @property
    def max_threshold(self) -> int:
        return max(self.thresholds)

    def field(self) -> PrimeField:
        return PrimeField(self.q)


@dataclass(frozen=True)
class SetupResult:
    """Dealer state after the setup phase: shares plus the public matrices."""

    shares: tuple[Share, ...]
    mask_matrices: tuple[Matrix, ...]
    commit_matrix: Matrix
    commitments: tuple[Commitment, ...]


@dataclass(frozen=True)
class Bulletin:
    """Every public value of one deal.

    offsets[i-1][j - t_i] is the published offset for secret i and
    participant j (t_i <= j <= n); extras[i-1][m-1] is the published
    sequence term at index n + m.
    """

    params: SchemeParams
    mask_matrices: tuple[Matrix, ...]
    commit_matrix: Matrix
    commitments: tuple[Commitment, ...]
    secret_hashes: tuple[str, ...]
    constants: tuple[tuple[int, ...], ...]
    offsets: tuple[tuple[tuple[int, ...], ...], ...]
    extras: tuple[tuple[tuple[int, ...], ...], ...]

    def _check_secret_index(self, i: int) -> None:
        if not 1 <= i <= self.params.k:
            raise BadIndex(f"secret index {i} outside [1, {self.params.k}]")

    def threshold(self, i: int) -> int:
        self._check_secret_index(i)
        return self.params.thresholds[i - 1]

    def extras_count(self, i: int) -> int:
        return self.params.variant.extras_count(self.threshold(i))

    def constant_for(self, i: int) -> tuple[int, ...]:
        """Raw constant vector for secret i (untruncated for s3/s4)."""
        self._check_secret_index(i)
        if self.params.variant.shared_constant:
            return self.constants[0]
        return self.constants[i - 1]

    def ilr_spec(self, i: int) -> IlrSpec:
        return ilr_spec_for(self.params, i, self.constant_for(i))

    def offset_for(self, i: int, j: int) -> tuple[int, ...]:
        t_i = self.threshold(i)
        if not t_i <= j <= self.params.n:
            raise BadIndex(f"no offset published for participant {j}")
        return self.offsets[i - 1][j - t_i]

    def extra_points(self, i: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """Published samples (n+1, u_{n+1}), ..., beyond the participants."""
        n = self.params.n
        return tuple(
            (n + m, vec) for m, vec in enumerate(self.extras[i - 1], start=1)
        )


def ilr_spec_for(
    params: SchemeParams, i: int, constant: Sequence[int]
) -> IlrSpec:
    """Recursion parameters for secret i under the chosen variant.

    s1/s2 tie the recursion's t to the threshold with l = 1; s3/s4 fix
    t = 1 and tie l to the threshold, truncating the shared constant to its
    first t_i components.
    """
    if not 1 <= i <= params.k:
        raise BadIndex(f"secret index {i} outside [1, {params.k}]")
    t_i = params.thresholds[i - 1]
    field = params.field()
    if params.variant.shared_constant:
        if len(constant) < t_i:
            raise DimMismatch("shared constant shorter than the threshold")
        return IlrSpec(
            t=1,
            l=t_i,
            alternating=params.variant.alternating,
            c=tuple(constant[:t_i]),
            field=field,
        )
    if len(constant) != t_i:
        raise DimMismatch("constant length must equal the threshold")
    return IlrSpec(
        t=t_i,
        l=1,
        alternating=params.variant.alternating,
        c=tuple(constant),
        field=field,
    )


def secret_hash(q: int, secret: Sequence[int]) -> str:
    """SHA-256 of the canonical encoding of (q, len, components).

    Components are fixed-width big-endian at the byte width of q, and the
    length is part of the encoding, so truncated candidates hash differently.
    """
    width = (q.bit_length() + 7) // 8
    h = hashlib.sha256()
    h.update(b"mss.secret.v1")
    qbytes = q.to_bytes(width, "big")
    h.update(len(qbytes).to_bytes(2, "big"))
    h.update(qbytes)
    h.update(len(secret).to_bytes(4, "big"))
    for value in secret:
        h.update((value % q).to_bytes(width, "big"))
    return h.hexdigest()


def setup(params: SchemeParams, rng) -> SetupResult:
    """Sample shares, per-secret mask matrices, and the commitment matrix.

    Draw order (fixed for reproducibility): shares 1..n, then mask matrices
    1..k, then the commitment matrix.
    """
    field = params.field()
    bit_vectors = sample_distinct_shares(params.n, params.r, rng)
    shares = tuple(
        Share(owner=j + 1, bits=bits) for j, bits in enumerate(bit_vectors)
    )
    mask_matrices = tuple(
        sample_matrix_full_rank(field, t_i, params.r, rng)
        for t_i in params.thresholds
    )
    commit_matrix = sample_matrix_full_rank(
        field, params.max_threshold, params.r, rng
    )
    commitments = tuple(
        Commitment(owner=share.owner, values=ajtai_hash(field, commit_matrix, share.bits))
        for share in shares
    )
    return SetupResult(
        shares=shares,
        mask_matrices=mask_matrices,
        commit_matrix=commit_matrix,
        commitments=commitments,
    )


def _validate_secrets(params: SchemeParams, secrets: Sequence[Sequence[int]]) -> None:
    if len(secrets) != params.k:
        raise ValueError(f"expected {params.k} secrets, got {len(secrets)}")
    for i, secret in enumerate(secrets, start=1):
        t_i = params.thresholds[i - 1]
        if len(secret) != t_i:
            raise ValueError(
                f"secret {i} must have {t_i} components, got {len(secret)}"
            )
        if any(not 0 <= x < params.q for x in secret):
            raise ValueError(f"secret {i} has components outside [0, q)")


def _draw_constants(params: SchemeParams, rng) -> tuple[tuple[int, ...], ...]:
    field = params.field()
    if params.variant.shared_constant:
        return (field.rand_vec(rng, params.max_threshold),)
    seen: set[tuple[int, ...]] = set()
    out = []
    for t_i in params.thresholds:
        while True:
            c = field.rand_vec(rng, t_i)
            if c not in seen:
                seen.add(c)
                out.append(c)
                break
    return tuple(out)


def construct(
    params: SchemeParams,
    secrets: Sequence[Sequence[int]],
    setup_result: SetupResult,
    rng,
) -> Bulletin:
    """Build the public bulletin that hides the given secrets.

    Per secret i the sequence starts (S_i, d_1, ..., d_{t_i-1}) with
    d_j = G_i * sh_j, runs forward to index n plus the variant's extras, and
    publishes offsets u_j - d_j for j = t_i..n plus the extra terms.
    """
    _validate_secrets(params, secrets)
    if len(setup_result.shares) != params.n:
        raise BadShares(
            f"expected {params.n} shares, got {len(setup_result.shares)}"
        )
    for j, share in enumerate(setup_result.shares, start=1):
        if share.owner != j:
            raise BadShares("shares must be ordered by owner 1..n")
        if len(share.bits) != params.r:
            raise BadShares(f"share {j} has wrong bit-length")
    field = params.field()
    constants = _draw_constants(params, rng)
    offsets = []
    extras = []
    hashes = []
    for i in range(1, params.k + 1):
        t_i = params.thresholds[i - 1]
        g_i = setup_result.mask_matrices[i - 1]
        shadows = {
            share.owner: ajtai_hash(field, g_i, share.bits)
            for share in setup_result.shares
        }
        constant = constants[0] if params.variant.shared_constant else constants[i - 1]
        spec = ilr_spec_for(params, i, constant)
        initial = [field.vec(secrets[i - 1])]
        initial.extend(shadows[j] for j in range(1, t_i))
        e_i = params.variant.extras_count(t_i)
        seq = forward_extend(spec, initial, params.n + e_i)
        offsets.append(
            tuple(
                field.vec_sub(seq.term(j), shadows[j])
                for j in range(t_i, params.n + 1)
            )
        )
        extras.append(tuple(seq.term(params.n + m) for m in range(1, e_i + 1)))
        hashes.append(secret_hash(params.q, secrets[i - 1]))
    return Bulletin(
        params=params,
        mask_matrices=setup_result.mask_matrices,
        commit_matrix=setup_result.commit_matrix,
        commitments=setup_result.commitments,
        secret_hashes=tuple(hashes),
        constants=constants,
        offsets=tuple(offsets),
        extras=tuple(extras),
    )


def deal(
    params: SchemeParams, secrets: Sequence[Sequence[int]], rng
) -> tuple[tuple[Share, ...], Bulletin]:
    """Run setup and construction in one step."""
    setup_result = setup(params, rng)
    bulletin = construct(params, secrets, setup_result, rng)
    return setup_result.shares, bulletin


def compute_shadow(bulletin: Bulletin, i: int, share: Share) -> tuple[int, ...]:
    """Shadow d_j = G_i * sh_j of one participant for secret i."""
    bulletin._check_secret_index(i)
    field = bulletin.params.field()
    return ajtai_hash(field, bulletin.mask_matrices[i - 1], share.bits)


def assemble_subshadows(
    bulletin: Bulletin, i: int, shadows: Mapping[int, Sequence[int]]
) -> dict[int, tuple[int, ...]]:
    """Turn shadows into sequence terms: add the published offset for j >= t_i."""
    t_i = bulletin.threshold(i)
    field = bulletin.params.field()
    out: dict[int, tuple[int, ...]] = {}
    for j, shadow in shadows.items():
        if not 1 <= j <= bulletin.params.n:
            raise BadIndex(f"participant index {j} outside [1, {bulletin.params.n}]")
        if len(shadow) != t_i:
            raise DimMismatch(f"shadow for {j} has length {len(shadow)}, want {t_i}")
        if j <= t_i - 1:
            out[j] = field.vec(shadow)
        else:
            out[j] = field.vec_add(shadow, bulletin.offset_for(i, j))
    return out


def participant_subshadows(
    bulletin: Bulletin, i: int, shares: Iterable[Share]
) -> dict[int, tuple[int, ...]]:
    """Subshadows of secret i computed straight from a group's shares."""
    shadows = {share.owner: compute_shadow(bulletin, i, share) for share in shares}
    return assemble_subshadows(bulletin, i, shadows)


def _quorum_samples(
    bulletin: Bulletin, i: int, subshadows: Mapping[int, Sequence[int]]
) -> list[tuple[int, tuple[int, ...]]]:
    t_i = bulletin.threshold(i)
    if len(subshadows) != t_i:
        raise BadQuorum(f"need exactly {t_i} subshadows, got {len(subshadows)}")
    field = bulletin.params.field()
    samples = []
    for j in sorted(subshadows):
        if not 1 <= j <= bulletin.params.n:
            raise BadIndex(f"participant index {j} outside [1, {bulletin.params.n}]")
        vec = subshadows[j]
        if len(vec) != t_i:
            raise DimMismatch(f"subshadow for {j} has length {len(vec)}, want {t_i}")
        samples.append((j, field.vec(vec)))
    samples.extend(bulletin.extra_points(i))
    return samples


def recover_way1_vandermonde(
    bulletin: Bulletin, i: int, subshadows: Mapping[int, Sequence[int]]
) -> tuple[int, ...]:
    """Recover secret i by solving for the general-term coefficients.

    Any t_i subshadows plus the published extras give exactly as many
    samples as the polynomial has coefficients; the secret component is the
    constant coefficient.
    """
    samples = _quorum_samples(bulletin, i, subshadows)
    spec = bulletin.ilr_spec(i)
    return tuple(
        fit_general_term(spec, samples, s)[0] for s in range(spec.dim)
    )


def recover_way1_lagrange(
    bulletin: Bulletin, i: int, subshadows: Mapping[int, Sequence[int]]
) -> tuple[int, ...]:
    """Recover secret i by evaluating the interpolating polynomial at zero."""
    samples = _quorum_samples(bulletin, i, subshadows)
    spec = bulletin.ilr_spec(i)
    out = []
    for s in range(spec.dim):
        points = [(x, fold_value(spec, x, vec[s])) for x, vec in samples]
        out.append(lagrange_at_zero(spec.field, points))
    return tuple(out)


def recover_way2(
    bulletin: Bulletin, i: int, subshadows: Mapping[int, Sequence[int]]
) -> tuple[int, ...]:
    """Recover secret i by walking the recursion backward to index 0.

    Requires t_i subshadows at consecutive participant indices; the
    published constant makes every backward step computable.
    """
    t_i = bulletin.threshold(i)
    if len(subshadows) != t_i:
        raise BadQuorum(f"need exactly {t_i} subshadows, got {len(subshadows)}")
    idxs = sorted(subshadows)
    if not 1 <= idxs[0] <= bulletin.params.n - t_i + 1:
        raise BadIndex(f"window start {idxs[0]} out of range")
    if idxs != list(range(idxs[0], idxs[0] + t_i)):
        raise NotConsecutive("backward recovery needs consecutive indices")
    field = bulletin.params.field()
    spec = bulletin.ilr_spec(i)
    window = []
    for j in idxs:
        vec = subshadows[j]
        if len(vec) != t_i:
            raise DimMismatch(f"subshadow for {j} has length {len(vec)}, want {t_i}")
        window.append(field.vec(vec))
    recovered = backward_recover(spec, window, start=idxs[0])
    return recovered[-1]


def verify_secret(bulletin: Bulletin, i: int, candidate: Sequence[int]) -> bool:
    """True iff the candidate hashes to the published digest for secret i."""
    bulletin._check_secret_index(i)
    return secret_hash(bulletin.params.q, candidate) == bulletin.secret_hashes[i - 1]


@dataclass(frozen=True)
class ProbeResult:
    """What a sub-threshold group can pin down about one secret.

    a0_witnesses holds, per component, two values of the constant
    coefficient that are both consistent with everything the group sees;
    they differ whenever free_dims >= 1, i.e. the secret is undetermined.
    """

    rank: int
    free_dims: int
    a0_witnesses: tuple[tuple[int, int], ...]


def privacy_rank_probe(
    bulletin: Bulletin, i: int, subshadows: Mapping[int, Sequence[int]]
) -> ProbeResult:
    """Rank-analyze the interpolation system a given group can assemble.

    With t_i - 1 subshadows the per-component system has one more unknown
    than independent equations, so the constant coefficient (the secret
    component) stays free; with a full quorum it is pinned uniquely.
    """
    t_i = bulletin.threshold(i)
    if not subshadows:
        raise BadQuorum("need at least one subshadow")
    if len(subshadows) > t_i:
        raise BadQuorum(f"probe takes at most {t_i} subshadows")
    field = bulletin.params.field()
    spec = bulletin.ilr_spec(i)
    xs = []
    vecs = {}
    for j in sorted(subshadows):
        if not 1 <= j <= bulletin.params.n:
            raise BadIndex(f"participant index {j} outside [1, {bulletin.params.n}]")
        xs.append(j)
        vecs[j] = field.vec(subshadows[j])
    extra = bulletin.extra_points(i)
    points = xs + [x for x, _ in extra]
    matrix = vandermonde(field, points, spec.unknowns)
    rank = None
    free_dims = None
    witnesses = []
    for s in range(spec.dim):
        rhs = [fold_value(spec, j, vecs[j][s]) for j in xs]
        rhs.extend(fold_value(spec, x, vec[s]) for x, vec in extra)
        sol = solve_linear(field, matrix, rhs)
        rank = sol.rank
        free_dims = sol.free_dims
        a0 = sol.particular[0]
        if sol.free_dims == 0:
            witnesses.append((a0, a0))
        else:
            shift = next((v for v in sol.nullspace if v[0] != 0), None)
            if shift is None:
                # cannot happen: the nullspace polynomial vanishes at the
                # sample points, all nonzero, so its value at 0 is nonzero
                witnesses.append((a0, a0))
            else:
                witnesses.append((a0, (a0 + shift[0]) % field.q))
    return ProbeResult(
        rank=rank, free_dims=free_dims, a0_witnesses=tuple(witnesses)
    )
