"""Binary-share sampling, subset-sum hashing, and commitments."""

import pytest

from mss.ajtai import (
    Commitment,
    Share,
    ajtai_hash,
    sample_binary_share,
    sample_distinct_shares,
    sample_matrix_full_rank,
    share_length,
    verify_commitment,
)
from mss.errors import DimMismatch, NotBinary, ShareSpaceExhausted
from mss.field import Matrix, PrimeField, matrix_rank
from mss.rng import Drbg

F97 = PrimeField(97)


class TestShareLength:
    def test_small_parameters_hit_the_floor(self):
        assert share_length(2, 4) == 16
        assert share_length(3, 7) == 16

    def test_threshold_bound_dominates(self):
        assert share_length(8, 12) == 24

    def test_exact_ceil_of_t_log_t(self):
        # ceil(t * log2 t) computed without floating point
        assert share_length(5, 4) == max(12, 16)  # 5*log2(5) = 11.6...
        assert share_length(32, 64) == 160

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            share_length(1, 4)
        with pytest.raises(ValueError):
            share_length(2, 1)


class TestShareSampling:
    def test_distinct_within_deal(self):
        shares = sample_distinct_shares(5, 16, Drbg(3))
        assert len(set(shares)) == 5
        assert all(len(s) == 16 for s in shares)
        assert all(b in (0, 1) for s in shares for b in s)

    def test_seeded_sampling_reproducible(self):
        assert Drbg(1).bit_vector(8) == (1, 1, 1, 0, 0, 1, 1, 0)
        assert sample_binary_share(8, Drbg(1)) == sample_binary_share(8, Drbg(1))

    def test_exhaustion_by_pigeonhole(self):
        with pytest.raises(ShareSpaceExhausted):
            sample_distinct_shares(3, 1, Drbg(0))

    def test_share_validation(self):
        with pytest.raises(NotBinary):
            Share(owner=1, bits=(0, 2))
        with pytest.raises(ValueError):
            Share(owner=0, bits=(0, 1))


class TestAjtaiHash:
    def test_zero_vector_hashes_to_zero(self):
        a = Matrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert ajtai_hash(F97, a, (0, 0, 0)) == (0, 0)

    def test_unit_vector_selects_column(self):
        a = Matrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert ajtai_hash(F97, a, (1, 0, 0)) == (1, 4)

    def test_subset_sum_of_columns(self):
        a = Matrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert ajtai_hash(F97, a, (1, 0, 1)) == (4, 10)

    def test_dimension_mismatch(self):
        a = Matrix.from_rows([[1, 2, 3], [4, 5, 6]])
        with pytest.raises(DimMismatch):
            ajtai_hash(F97, a, (1, 0))

    def test_non_binary_rejected(self):
        a = Matrix.from_rows([[1, 2, 3], [4, 5, 6]])
        with pytest.raises(NotBinary):
            ajtai_hash(F97, a, (1, 0, 2))

    def test_linearity_on_disjoint_support(self):
        rng = Drbg(12)
        a = sample_matrix_full_rank(F97, 3, 8, rng)
        x = (1, 0, 1, 0, 0, 1, 0, 0)
        y = (0, 1, 0, 0, 1, 0, 0, 1)
        both = tuple(xi | yi for xi, yi in zip(x, y))
        assert ajtai_hash(F97, a, both) == F97.vec_add(
            ajtai_hash(F97, a, x), ajtai_hash(F97, a, y)
        )

    def test_deterministic(self):
        rng = Drbg(12)
        a = sample_matrix_full_rank(F97, 3, 8, rng)
        x = Drbg(4).bit_vector(8)
        assert ajtai_hash(F97, a, x) == ajtai_hash(F97, a, x)


class TestMatrixSampling:
    def test_single_row_is_nonzero(self):
        m = sample_matrix_full_rank(F97, 1, 4, Drbg(5))
        assert any(v != 0 for v in m.data)

    def test_square_sample_is_invertible(self):
        m = sample_matrix_full_rank(F97, 4, 4, Drbg(6))
        assert matrix_rank(F97, m) == 4

    def test_seeded_sampling_identical(self):
        m1 = sample_matrix_full_rank(F97, 3, 10, Drbg(7))
        m2 = sample_matrix_full_rank(F97, 3, 10, Drbg(7))
        assert m1 == m2

    def test_rows_exceeding_cols_rejected(self):
        with pytest.raises(DimMismatch):
            sample_matrix_full_rank(F97, 5, 4, Drbg(8))


class TestVerifyCommitment:
    def _setup(self, seed=9):
        rng = Drbg(seed)
        f = sample_matrix_full_rank(F97, 4, 16, rng)
        bits = sample_binary_share(16, rng)
        share = Share(owner=1, bits=bits)
        commitment = Commitment(owner=1, values=ajtai_hash(F97, f, bits))
        return f, share, commitment

    def test_honest_share_verifies(self):
        f, share, commitment = self._setup()
        assert verify_commitment(F97, f, share, commitment)

    def test_flipped_bit_fails(self):
        f, share, commitment = self._setup()
        for pos in range(len(share.bits)):
            bits = list(share.bits)
            bits[pos] ^= 1
            tampered = Share(owner=1, bits=tuple(bits))
            assert not verify_commitment(F97, f, tampered, commitment)

    def test_zero_share_zero_commitment(self):
        f, _, _ = self._setup()
        share = Share(owner=1, bits=(0,) * 16)
        assert verify_commitment(F97, f, share, Commitment(owner=1, values=(0,) * 4))

    def test_dimension_mismatch(self):
        f, share, _ = self._setup()
        with pytest.raises(DimMismatch):
            verify_commitment(F97, f, share, Commitment(owner=1, values=(0, 0)))

    def test_no_collisions_at_desk_scale(self):
        # distinct binary vectors colliding under a fresh random matrix would
        # need a {-1,0,1} kernel vector; none expected in 1000 seeded trials
        rng = Drbg(1000)
        field = F97
        for _ in range(1000):
            f = Matrix(4, 16, tuple(field.rand(rng) for _ in range(64)))
            a, b = sample_distinct_shares(2, 16, rng)
            assert ajtai_hash(field, f, a) != ajtai_hash(field, f, b)
