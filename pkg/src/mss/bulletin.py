"""Canonical serialization of bulletins, share files, and reports.

Everything is JSON with sorted keys and no insignificant whitespace, so
identical structures always encode to identical bytes.  Residues travel as
decimal strings because the default modulus exceeds the 53-bit range where
JSON numbers stay exact.  Decoding re-validates every structural invariant
and fails loudly on anything off.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
from dataclasses import dataclass
from typing import Sequence

from .ajtai import Commitment, Share
from .errors import (
    ParseError,
    UnsupportedVersion,
    ValidationError,
    WrongDeal,
)
from .field import Matrix
from .scheme import Bulletin, SchemeParams, Variant

FORMAT_VERSION = 1

_DECIMAL = re.compile(r"^(0|[1-9][0-9]*)$")
_HEX_DIGEST = re.compile(r"^[0-9a-f]{64}$")


def _canonical_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def _load_json(data: bytes | str) -> dict:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}") from exc
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("top-level value must be an object")
    return obj


def _expect_kind(obj: dict, kind: str) -> None:
    if obj.get("kind") != kind:
        raise ParseError(f"expected kind {kind!r}, got {obj.get('kind')!r}")
    version = obj.get("format_version")
    if not isinstance(version, int):
        raise ParseError("format_version must be an integer")
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(f"unsupported format_version {version}")


def _get(obj: dict, key: str):
    if key not in obj:
        raise ParseError(f"missing key {key!r}")
    return obj[key]


def _parse_uint(value, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ParseError(f"{what} must be a nonnegative integer")
    return value


def _parse_decimal(value, what: str) -> int:
    if not isinstance(value, str) or not _DECIMAL.match(value):
        raise ParseError(f"{what} must be a canonical decimal string")
    return int(value)


def _parse_residue(value, q: int, what: str) -> int:
    n = _parse_decimal(value, what)
    if n >= q:
        raise ValidationError(f"{what} is not reduced mod q")
    return n


def _parse_vector(value, q: int, length: int, what: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise ParseError(f"{what} must be an array")
    if len(value) != length:
        raise ValidationError(f"{what} must have length {length}, got {len(value)}")
    return tuple(_parse_residue(v, q, what) for v in value)


def _matrix_obj(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "data": [str(v) for v in m.data]}


def _parse_matrix(value, q: int, rows: int, cols: int, what: str) -> Matrix:
    if not isinstance(value, dict):
        raise ParseError(f"{what} must be an object")
    got_rows = _parse_uint(_get(value, "rows"), f"{what}.rows")
    got_cols = _parse_uint(_get(value, "cols"), f"{what}.cols")
    if got_rows != rows or got_cols != cols:
        raise ValidationError(
            f"{what} must be {rows}x{cols}, got {got_rows}x{got_cols}"
        )
    data = _get(value, "data")
    if not isinstance(data, list):
        raise ParseError(f"{what}.data must be an array")
    if len(data) != rows * cols:
        raise ValidationError(f"{what}.data has wrong length")
    return Matrix(rows, cols, tuple(_parse_residue(v, q, f"{what}.data") for v in data))


def _params_obj(params: SchemeParams) -> dict:
    return {
        "variant": params.variant.value,
        "n": params.n,
        "k": params.k,
        "thresholds": list(params.thresholds),
        "q": str(params.q),
        "r": params.r,
    }


def _parse_params(value) -> SchemeParams:
    if not isinstance(value, dict):
        raise ParseError("params must be an object")
    variant_raw = _get(value, "variant")
    try:
        variant = Variant(variant_raw)
    except ValueError as exc:
        raise ValidationError(f"unknown variant {variant_raw!r}") from exc
    n = _parse_uint(_get(value, "n"), "params.n")
    k = _parse_uint(_get(value, "k"), "params.k")
    thresholds = _get(value, "thresholds")
    if not isinstance(thresholds, list):
        raise ParseError("params.thresholds must be an array")
    t_list = tuple(_parse_uint(t, "threshold") for t in thresholds)
    q = _parse_decimal(_get(value, "q"), "params.q")
    r = _parse_uint(_get(value, "r"), "params.r")
    try:
        return SchemeParams(variant=variant, n=n, k=k, thresholds=t_list, q=q, r=r)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def _setup_section(bulletin: Bulletin) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "params": _params_obj(bulletin.params),
        "mask_matrices": [_matrix_obj(m) for m in bulletin.mask_matrices],
        "commit_matrix": _matrix_obj(bulletin.commit_matrix),
        "commitments": [
            [str(v) for v in c.values] for c in bulletin.commitments
        ],
    }


def deal_id(bulletin: Bulletin) -> str:
    """Digest binding shares to one deal: the hash of the setup section."""
    return hashlib.sha256(_canonical_bytes(_setup_section(bulletin))).hexdigest()


def encode_bulletin(bulletin: Bulletin) -> bytes:
    obj = _setup_section(bulletin)
    obj["kind"] = "bulletin"
    obj["secret_hashes"] = list(bulletin.secret_hashes)
    obj["constants"] = [[str(v) for v in c] for c in bulletin.constants]
    obj["offsets"] = [
        [[str(v) for v in vec] for vec in per_secret]
        for per_secret in bulletin.offsets
    ]
    obj["extras"] = [
        [[str(v) for v in vec] for vec in per_secret]
        for per_secret in bulletin.extras
    ]
    return _canonical_bytes(obj)


def decode_bulletin(data: bytes | str) -> Bulletin:
    obj = _load_json(data)
    _expect_kind(obj, "bulletin")
    params = _parse_params(_get(obj, "params"))
    q = params.q
    n, k = params.n, params.k
    t_max = params.max_threshold

    raw_masks = _get(obj, "mask_matrices")
    if not isinstance(raw_masks, list):
        raise ParseError("mask_matrices must be an array")
    if len(raw_masks) != k:
        raise ValidationError(f"expected {k} mask matrices, got {len(raw_masks)}")
    mask_matrices = tuple(
        _parse_matrix(m, q, params.thresholds[i], params.r, f"mask_matrices[{i}]")
        for i, m in enumerate(raw_masks)
    )
    commit_matrix = _parse_matrix(
        _get(obj, "commit_matrix"), q, t_max, params.r, "commit_matrix"
    )

    raw_commitments = _get(obj, "commitments")
    if not isinstance(raw_commitments, list):
        raise ParseError("commitments must be an array")
    if len(raw_commitments) != n:
        raise ValidationError(f"expected {n} commitments, got {len(raw_commitments)}")
    commitments = tuple(
        Commitment(owner=j + 1, values=_parse_vector(c, q, t_max, f"commitments[{j}]"))
        for j, c in enumerate(raw_commitments)
    )

    raw_hashes = _get(obj, "secret_hashes")
    if not isinstance(raw_hashes, list):
        raise ParseError("secret_hashes must be an array")
    if len(raw_hashes) != k:
        raise ValidationError(f"expected {k} secret hashes, got {len(raw_hashes)}")
    for h in raw_hashes:
        if not isinstance(h, str) or not _HEX_DIGEST.match(h):
            raise ValidationError("secret hash must be 64 lowercase hex digits")

    raw_constants = _get(obj, "constants")
    if not isinstance(raw_constants, list):
        raise ParseError("constants must be an array")
    if params.variant.shared_constant:
        if len(raw_constants) != 1:
            raise ValidationError("expected one shared constant vector")
        constants = (
            _parse_vector(raw_constants[0], q, t_max, "constants[0]"),
        )
    else:
        if len(raw_constants) != k:
            raise ValidationError(f"expected {k} constant vectors")
        constants = tuple(
            _parse_vector(c, q, params.thresholds[i], f"constants[{i}]")
            for i, c in enumerate(raw_constants)
        )

    raw_offsets = _get(obj, "offsets")
    if not isinstance(raw_offsets, list) or len(raw_offsets) != k:
        raise ValidationError(f"expected offsets for {k} secrets")
    offsets = []
    for i, per_secret in enumerate(raw_offsets):
        t_i = params.thresholds[i]
        if not isinstance(per_secret, list):
            raise ParseError(f"offsets[{i}] must be an array")
        if len(per_secret) != n - t_i + 1:
            raise ValidationError(
                f"offsets[{i}] must have {n - t_i + 1} vectors, got {len(per_secret)}"
            )
        offsets.append(
            tuple(
                _parse_vector(vec, q, t_i, f"offsets[{i}][{j}]")
                for j, vec in enumerate(per_secret)
            )
        )

    raw_extras = _get(obj, "extras")
    if not isinstance(raw_extras, list) or len(raw_extras) != k:
        raise ValidationError(f"expected extras for {k} secrets")
    extras = []
    for i, per_secret in enumerate(raw_extras):
        t_i = params.thresholds[i]
        e_i = params.variant.extras_count(t_i)
        if not isinstance(per_secret, list):
            raise ParseError(f"extras[{i}] must be an array")
        if len(per_secret) != e_i:
            raise ValidationError(
                f"extras[{i}] must have {e_i} vectors, got {len(per_secret)}"
            )
        extras.append(
            tuple(
                _parse_vector(vec, q, t_i, f"extras[{i}][{j}]")
                for j, vec in enumerate(per_secret)
            )
        )

    return Bulletin(
        params=params,
        mask_matrices=mask_matrices,
        commit_matrix=commit_matrix,
        commitments=commitments,
        secret_hashes=tuple(raw_hashes),
        constants=constants,
        offsets=tuple(offsets),
        extras=tuple(extras),
    )


@dataclass(frozen=True)
class ShareFile:
    """Decoded share file: the share plus its optional deal binding."""

    share: Share
    r: int
    deal: str | None


def encode_share(share: Share, deal: str | None = None) -> bytes:
    r = len(share.bits)
    value = 0
    for bit in share.bits:
        value = (value << 1) | bit
    nibbles = (r + 3) // 4
    obj = {
        "format_version": FORMAT_VERSION,
        "kind": "share",
        "owner": share.owner,
        "r": r,
        "bits": format(value, "x").zfill(nibbles),
    }
    if deal is not None:
        obj["deal"] = deal
    return _canonical_bytes(obj)


def decode_share(data: bytes | str) -> ShareFile:
    obj = _load_json(data)
    _expect_kind(obj, "share")
    owner = _parse_uint(_get(obj, "owner"), "owner")
    if owner < 1:
        raise ValidationError("owner index is 1-based")
    r = _parse_uint(_get(obj, "r"), "r")
    if r < 1:
        raise ValidationError("r must be positive")
    raw_bits = _get(obj, "bits")
    nibbles = (r + 3) // 4
    if not isinstance(raw_bits, str) or not re.match(r"^[0-9a-f]+$", raw_bits):
        raise ParseError("bits must be a lowercase hex string")
    if len(raw_bits) != nibbles:
        raise ValidationError(f"bits must be {nibbles} hex digits for r={r}")
    value = int(raw_bits, 16)
    if value >> r:
        raise ValidationError("bit string longer than r")
    bits = tuple((value >> (r - 1 - i)) & 1 for i in range(r))
    deal = obj.get("deal")
    if deal is not None and (not isinstance(deal, str) or not _HEX_DIGEST.match(deal)):
        raise ValidationError("deal must be a 64-digit hex digest")
    return ShareFile(share=Share(owner=owner, bits=bits), r=r, deal=deal)


def bind_share(share_file: ShareFile, bulletin: Bulletin) -> Share:
    """Check a share file against a bulletin and return the share."""
    params = bulletin.params
    if share_file.deal is not None and share_file.deal != deal_id(bulletin):
        raise WrongDeal(f"share of owner {share_file.share.owner} belongs to another deal")
    if share_file.r != params.r:
        raise ValidationError(
            f"share length {share_file.r} does not match the deal's r={params.r}"
        )
    if not 1 <= share_file.share.owner <= params.n:
        raise ValidationError(f"owner {share_file.share.owner} outside [1, {params.n}]")
    return share_file.share


def encode_secrets(q: int, secrets: Sequence[Sequence[int]]) -> bytes:
    return _canonical_bytes(
        {
            "format_version": FORMAT_VERSION,
            "kind": "secrets",
            "secrets": [[str(v % q) for v in vec] for vec in secrets],
        }
    )


def decode_secrets(data: bytes | str, q: int) -> tuple[tuple[int, ...], ...]:
    obj = _load_json(data)
    _expect_kind(obj, "secrets")
    raw = _get(obj, "secrets")
    if not isinstance(raw, list) or not raw:
        raise ParseError("secrets must be a nonempty array")
    out = []
    for i, vec in enumerate(raw):
        if not isinstance(vec, list) or not vec:
            raise ParseError(f"secrets[{i}] must be a nonempty array")
        out.append(tuple(_parse_residue(v, q, f"secrets[{i}]") for v in vec))
    return tuple(out)


@dataclass(frozen=True)
class RecoveredFile:
    secret_index: int
    candidate: tuple[int, ...]
    verified: bool
    deal: str


def encode_recovered(
    secret_index: int, candidate: Sequence[int], verified: bool, deal: str
) -> bytes:
    return _canonical_bytes(
        {
            "format_version": FORMAT_VERSION,
            "kind": "recovered",
            "secret_index": secret_index,
            "candidate": [str(v) for v in candidate],
            "verified": verified,
            "deal": deal,
        }
    )


def decode_recovered(data: bytes | str) -> RecoveredFile:
    obj = _load_json(data)
    _expect_kind(obj, "recovered")
    index = _parse_uint(_get(obj, "secret_index"), "secret_index")
    if index < 1:
        raise ValidationError("secret_index is 1-based")
    raw = _get(obj, "candidate")
    if not isinstance(raw, list):
        raise ParseError("candidate must be an array")
    candidate = tuple(_parse_decimal(v, "candidate") for v in raw)
    verified = _get(obj, "verified")
    if not isinstance(verified, bool):
        raise ParseError("verified must be a boolean")
    deal = _get(obj, "deal")
    if not isinstance(deal, str) or not _HEX_DIGEST.match(deal):
        raise ValidationError("deal must be a 64-digit hex digest")
    return RecoveredFile(
        secret_index=index, candidate=candidate, verified=verified, deal=deal
    )


def write_atomic(path: str, data: bytes) -> None:
    """Write a whole file via a temp name and rename, never leaving partials."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mss-tmp-")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
