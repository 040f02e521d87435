"""Command-line front end: deal, verify, recover, counts, bench.

Exit codes: 0 success/verified, 1 verification failure, 2 usage or
validation error.  With --seed (or the MSS_SEED environment variable) all
non-timing output is reproducible bit for bit.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bulletin as bio
from .bench import bench_csv, bench_rows
from .counts import FIGURE1_TUPLES, SCHEME_LABELS, counts_csv, public_value_counts
from .errors import MssError, NotConsecutive, QuorumError, WrongDeal
from .field import DEFAULT_PRIME
from .rng import Drbg
from .scheme import (
    SchemeParams,
    Variant,
    compute_shadow,
    assemble_subshadows,
    deal,
    recover_way1_lagrange,
    recover_way1_vandermonde,
    recover_way2,
    verify_secret,
)
from .ajtai import verify_commitment

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


def _seed_for(args) -> int | None:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("MSS_SEED")
    return int(env) if env is not None else None


def _rng_for(args) -> Drbg:
    return Drbg(_seed_for(args))


def _parse_thresholds(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("thresholds must be a comma list of integers")


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma list of integers")


def _read(path: str) -> bytes:
    with open(path, "rb") as handle:
        return handle.read()


def cmd_deal(args) -> int:
    params = SchemeParams(
        variant=Variant(args.variant),
        n=args.n,
        k=args.k,
        thresholds=args.thresholds,
        q=int(args.q),
    )
    secrets = bio.decode_secrets(_read(args.secrets), params.q)
    if len(secrets) != params.k:
        raise MssError(f"secrets file has {len(secrets)} vectors, expected {params.k}")
    for i, vec in enumerate(secrets, start=1):
        if len(vec) != params.thresholds[i - 1]:
            raise MssError(
                f"secret {i} has {len(vec)} components, expected {params.thresholds[i - 1]}"
            )
    shares, board = deal(params, secrets, _rng_for(args))
    deal_digest = bio.deal_id(board)

    os.makedirs(args.out_dir, exist_ok=True)
    outputs = [(os.path.join(args.out_dir, "bulletin.json"), bio.encode_bulletin(board))]
    for share in shares:
        outputs.append(
            (
                os.path.join(args.out_dir, f"share_{share.owner}.json"),
                bio.encode_share(share, deal=deal_digest),
            )
        )
    for path, data in outputs:
        bio.write_atomic(path, data)

    n_offsets = sum(len(per_secret) for per_secret in board.offsets)
    n_extras = sum(len(per_secret) for per_secret in board.extras)
    total = (
        params.k  # mask matrices
        + 1  # commitment matrix
        + params.n  # commitments
        + params.k  # secret hashes
        + len(board.constants)
        + n_offsets
        + n_extras
    )
    print(f"deal {deal_digest[:16]} written to {args.out_dir}")
    print(
        "public values: "
        f"matrices={params.k + 1} commitments={params.n} hashes={params.k} "
        f"constants={len(board.constants)} offsets={n_offsets} extras={n_extras} "
        f"total={total}"
    )
    return EXIT_OK


def cmd_verify_share(args) -> int:
    board = bio.decode_bulletin(_read(args.bulletin))
    share_file = bio.decode_share(_read(args.share))
    try:
        share = bio.bind_share(share_file, board)
    except WrongDeal as exc:
        print(f"FAIL: WrongDeal: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    field = board.params.field()
    commitment = board.commitments[share.owner - 1]
    if verify_commitment(field, board.commit_matrix, share, commitment):
        print(f"share {share.owner}: OK")
        return EXIT_OK
    print(f"share {share.owner}: FAIL", file=sys.stderr)
    return EXIT_VERIFY_FAILED


_METHODS = {
    "vandermonde": recover_way1_vandermonde,
    "lagrange": recover_way1_lagrange,
    "backward": recover_way2,
}


def cmd_recover(args) -> int:
    board = bio.decode_bulletin(_read(args.bulletin))
    params = board.params
    i = args.secret
    t_i = board.threshold(i)
    field = params.field()

    shares = []
    seen_owners = set()
    for path in args.shares:
        share = bio.bind_share(bio.decode_share(_read(path)), board)
        if share.owner in seen_owners:
            raise MssError(f"duplicate share for owner {share.owner}")
        seen_owners.add(share.owner)
        shares.append(share)
    if len(shares) < t_i:
        raise QuorumError(f"secret {i} needs {t_i} shares, got {len(shares)}")

    for share in shares:
        commitment = board.commitments[share.owner - 1]
        if not verify_commitment(field, board.commit_matrix, share, commitment):
            print(f"share {share.owner}: FAIL", file=sys.stderr)
            return EXIT_VERIFY_FAILED

    shares.sort(key=lambda s: s.owner)
    quorum = shares[:t_i]
    if args.method == "backward":
        owners = [s.owner for s in quorum]
        if owners != list(range(owners[0], owners[0] + t_i)):
            raise NotConsecutive(
                "backward recovery needs consecutive participant indices"
            )
    shadows = {s.owner: compute_shadow(board, i, s) for s in quorum}
    subshadows = assemble_subshadows(board, i, shadows)
    candidate = _METHODS[args.method](board, i, subshadows)
    verified = verify_secret(board, i, candidate)

    out_path = args.out or f"recovered_{i}.json"
    bio.write_atomic(
        out_path,
        bio.encode_recovered(i, candidate, verified, bio.deal_id(board)),
    )
    print(f"secret {i}: {'verified' if verified else 'NOT VERIFIED'} -> {out_path}")
    return EXIT_OK if verified else EXIT_VERIFY_FAILED


def cmd_verify_secret(args) -> int:
    board = bio.decode_bulletin(_read(args.bulletin))
    report = bio.decode_recovered(_read(args.recovered))
    if report.deal != bio.deal_id(board):
        print("FAIL: WrongDeal: report belongs to another deal", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    if verify_secret(board, report.secret_index, report.candidate):
        print(f"secret {report.secret_index}: verified")
        return EXIT_OK
    print(f"secret {report.secret_index}: FAIL", file=sys.stderr)
    return EXIT_VERIFY_FAILED


def cmd_counts(args) -> int:
    if args.figure1:
        sys.stdout.write(counts_csv(FIGURE1_TUPLES))
        return EXIT_OK
    counts = public_value_counts(args.t, args.k, args.n)
    print(f"t={args.t} k={args.k} n={args.n}")
    for label in SCHEME_LABELS:
        print(f"{label:>5}  {counts[label]}")
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = bench_rows(
        variant=Variant(args.variant),
        n=args.n,
        k=args.k,
        t_values=args.t_range,
        trials=args.trials,
        seed=_seed_for(args),
    )
    sys.stdout.write(bench_csv(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mss",
        description="Verifiable multi-stage secret sharing with any-order recovery.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deal", help="split secrets into shares and a public bulletin")
    p.add_argument("--variant", choices=[v.value for v in Variant], required=True)
    p.add_argument("--n", type=int, required=True, help="participant count")
    p.add_argument("--k", type=int, required=True, help="secret count")
    p.add_argument("--thresholds", type=_parse_thresholds, required=True)
    p.add_argument("--q", default=str(DEFAULT_PRIME), help="prime modulus (decimal)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--secrets", required=True, help="secrets.json input file")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_deal)

    p = sub.add_parser("verify-share", help="check a share against its commitment")
    p.add_argument("--bulletin", required=True)
    p.add_argument("--share", required=True)
    p.set_defaults(func=cmd_verify_share)

    p = sub.add_parser("recover", help="recover one secret from share files")
    p.add_argument("--bulletin", required=True)
    p.add_argument("--secret", type=int, required=True, help="secret index (1-based)")
    p.add_argument("--method", choices=sorted(_METHODS), required=True)
    p.add_argument("--out", default=None, help="output report path")
    p.add_argument("shares", nargs="+", help="share_<j>.json files")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("verify-secret", help="check a recovery report against the bulletin")
    p.add_argument("--bulletin", required=True)
    p.add_argument("--recovered", required=True)
    p.set_defaults(func=cmd_verify_secret)

    p = sub.add_parser("counts", help="published-value count comparison table")
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--figure1", action="store_true", help="CSV for the reference tuples")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("bench", help="time construction, verification, and recovery")
    p.add_argument("--variant", choices=[v.value for v in Variant], default="s1")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--t-range", type=_parse_int_list, default=(8, 16, 32))
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WrongDeal as exc:
        print(f"FAIL: WrongDeal: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except (MssError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
