"""End-to-end command-line behavior, exit codes, and file outputs."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from mss.bulletin import encode_secrets

SRC = Path(__file__).resolve().parents[1] / "src"


def run_cli(*args, cwd=None, env_extra=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = str(SRC) + os.pathsep + env.get("PYTHONPATH", "")
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "mss", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
        env=env,
    )


DEAL_ARGS = [
    "deal",
    "--variant",
    "s1",
    "--n",
    "5",
    "--k",
    "2",
    "--thresholds",
    "2,3",
    "--q",
    "97",
    "--seed",
    "42",
]


@pytest.fixture
def dealt(tmp_path):
    secrets_path = tmp_path / "secrets.json"
    secrets_path.write_bytes(encode_secrets(97, ((7, 9), (1, 2, 3))))
    result = run_cli(
        *DEAL_ARGS, "--secrets", str(secrets_path), "--out-dir", str(tmp_path)
    )
    assert result.returncode == 0, result.stderr
    return tmp_path


class TestDeal:
    def test_writes_bulletin_and_shares(self, dealt):
        assert (dealt / "bulletin.json").exists()
        for j in range(1, 6):
            assert (dealt / f"share_{j}.json").exists()

    def test_prints_count_summary(self, tmp_path):
        secrets_path = tmp_path / "secrets.json"
        secrets_path.write_bytes(encode_secrets(97, ((7, 9), (1, 2, 3))))
        result = run_cli(
            *DEAL_ARGS, "--secrets", str(secrets_path), "--out-dir", str(tmp_path)
        )
        assert "public values:" in result.stdout
        # k matrices + commit matrix, n commitments, k hashes, k constants,
        # offsets (5-2+1) + (5-3+1), extras 2k
        assert "offsets=7" in result.stdout
        assert "extras=4" in result.stdout

    def test_seeded_deal_reproducible(self, tmp_path):
        for sub in ("a", "b"):
            d = tmp_path / sub
            d.mkdir()
            (d / "secrets.json").write_bytes(encode_secrets(97, ((7, 9), (1, 2, 3))))
            result = run_cli(
                *DEAL_ARGS, "--secrets", str(d / "secrets.json"), "--out-dir", str(d)
            )
            assert result.returncode == 0
        for name in ["bulletin.json"] + [f"share_{j}.json" for j in range(1, 6)]:
            assert (tmp_path / "a" / name).read_bytes() == (
                tmp_path / "b" / name
            ).read_bytes()

    def test_env_seed_fallback(self, tmp_path):
        for sub in ("a", "b"):
            d = tmp_path / sub
            d.mkdir()
            (d / "secrets.json").write_bytes(encode_secrets(97, ((7, 9), (1, 2, 3))))
            args = [a for a in DEAL_ARGS if a not in ("--seed", "42")]
            result = run_cli(
                *args,
                "--secrets",
                str(d / "secrets.json"),
                "--out-dir",
                str(d),
                env_extra={"MSS_SEED": "42"},
            )
            assert result.returncode == 0
        assert (tmp_path / "a" / "bulletin.json").read_bytes() == (
            tmp_path / "b" / "bulletin.json"
        ).read_bytes()

    def test_malformed_secrets_file(self, tmp_path):
        bad = tmp_path / "secrets.json"
        bad.write_text("{broken")
        result = run_cli(
            *DEAL_ARGS, "--secrets", str(bad), "--out-dir", str(tmp_path)
        )
        assert result.returncode == 2
        assert not (tmp_path / "bulletin.json").exists()

    def test_wrong_secret_shape(self, tmp_path):
        bad = tmp_path / "secrets.json"
        bad.write_bytes(encode_secrets(97, ((7, 9),)))
        result = run_cli(
            *DEAL_ARGS, "--secrets", str(bad), "--out-dir", str(tmp_path)
        )
        assert result.returncode == 2

    def test_threshold_one_rejected(self, tmp_path):
        secrets_path = tmp_path / "secrets.json"
        secrets_path.write_bytes(encode_secrets(97, ((7,), (1, 2, 3))))
        args = list(DEAL_ARGS)
        args[args.index("2,3")] = "1,3"
        result = run_cli(
            *args, "--secrets", str(secrets_path), "--out-dir", str(tmp_path)
        )
        assert result.returncode == 2


class TestVerifyShare:
    def test_honest_share_exits_zero(self, dealt):
        result = run_cli(
            "verify-share",
            "--bulletin",
            str(dealt / "bulletin.json"),
            "--share",
            str(dealt / "share_1.json"),
        )
        assert result.returncode == 0
        assert "OK" in result.stdout

    def test_flipped_bit_exits_one(self, dealt):
        path = dealt / "share_2.json"
        obj = json.loads(path.read_text())
        bits = list(obj["bits"])
        bits[0] = format(int(bits[0], 16) ^ 8, "x")  # flip the top bit
        obj["bits"] = "".join(bits)
        path.write_text(json.dumps(obj))
        result = run_cli(
            "verify-share",
            "--bulletin",
            str(dealt / "bulletin.json"),
            "--share",
            str(path),
        )
        assert result.returncode == 1

    def test_wrong_deal_exits_one_with_message(self, dealt, tmp_path):
        other = tmp_path / "other"
        other.mkdir()
        (other / "secrets.json").write_bytes(encode_secrets(97, ((7, 9), (1, 2, 3))))
        args = list(DEAL_ARGS)
        args[args.index("42")] = "43"
        result = run_cli(
            *args, "--secrets", str(other / "secrets.json"), "--out-dir", str(other)
        )
        assert result.returncode == 0
        result = run_cli(
            "verify-share",
            "--bulletin",
            str(other / "bulletin.json"),
            "--share",
            str(dealt / "share_1.json"),
        )
        assert result.returncode == 1
        assert "WrongDeal" in result.stderr


class TestRecover:
    def recover(self, dealt, method, secret, shares, out_name):
        return run_cli(
            "recover",
            "--bulletin",
            str(dealt / "bulletin.json"),
            "--secret",
            str(secret),
            "--method",
            method,
            "--out",
            str(dealt / out_name),
            *[str(dealt / f"share_{j}.json") for j in shares],
        )

    def test_all_methods_agree_byte_for_byte(self, dealt):
        payloads = []
        for method in ("vandermonde", "lagrange", "backward"):
            result = self.recover(dealt, method, 2, [1, 2, 3], f"r_{method}.json")
            assert result.returncode == 0, result.stderr
            payloads.append((dealt / f"r_{method}.json").read_bytes())
        assert payloads[0] == payloads[1] == payloads[2]
        report = json.loads(payloads[0])
        assert report["verified"] is True
        assert report["candidate"] == ["1", "2", "3"]

    def test_recovers_dealer_secret(self, dealt):
        result = self.recover(dealt, "lagrange", 1, [4, 5], "r1.json")
        assert result.returncode == 0
        report = json.loads((dealt / "r1.json").read_text())
        assert report["candidate"] == ["7", "9"]
        assert report["verified"] is True

    def test_quorum_too_small(self, dealt):
        result = self.recover(dealt, "vandermonde", 2, [1, 2], "r2.json")
        assert result.returncode == 2
        assert not (dealt / "r2.json").exists()

    def test_backward_requires_consecutive(self, dealt):
        result = self.recover(dealt, "backward", 2, [1, 2, 4], "r3.json")
        assert result.returncode == 2
        assert "NotConsecutive" in result.stderr

    def test_extra_shares_tolerated(self, dealt):
        result = self.recover(dealt, "vandermonde", 2, [1, 2, 3, 4, 5], "r4.json")
        assert result.returncode == 0

    def test_default_output_path(self, dealt):
        result = run_cli(
            "recover",
            "--bulletin",
            str(dealt / "bulletin.json"),
            "--secret",
            "1",
            "--method",
            "backward",
            str(dealt / "share_1.json"),
            str(dealt / "share_2.json"),
            cwd=str(dealt),
        )
        assert result.returncode == 0
        assert (dealt / "recovered_1.json").exists()


class TestVerifySecret:
    def test_good_report_verifies(self, dealt):
        result = TestRecover().recover(dealt, "backward", 1, [1, 2], "r5.json")
        assert result.returncode == 0
        result = run_cli(
            "verify-secret",
            "--bulletin",
            str(dealt / "bulletin.json"),
            "--recovered",
            str(dealt / "r5.json"),
        )
        assert result.returncode == 0

    def test_tampered_candidate_fails(self, dealt):
        result = TestRecover().recover(dealt, "backward", 1, [1, 2], "r6.json")
        assert result.returncode == 0
        path = dealt / "r6.json"
        obj = json.loads(path.read_text())
        obj["candidate"][0] = "8"
        path.write_text(json.dumps(obj))
        result = run_cli(
            "verify-secret",
            "--bulletin",
            str(dealt / "bulletin.json"),
            "--recovered",
            str(path),
        )
        assert result.returncode == 1


class TestCounts:
    def test_table_output(self):
        result = run_cli("counts", "--t", "3", "--k", "4", "--n", "7")
        assert result.returncode == 0
        assert "os12  48" in result.stdout
        assert "os34  53" in result.stdout

    def test_figure1_csv(self):
        result = run_cli("counts", "--figure1")
        assert result.returncode == 0
        lines = result.stdout.strip().split("\n")
        assert lines[0] == "t,k,n,hd,lh,sm,pe,os12,os34"
        assert lines[1] == "3,4,7,28,16,25,23,48,53"
        assert len(lines) == 6


class TestBench:
    def test_csv_structure_and_determinism(self):
        args = [
            "bench",
            "--variant",
            "s1",
            "--n",
            "6",
            "--k",
            "1",
            "--t-range",
            "2,3",
            "--trials",
            "2",
            "--seed",
            "1",
        ]
        a = run_cli(*args)
        b = run_cli(*args)
        assert a.returncode == 0
        lines = a.stdout.strip().split("\n")
        assert lines[0] == "phase,t,trials,median_seconds"
        assert len(lines) == 1 + 5 * 2  # five phases per t value
        strip_time = lambda text: [
            line.rsplit(",", 1)[0] for line in text.strip().split("\n")
        ]
        assert strip_time(a.stdout) == strip_time(b.stdout)
