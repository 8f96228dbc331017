import json
import subprocess
import sys

import pytest

from radiusseq import cli
from radiusseq import sequences as sq


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstruct:
    def test_prime_strategy_flagship(self, capsys):
        code, out, _ = run_cli(capsys, "construct", "--n", "5", "--k", "2",
                               "--strategy", "prime")
        assert code == 0
        seq = sq.parse_sequence(out)
        assert len(seq) == 7 and seq.n == 5 and seq.k == 2
        assert sq.verify(seq)[0]

    @pytest.mark.parametrize(
        "n,k,strategy",
        [
            (6, 3, "naive"),
            (9, 1, "eulerian"),
            (11, 2, "two-radius"),
            (7, 3, "prime"),
            (20, 2, "tiling"),
        ],
    )
    def test_round_trip_all_strategies(self, capsys, n, k, strategy):
        code, out, _ = run_cli(capsys, "construct", "--n", str(n), "--k", str(k),
                               "--strategy", strategy)
        assert code == 0
        seq = sq.parse_sequence(out)
        assert sq.verify(seq)[0]

    def test_strategy_radius_restrictions(self, capsys):
        code, _, err = run_cli(capsys, "construct", "--n", "5", "--k", "2",
                               "--strategy", "eulerian")
        assert code == 2 and "k=1" in err
        code, _, err = run_cli(capsys, "construct", "--n", "5", "--k", "3",
                               "--strategy", "two-radius")
        assert code == 2

    def test_absence_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "construct", "--n", "5", "--k", "4",
                               "--strategy", "prime", "--horizon", "100000")
        assert code == 1

    def test_shrink_to_requested_alphabet(self, capsys):
        code, out, _ = run_cli(capsys, "construct", "--n", "6", "--k", "2",
                               "--strategy", "prime", "--shrink")
        assert code == 0
        seq = sq.parse_sequence(out)
        assert seq.n == 6
        assert sq.verify(seq)[0]

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "construct", "--n", "5", "--k", "2",
                               "--strategy", "prime", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["length"] == 7 and obj["verified"] and obj["p"] == 5

    def test_tiling_json_report(self, capsys):
        code, out, _ = run_cli(capsys, "construct", "--n", "20", "--k", "2",
                               "--strategy", "tiling", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert {"subgroup_order", "translate_count", "cover_size"} <= set(obj["report"])

    def test_output_and_cover_files(self, tmp_path, capsys):
        seq_file = tmp_path / "seq.txt"
        cover_file = tmp_path / "cover.txt"
        code, _, _ = run_cli(capsys, "construct", "--n", "7", "--k", "3",
                             "--strategy", "prime",
                             "--output", str(seq_file),
                             "--cover-out", str(cover_file))
        assert code == 0
        seq = sq.parse_sequence(seq_file.read_text())
        assert sq.verify(seq)[0]
        from radiusseq import covers as cv
        plan = cv.parse_cover(cover_file.read_text())
        assert plan.p == 7 and plan.k == 3


class TestVerify:
    def test_ok_and_failure_exit_codes(self, tmp_path, capsys):
        good = tmp_path / "good.txt"
        good.write_text("n=5 k=2\n0 1 2 3 4 0 1\n")
        code, out, _ = run_cli(capsys, "verify", "--input", str(good))
        assert code == 0 and out.startswith("ok")
        bad = tmp_path / "bad.txt"
        bad.write_text("n=3 k=1\n0 1 2\n")
        code, out, _ = run_cli(capsys, "verify", "--input", str(bad))
        assert code == 1 and "missing" in out

    def test_flags_override_header(self, tmp_path, capsys):
        f = tmp_path / "seq.txt"
        f.write_text("n=3 k=1\n0 1 2\n")
        code, _, _ = run_cli(capsys, "verify", "--input", str(f), "--k", "2")
        assert code == 0

    def test_json_missing_pairs(self, tmp_path, capsys):
        f = tmp_path / "seq.txt"
        f.write_text("n=3 k=1\n0 1 2\n")
        code, out, _ = run_cli(capsys, "verify", "--input", str(f),
                               "--format", "json")
        assert code == 1
        assert json.loads(out)["missing"] == [[0, 2]]


class TestLogs:
    def test_count_known_value(self, capsys):
        code, out, _ = run_cli(capsys, "logs", "count", "--k", "13",
                               "--class", "log")
        assert code == 0 and out.strip() == "936"

    def test_count_workers_identical(self, capsys):
        _, out1, _ = run_cli(capsys, "logs", "count", "--k", "14")
        _, out2, _ = run_cli(capsys, "logs", "count", "--k", "14",
                             "--workers", "2")
        assert out1 == out2

    def test_search_output_parses(self, capsys):
        code, out, _ = run_cli(capsys, "logs", "search", "--k", "6",
                               "--class", "special")
        assert code == 0
        from radiusseq import logarithms as lg
        f = lg.parse_logfn(out)
        assert lg.classify(f).is_special_km

    def test_search_absence(self, capsys):
        code, _, _ = run_cli(capsys, "logs", "search", "--k", "4",
                             "--class", "special")
        assert code == 1


class TestPrimesAndDensity:
    def test_next(self, capsys):
        code, out, _ = run_cli(capsys, "primes", "next", "--k", "2")
        assert code == 0 and out.strip() == "5"

    def test_next_absent(self, capsys):
        code, _, _ = run_cli(capsys, "primes", "next", "--k", "4",
                             "--horizon", "50000")
        assert code == 1

    def test_scan_workers_identical(self, capsys):
        _, out1, _ = run_cli(capsys, "primes", "scan", "--k", "3",
                             "--limit", "3000")
        _, out2, _ = run_cli(capsys, "primes", "scan", "--k", "3",
                             "--limit", "3000", "--workers", "2")
        assert out1 == out2 and out1

    def test_density_csv(self, capsys):
        code, out, _ = run_cli(capsys, "density", "--k", "2",
                               "--limit", "20000", "--format", "csv")
        assert code == 0
        header, row = out.strip().splitlines()
        assert header == "k,limit,primes_scanned,hits,observed,predicted"
        assert row.startswith("2,20000,")

    def test_density_json(self, capsys):
        code, out, _ = run_cli(capsys, "density", "--k", "4",
                               "--limit", "20000", "--format", "json")
        obj = json.loads(out)
        assert code == 0 and obj["hits"] == 0 and obj["predicted"] == 0


class TestTilingCheck:
    def test_check(self, capsys):
        code, out, _ = run_cli(capsys, "tiling", "check", "--k", "6",
                               "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["bijective"] and obj["r"] == 3


class TestDeterminism:
    def test_byte_identical_reports(self, capsys):
        args = ("construct", "--n", "20", "--k", "2", "--strategy", "tiling",
                "--format", "json")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "radiusseq", "logs", "count", "--k", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "8"
