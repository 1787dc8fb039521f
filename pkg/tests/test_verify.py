"""Verification harness: records, determinism, resume, sharding, CLI."""

import json
import os
import subprocess
import sys

import pytest

from treelap.errors import BadParam
from treelap.verify import (
    CSV_HEADER,
    RunConfig,
    SweepConfig,
    VerifyRecord,
    emit_report,
    record_to_csv,
    record_to_json,
    run_exhaustive,
    run_family_sweep,
)
from treelap.cli import main as cli_main


def test_run_exhaustive_counts_and_zero_violations(tmp_path):
    config = RunConfig(n_min=4, n_max=7, tol=1e-12)
    summary = run_exhaustive(config)
    assert summary.counts_by_n == {4: 2, 5: 3, 6: 6, 7: 11}
    assert summary.trees == 22
    assert summary.violations == 0 and summary.undecided == 0
    assert summary.min_slack == 0.0  # the paths and stars themselves
    # min LE tree at n=4 is the path: every non-path slack is positive
    for rec in summary.records:
        assert rec.checks["conjecture"] is True
        assert rec.slack >= 0.0


def test_min_le_tree_is_path_at_n4():
    summary = run_exhaustive(RunConfig(n_min=4, n_max=4))
    by_le = sorted(summary.records, key=lambda r: r.le)
    assert by_le[0].le < by_le[1].le
    from treelap.families import path
    from treelap.tree import canonical_code

    assert by_le[0].code == canonical_code(path(4)).decode()


def test_record_formats():
    rec = VerifyRecord(
        code="(()())", n=3, diam=2, s=1, sigma=1, le=3.3333333333333335,
        le_err=1e-13, le_path=3.3333333333333335, le_star=3.3333333333333335,
        slack=0.0, checks={"conjecture": True},
    )
    line = record_to_json(rec)
    parsed = json.loads(line)
    assert parsed["code"] == "(()())" and parsed["checks"] == {"conjecture": True}
    assert CSV_HEADER.split(",") == [
        "code", "n", "diam", "s", "sigma", "le", "le_err", "le_path", "le_star", "slack",
    ]
    assert record_to_csv(rec).startswith("(()()),3,2,1,1,")


def test_emit_report_deterministic(tmp_path):
    summary = run_exhaustive(RunConfig(n_min=4, n_max=6))
    p1 = tmp_path / "a.jsonl"
    p2 = tmp_path / "b.jsonl"
    emit_report(summary.records, "jsonl", str(p1))
    summary2 = run_exhaustive(RunConfig(n_min=4, n_max=6))
    emit_report(summary2.records, "jsonl", str(p2))
    assert p1.read_bytes() == p2.read_bytes()
    pcsv = tmp_path / "a.csv"
    emit_report(summary.records, "csv", str(pcsv))
    lines = pcsv.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + summary.trees


def test_resume_skips_existing_codes(tmp_path):
    sink = tmp_path / "records.jsonl"
    first = run_exhaustive(RunConfig(n_min=5, n_max=5, out=str(sink)))
    assert first.trees == 3
    second = run_exhaustive(RunConfig(n_min=5, n_max=6, out=str(sink)))
    assert second.skipped == 3
    assert second.trees == 6
    codes = [json.loads(x)["code"] for x in sink.read_text().splitlines()]
    assert len(codes) == len(set(codes)) == 9


def test_sharding_merges_to_full_run():
    full = run_exhaustive(RunConfig(n_min=7, n_max=7))
    parts = [
        run_exhaustive(RunConfig(n_min=7, n_max=7, shard_index=i, shard_count=3))
        for i in range(3)
    ]
    merged = sorted(r.code for p in parts for r in p.records)
    assert merged == sorted(r.code for r in full.records)
    assert sum(p.trees for p in parts) == full.trees


def test_summary_min_slack_matches_records():
    summary = run_exhaustive(RunConfig(n_min=6, n_max=6))
    assert summary.min_slack == min(r.slack for r in summary.records)


def test_extra_checks_recorded():
    summary = run_exhaustive(RunConfig(n_min=5, n_max=5, checks=("conjecture", "lemma21", "lemma26")))
    for rec in summary.records:
        assert rec.checks["lemma21"] is True
        assert rec.checks["lemma26"] is True


def test_ceiling_guard():
    with pytest.raises(BadParam):
        RunConfig(n_min=4, n_max=17)
    RunConfig(n_min=4, n_max=17, allow_large=True)
    with pytest.raises(BadParam):
        RunConfig(n_min=4, n_max=19, allow_large=True)


def test_family_sweep_small(tmp_path):
    config = SweepConfig(
        tol=1e-9,
        t4_ab=(9, 12),
        tprime_r=(2, 4),
        tprime_s1=(2, 6),
        tdprime_r=(3, 4),
        tdprime_s=(2, 4),
        broom_ab=(1, 6),
        out=str(tmp_path / "sweep.jsonl"),
    )
    summary = run_family_sweep(config)
    assert summary.violations == 0
    rows = [json.loads(x) for x in (tmp_path / "sweep.jsonl").read_text().splitlines()]
    assert {r["family"] for r in rows} >= {"t4_spider", "t_prime", "t_dprime", "double_broom3", "double_broom4"}
    # diameter-4 rows with n >= 19 all certified
    for r in rows:
        if r["family"] in ("t4_spider", "t_prime", "t_dprime") and r["n"] >= 19:
            assert r["holds"] is True
    # double_broom4 (s = 3): condition kicks in exactly at n >= 14
    for r in rows:
        if r["family"] == "double_broom4":
            assert r["thm31_cond"] == (r["n"] >= 14)


class TestCli:
    def run(self, *argv, stdin_text=None, capsys=None):
        import io
        from contextlib import redirect_stdout

        old_stdin = sys.stdin
        buf = io.StringIO()
        try:
            if stdin_text is not None:
                sys.stdin = io.StringIO(stdin_text)
            with redirect_stdout(buf):
                code = cli_main(list(argv))
        finally:
            sys.stdin = old_stdin
        return code, buf.getvalue()

    def test_family_and_spectrum_pipeline(self):
        code, text = self.run("family", "--family", "sns", "--p", "2", "--r", "3", "--s", "2,1,1")
        assert code == 0
        assert text.splitlines()[0] == "10"
        code, payload = self.run("spectrum", "--tol", "1e-10", stdin_text=text)
        assert code == 0
        data = json.loads(payload)
        assert data["n"] == 10 and len(data["eigenvalues"]) == 10
        assert set(data) == {"n", "eigenvalues", "sigma", "le", "le_err"}

    def test_le_and_charpoly(self):
        code, text = self.run("family", "--family", "star", "--n", "4")
        code, payload = self.run("le", stdin_text=text)
        assert json.loads(payload)["le"] == 5.0
        code, payload = self.run("charpoly", stdin_text=text)
        assert json.loads(payload) == [0, -4, 9, -6, 1]

    def test_enumerate_blocks(self):
        code, text = self.run("enumerate", "--n", "4")
        assert code == 0
        blocks = text.strip().split("\n\n")
        assert len(blocks) == 2

    def test_enumerate_sharded_partition(self):
        full = self.run("enumerate", "--n", "8")[1]
        parts = [self.run("enumerate", "--n", "8", "--shards", f"{i}/4")[1] for i in range(4)]
        assert "\n\n".join(p.strip() for p in parts if p.strip()) == full.strip()

    def test_bounds_subcommand(self):
        _, text = self.run("family", "--family", "path", "--n", "6")
        code, payload = self.run("bounds", "--check", "lemma21,lemma26", stdin_text=text)
        assert code == 0
        rows = [json.loads(x) for x in payload.splitlines()]
        assert {r["bound_id"] for r in rows} == {"lemma21", "lemma26"}
        assert all(r["holds"] for r in rows)

    def test_check_conjecture_exit_code(self, tmp_path):
        report = tmp_path / "r.jsonl"
        code, out = self.run(
            "check-conjecture", "--n-min", "4", "--n-max", "6",
            "--report", str(report),
        )
        assert code == 0
        assert report.exists()
        assert "violations: 0" in out

    def test_console_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "treelap", "family", "--family", "path", "--n", "3"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[0] == "3"

    def test_bad_input_exit_one(self):
        code, _ = self.run("spectrum", stdin_text="not a tree")
        assert code == 1
