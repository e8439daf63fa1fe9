"""The ``bitsync`` command: argument handling, output text, file side
effects, and exit codes (0 pass, 1 fail, 2 usage/config error)."""
import subprocess
import sys

import pytest

from bitsync.cli import main
from bitsync.receiver import TRACE_HEADER

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
SMALL_GRID = ["--ratio-count", "3", "--phase-count", "4"]


def test_run_identity_clocks(capsys):
    assert main(["run"]) == 0
    assert capsys.readouterr().out == (
        "PASS\nbyte i=0 sent=A5 recv=A5 nu=32 done=79\n")


def test_run_writes_trace_out_and_plot(tmp_path, capsys):
    trace = tmp_path / "trace.csv"
    out = tmp_path / "result.txt"
    plot = tmp_path / "trace.png"
    rc = main(["run", "--trace", str(trace), "--out", str(out),
               "--plot", str(plot)])
    assert rc == 0
    printed = capsys.readouterr().out
    assert out.read_text() == printed
    lines = trace.read_text().splitlines()
    assert lines[0] == TRACE_HEADER
    assert len(lines) == 125  # header + one row per receiver cycle
    assert plot.read_bytes()[:8] == PNG_MAGIC


def test_run_skewed_clocks_still_pass(capsys):
    rc = main(["run", "--message", "55", "--ratio-r", "201/200",
               "--phase", "1/32", "--oracle", "1"])
    assert rc == 0
    assert capsys.readouterr().out.startswith("PASS\n")


def test_run_rejects_ratio_outside_jitter_bound(capsys):
    assert main(["run", "--ratio-s", "11/10"]) == 2
    assert "outside jitter bound" in capsys.readouterr().err


def test_run_rejects_malformed_oracle(capsys):
    assert main(["run", "--oracle", "012"]) == 2
    assert "only 0/1" in capsys.readouterr().err


def test_rejects_unknown_or_missing_subcommand(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_verify_full_grid_output(capsys):
    assert main(["verify", "--message", "55"]) == 0
    assert capsys.readouterr().out == (
        "PASS\n"
        "byte i=0 sent=55 recv=55 nu=32 done=79\n"
        "adversaries_checked=367 skipped=33\n")


def test_verify_pass_truncates_the_trace_file(tmp_path, capsys):
    trace = tmp_path / "ce.csv"
    trace.write_text("stale")
    rc = main(["verify", "--message", "55", "--trace", str(trace)] + SMALL_GRID)
    assert rc == 0
    assert trace.read_text() == ""
    capsys.readouterr()


def test_verify_failure_writes_counterexample(tmp_path, capsys):
    trace = tmp_path / "ce.csv"
    plot = tmp_path / "ce.png"
    rc = main(["verify", "--message", "55", "--strobe", "0",
               "--trace", str(trace), "--plot", str(plot)] + SMALL_GRID)
    assert rc == 1
    printed = capsys.readouterr().out
    assert printed.startswith("FAIL\n")
    assert "lands 5 cycles" in printed
    assert f"counterexample trace written to {trace}" in printed
    body = trace.read_text()
    assert body.startswith("# strobe for byte 0 bit 0 lands 5 cycles")
    assert TRACE_HEADER in body
    assert plot.read_bytes()[:8] == PNG_MAGIC


def test_verify_failure_without_trace_prints_the_counterexample(capsys):
    rc = main(["verify", "--message", "55", "--strobe", "0"] + SMALL_GRID)
    assert rc == 1
    printed = capsys.readouterr().out
    assert TRACE_HEADER in printed  # trace inlined when no --trace path given


def test_sweep_reduced_grid(tmp_path, capsys):
    trace = tmp_path / "ce.csv"
    out = tmp_path / "sweep.csv"
    plot = tmp_path / "sweep.png"
    rc = main(["sweep", "--message", "55", "--pairs", "0:2,0:4",
               "--trace", str(trace), "--out", str(out), "--plot", str(plot)]
              + SMALL_GRID)
    assert rc == 0  # both rows match the design rule (d=2 passes, d=4 fails)
    printed = capsys.readouterr().out
    assert printed == ("reset,strobe,diff,result,adversaries_checked\n"
                       "0,2,2,PASS,33\n"
                       "0,4,4,FAIL,0\n")
    assert out.read_text() == printed
    assert "# strobe for byte 0 bit 0 lands 10 cycles" in trace.read_text()
    assert plot.read_bytes()[:8] == PNG_MAGIC


def test_sweep_rejects_malformed_pairs(capsys):
    assert main(["sweep", "--pairs", "0-2"]) == 2
    capsys.readouterr()


def test_check_receiver_design_point(capsys):
    assert main(["check-receiver"]) == 0
    assert capsys.readouterr().out == "PASS\n2136 traversals\n"


def test_check_receiver_off_design_counter(capsys):
    assert main(["check-receiver", "--strobe", "4"]) == 1
    printed = capsys.readouterr().out
    assert printed.startswith("FAIL\n")
    assert "B0/cnt=5 at 17" in printed


def test_check_voted(tmp_path, capsys):
    out = tmp_path / "voted.txt"
    assert main(["check-voted", "--out", str(out)]) == 0
    assert capsys.readouterr().out == "PASS\n4096 runs x 11 cycles\n"
    assert out.read_text() == "PASS\n4096 runs x 11 cycles\n"


def test_console_script_entry_point():
    proc = subprocess.run(["bitsync", "check-voted"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "PASS\n4096 runs x 11 cycles\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bitsync", "check-receiver"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "PASS\n2136 traversals\n"
