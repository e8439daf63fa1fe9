"""Command-line front end.

A thin shell over the library: every subcommand builds the same configuration
objects the library exposes and prints/writes their results verbatim, so CLI
output always matches direct library calls.

Exit codes: 0 = PASS / successful run, 1 = FAIL (counterexample written),
2 = usage or configuration error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Optional, Sequence

from .checker import (AdversaryChoice, GridSpec, SimConfig,
                      expected_sweep_pass, required_resolution_bits,
                      run_transmission, sweep_csv, sweep_strobe_reset,
                      verdict_from_transcript, verdict_lines, verify_theorem)
from .receiver import ReceiverParams
from .timebase import ClockSpec, TimingParams, rat


def _rational(text: str) -> Fraction:
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"malformed rational {text!r}: {exc}")


def _hex_message(text: str) -> tuple[int, ...]:
    t = text.strip()
    if not t or len(t) % 2 != 0:
        raise argparse.ArgumentTypeError(
            f"message must be a non-empty even-length hex string, got {text!r}")
    try:
        return tuple(int(t[i:i + 2], 16) for i in range(0, len(t), 2))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid hex message {text!r}")


def _bit_string(text: str) -> tuple[int, ...]:
    if any(ch not in "01" for ch in text):
        raise argparse.ArgumentTypeError(
            f"resolution stream must contain only 0/1, got {text!r}")
    return tuple(int(ch) for ch in text)


def _pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for part in text.split(","):
        try:
            a, b = part.split(":")
            pairs.append((int(a), int(b)))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"pairs must look like '0:2,2:5', got {text!r}")
    return pairs


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--message", type=_hex_message, default=(0xA5,),
                   help="payload bytes as hex, e.g. A5 or DEADBEEF (default A5)")
    p.add_argument("--delta", type=_rational, default=Fraction(1, 200),
                   help="per-cycle clock jitter bound (default 1/200)")
    p.add_argument("--reset", type=int, default=0,
                   help="counter value loaded on sync (default 0)")
    p.add_argument("--strobe", type=int, default=2,
                   help="counter value at which the voted bit is stored (default 2)")
    p.add_argument("--start-cycle", type=int, default=16,
                   help="sender cycle of the first frame bit (default 16)")
    p.add_argument("--k", type=int, default=7,
                   help="sender hold cycles per bit boundary (default 7)")
    p.add_argument("--n", type=int, default=6,
                   help="guaranteed-good samples after each mark (default 6)")


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ratio-count", type=int, default=5,
                   help="clock ratio grid density (default 5)")
    p.add_argument("--phase-count", type=int, default=16,
                   help="receiver phase grid density (default 16)")
    p.add_argument("--max-ones", type=int, default=None,
                   help="cap on ones in enumerated resolution streams "
                        "(explicit enumeration only)")
    p.add_argument("--random-streams", type=int, default=0,
                   help="extra random resolution streams per grid point "
                        "(explicit enumeration only)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the random streams (default 0)")


def _add_output_flags(p: argparse.ArgumentParser, trace: bool = True) -> None:
    if trace:
        p.add_argument("--trace", metavar="PATH",
                       help="write the run/counterexample trace CSV here")
    p.add_argument("--out", metavar="PATH",
                   help="also write the printed result text here")
    p.add_argument("--plot", metavar="PATH",
                   help="render a figure of the result to this image file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bitsync",
        description="FlexRay bit-clock synchronization: exact-time analog/"
                    "digital simulation and exhaustive adversarial checking.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_run = sub.add_parser("run", help="simulate one concrete transmission")
    _add_config_flags(p_run)
    p_run.add_argument("--ratio-s", type=_rational, default=Fraction(1),
                       help="sender clock period ratio (default 1)")
    p_run.add_argument("--ratio-r", type=_rational, default=Fraction(1),
                       help="receiver clock period ratio (default 1)")
    p_run.add_argument("--phase", type=_rational, default=Fraction(0),
                       help="receiver clock phase offset (default 0)")
    p_run.add_argument("--oracle", type=_bit_string, default=(),
                       help="metastability resolution bits, zero-extended")
    _add_output_flags(p_run)

    p_verify = sub.add_parser(
        "verify", help="exhaustively check transmission over the adversary grid")
    _add_config_flags(p_verify)
    _add_grid_flags(p_verify)
    _add_output_flags(p_verify)

    p_sweep = sub.add_parser(
        "sweep", help="verify over a list of reset:strobe counter pairs")
    _add_config_flags(p_sweep)
    _add_grid_flags(p_sweep)
    p_sweep.add_argument("--pairs", type=_pairs,
                         default=[(0, 1), (0, 2), (0, 3), (2, 5), (0, 4), (0, 0)],
                         help="comma list of reset:strobe pairs "
                              "(default 0:1,0:2,0:3,2:5,0:4,0:0)")
    _add_output_flags(p_sweep)

    p_rx = sub.add_parser(
        "check-receiver",
        help="digital-only byte-boundary traversal check (all start states)")
    p_rx.add_argument("--reset", type=int, default=0)
    p_rx.add_argument("--strobe", type=int, default=2)
    _add_output_flags(p_rx, trace=False)

    p_voted = sub.add_parser(
        "check-voted", help="voted-bit forcing check over all pipeline states")
    _add_output_flags(p_voted, trace=False)

    return parser


def _sim_config(args: argparse.Namespace, sclk: ClockSpec,
                rclk: ClockSpec) -> SimConfig:
    return SimConfig(
        tp=TimingParams(delta=args.delta),
        sender_clock=sclk,
        receiver_clock=rclk,
        params=ReceiverParams(reset_value=args.reset, strobe_value=args.strobe),
        message=args.message,
        start_cycle=args.start_cycle,
        k=args.k,
        n=args.n,
    )


def _emit(text: str, out_path: Optional[str]) -> None:
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _cmd_run(args: argparse.Namespace) -> int:
    sclk = ClockSpec(args.ratio_s, Fraction(0))
    rclk = ClockSpec(args.ratio_r, args.phase)
    cfg = _sim_config(args, sclk, rclk)
    need = required_resolution_bits(cfg, args.ratio_s, args.ratio_r, args.phase)
    stream = args.oracle + (0,) * max(0, need - len(args.oracle))
    adv = AdversaryChoice(args.ratio_s, args.ratio_r, args.phase, stream)
    transcript, _ = run_transmission(cfg, adv)
    verdict = verdict_from_transcript(cfg, transcript)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(transcript.csv())
    if args.plot:
        from .reports import plot_trace
        plot_trace(transcript, args.plot)
    _emit("\n".join(verdict_lines(verdict)) + "\n", args.out)
    return 0 if verdict.passed else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = _sim_config(args, ClockSpec(), ClockSpec())
    grid = GridSpec(ratio_count=args.ratio_count, phase_count=args.phase_count,
                    max_ones=args.max_ones, random_streams=args.random_streams,
                    seed=args.seed)
    verdict = verify_theorem(cfg, grid)
    text = "\n".join(verdict_lines(verdict)) + "\n"
    text += f"adversaries_checked={verdict.adversaries_checked} " \
            f"skipped={verdict.skipped}\n"
    ce = verdict.counterexample
    if ce is not None:
        if args.trace:
            with open(args.trace, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(ce.trace)
            text += f"counterexample trace written to {args.trace}\n"
        else:
            text += ce.trace
    elif args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("")
    if args.plot:
        from .reports import plot_trace
        if ce is not None:
            tr, _ = run_transmission(cfg, ce.adversary)
        else:
            base = AdversaryChoice(
                resolution=(0,) * required_resolution_bits(cfg, 1, 1, 0))
            tr, _ = run_transmission(cfg, base)
        plot_trace(tr, args.plot)
    _emit(text, args.out)
    return 0 if verdict.passed else 1


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _sim_config(args, ClockSpec(), ClockSpec())
    grid = GridSpec(ratio_count=args.ratio_count, phase_count=args.phase_count,
                    max_ones=args.max_ones, random_streams=args.random_streams,
                    seed=args.seed)
    rows = sweep_strobe_reset(cfg, args.pairs, grid)
    text = sweep_csv(rows)
    if args.trace:
        traces = [r.counterexample.trace for r in rows
                  if r.counterexample is not None]
        with open(args.trace, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(traces))
    if args.plot:
        from .reports import plot_sweep
        plot_sweep(rows, args.plot)
    _emit(text, args.out)
    ok = all(r.passed == expected_sweep_pass(r.diff) for r in rows)
    return 0 if ok else 1


def _cmd_check_receiver(args: argparse.Namespace) -> int:
    from .checker import check_bss_traversal
    verdict = check_bss_traversal(ReceiverParams(reset_value=args.reset,
                                                 strobe_value=args.strobe))
    _emit("\n".join(verdict_lines(verdict)) + "\n", args.out)
    return 0 if verdict.passed else 1


def _cmd_check_voted(args: argparse.Namespace) -> int:
    from .checker import check_voted_bit
    verdict = check_voted_bit()
    _emit("\n".join(verdict_lines(verdict)) + "\n", args.out)
    return 0 if verdict.passed else 1


_DISPATCH = {
    "run": _cmd_run,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "check-receiver": _cmd_check_receiver,
    "check-voted": _cmd_check_voted,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _DISPATCH[args.subcommand](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
