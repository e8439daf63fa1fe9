"""Exact-time simulation and exhaustive checking of FlexRay bit-clock
synchronization across independently jittering clock domains.

Layers:

* :mod:`bitsync.timebase` — exact rational clocks, jitter/drift bounds,
  affected-cycle (mark) geometry.
* :mod:`bitsync.analogbus` — piecewise-constant signals with undefined spans,
  the analog register semantics (propagation windows, metastability as an
  explicit resolution oracle), safe sampling windows.
* :mod:`bitsync.sender` — frame encoding (TSS/FSS/BSS/FES framing) and the
  sender's register drive lists.
* :mod:`bitsync.receiver` — the cycle-accurate digital receiver: synchronizer
  pipeline, 5-way voter, edge-synchronized strobe counter, bit automaton.
* :mod:`bitsync.checker` — end-to-end composition, adversary grids, the
  exhaustive resolution-stream engine, parameter sweeps, property suites.
* :mod:`bitsync.reports` — matplotlib figures for traces and sweeps.
* :mod:`bitsync.cli` — the ``bitsync`` command.
"""
from .analogbus import (AnalogRegConfig, AnalogRegister, HalfOpenInterval,
                        OMEGA, OracleUnderrun, ResolutionOracle, Signal,
                        analog_register_signal, bits_to_signal, dump_signal,
                        is_stable_defined, register_output_signal,
                        safe_sampling_window, signal_to_bit)
from .checker import (CERTIFIED_STROBE_SPAN, COMPLETION_OFFSETS,
                      AdversaryChoice, Counterexample,
                      GridSpec, PerByte, SimConfig, SweepRow, Transcript,
                      Verdict, byte_marks, byte_sync_marks,
                      check_analog_transfer,
                      check_bss_traversal, check_mark_soundness,
                      check_voted_bit, completion_offsets,
                      enumerate_adversaries, expected_sweep_pass,
                      required_resolution_bits, run_transmission, sweep_csv,
                      sweep_strobe_reset, verdict_from_transcript,
                      verdict_lines, verify_theorem)
from .receiver import (ReceiverParams, ReceiverState, StepOutputs,
                       majority5_count, majority5_mux, receiver_init,
                       receiver_step, trace_row)
from .sender import (DriveLists, Frame, byte_bits, byte_value, drive_lists,
                     encode_frame, wf_ce, wf_in)
from .timebase import (ClockSpec, NoAffectedCycle, TimingParams,
                       drift_bound_holds, drift_horizon, edge_time,
                       first_affected_cycle, is_affected_cycle,
                       mark_candidates, metastability_factor, rat)

__version__ = "0.1.0"

__all__ = [
    "AdversaryChoice", "AnalogRegConfig", "AnalogRegister", "ClockSpec",
    "Counterexample", "DriveLists", "Frame", "GridSpec", "HalfOpenInterval",
    "NoAffectedCycle", "OMEGA", "OracleUnderrun", "PerByte", "ReceiverParams",
    "ReceiverState", "ResolutionOracle", "Signal", "SimConfig", "StepOutputs",
    "SweepRow", "TimingParams", "Transcript", "Verdict",
    "CERTIFIED_STROBE_SPAN", "COMPLETION_OFFSETS", "analog_register_signal",
    "bits_to_signal",
    "byte_bits", "byte_marks", "byte_sync_marks", "byte_value",
    "check_analog_transfer",
    "check_bss_traversal", "check_mark_soundness", "check_voted_bit",
    "completion_offsets", "drift_bound_holds",
    "drift_horizon", "drive_lists", "dump_signal", "edge_time",
    "encode_frame", "enumerate_adversaries", "expected_sweep_pass",
    "first_affected_cycle", "is_affected_cycle", "is_stable_defined",
    "majority5_count", "majority5_mux", "mark_candidates",
    "metastability_factor", "rat", "receiver_init", "receiver_step",
    "register_output_signal", "required_resolution_bits", "run_transmission",
    "safe_sampling_window", "signal_to_bit", "sweep_csv",
    "sweep_strobe_reset", "trace_row", "verdict_from_transcript",
    "verdict_lines", "verify_theorem", "wf_ce", "wf_in",
]
