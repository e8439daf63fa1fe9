"""End-to-end adversarial simulation and exhaustive verification.

Composes the sender drive lists, the two analog registers and the sampling
bridge with the digital receiver, then checks — over a finite adversary family
of clock-ratio/phase grid points and *all* metastability resolutions — that
every transmitted byte is received intact and that each byte completes within
the four-cycle window after its expected mark.

Two engines exist on purpose:

* ``run_transmission`` is the honest analog simulation: it builds the wire
  signal cycle by cycle through the register semantics and consumes an explicit
  resolution stream. Used for replays, traces, and spot checks.
* ``verify_theorem`` derives, per clock configuration, which receiver samples
  are geometrically forced and which are metastability-resolved, then explores
  the resolved bits as a branching frontier with state merging. That covers
  every resolution stream implicitly — exhaustive where stream-by-stream
  enumeration would be 2^(2+10l) runs per grid point — and every reported
  counterexample is replayed through ``run_transmission`` before being emitted.
"""
from __future__ import annotations

import itertools
import math
import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .analogbus import (AnalogRegConfig, AnalogRegister, OMEGA, ResolutionOracle,
                        Signal, dump_signal, register_output_signal,
                        safe_sampling_window, bits_to_signal, signal_to_bit)
from .receiver import (ReceiverParams, ReceiverState, StepOutputs, TRACE_HEADER,
                       Z_B0, Z_B7, Z_BSS0, Z_FSS, Z_IDLE, majority5_count,
                       receiver_init, receiver_step, trace_row)
from .sender import byte_bits, drive_lists, encode_frame
from .timebase import (ClockSpec, NoAffectedCycle, TimingParams, drift_horizon,
                       first_affected_cycle, mark_candidates,
                       metastability_factor, rat)

def completion_offsets(params: ReceiverParams) -> tuple[int, int, int, int]:
    """Admissible completion cycles relative to a byte's mark.

    A byte's final strobe lands at mark + 77 + d + chi + beta where
    d = strobe - reset (mod 8), drift chi is in {-1,0,1} and the
    late-detection bit beta is in {0,1} — four consecutive admissible
    offsets. The design point (reset 0, strobe 2) gives {78,79,80,81}.
    """
    d = (params.strobe_value - params.reset_value) % 8
    return (76 + d, 77 + d, 78 + d, 79 + d)


COMPLETION_OFFSETS = completion_offsets(ReceiverParams())


@dataclass(frozen=True)
class SimConfig:
    """One transmission setup: timing constants, baseline clocks, receiver
    counter values, the message, and the hold/sample budget (k, n)."""

    tp: TimingParams = TimingParams()
    sender_clock: ClockSpec = ClockSpec()
    receiver_clock: ClockSpec = ClockSpec()
    params: ReceiverParams = ReceiverParams()
    message: tuple[int, ...] = (0xA5,)
    start_cycle: int = 16
    k: int = 7
    n: int = 6

    def __post_init__(self):
        object.__setattr__(self, "message", tuple(int(b) for b in self.message))
        if not self.message:
            raise ValueError("message must be non-empty")
        if any(not 0 <= b <= 0xFF for b in self.message):
            raise ValueError("message bytes must be in [0, 255]")
        if self.start_cycle <= 0:
            raise ValueError("start cycle must be > 0")
        if not self.n + 1 <= self.k:
            raise ValueError("need n + 1 <= k")
        if self.tp.delta > 0 and self.k > math.floor(drift_horizon(self.tp.delta)):
            raise ValueError("k exceeds the drift horizon")
        for clk in (self.sender_clock, self.receiver_clock):
            if not (1 - self.tp.delta <= clk.ratio <= 1 + self.tp.delta):
                raise ValueError(f"clock ratio {clk.ratio} outside jitter bound")


@dataclass(frozen=True)
class AdversaryChoice:
    """One resolved source of nondeterminism: concrete clock ratios and phase
    plus the bit stream consumed at metastability events."""

    sender_ratio: Fraction = Fraction(1)
    receiver_ratio: Fraction = Fraction(1)
    receiver_phase: Fraction = Fraction(0)
    resolution: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sender_ratio", rat(self.sender_ratio))
        object.__setattr__(self, "receiver_ratio", rat(self.receiver_ratio))
        object.__setattr__(self, "receiver_phase", rat(self.receiver_phase))
        object.__setattr__(self, "resolution", tuple(int(b) for b in self.resolution))

    def clocks(self) -> tuple[ClockSpec, ClockSpec]:
        return (ClockSpec(self.sender_ratio, Fraction(0)),
                ClockSpec(self.receiver_ratio, self.receiver_phase))


@dataclass(frozen=True)
class GridSpec:
    """Finite adversary family: how densely to sample ratios and phases, and
    how to grow the enumerated resolution prefixes (for the explicit API)."""

    ratio_count: int = 5
    phase_count: int = 16
    max_ones: Optional[int] = None
    random_streams: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.ratio_count < 1 or self.phase_count < 1:
            raise ValueError("grid densities must be >= 1")

    def ratios(self, delta: Fraction) -> tuple[Fraction, ...]:
        delta = rat(delta)
        if self.ratio_count == 1 or delta == 0:
            return (Fraction(1),)
        step = 2 * delta / (self.ratio_count - 1)
        pts = [1 - delta + i * step for i in range(self.ratio_count)]
        return tuple(dict.fromkeys(pts))

    def phases(self, period: Fraction) -> tuple[Fraction, ...]:
        return tuple(j * period / self.phase_count for j in range(self.phase_count))


@dataclass(frozen=True)
class PerByte:
    index: int
    sent: int
    received: int
    nu: int
    completion: int
    offset: int


@dataclass(frozen=True)
class Counterexample:
    adversary: AdversaryChoice
    trace: str


@dataclass
class Verdict:
    passed: bool
    per_byte: tuple[PerByte, ...] = ()
    counterexample: Optional[Counterexample] = None
    adversaries_checked: int = 0
    skipped: int = 0
    observed_offsets: tuple[frozenset, ...] = ()
    detail: str = ""


@dataclass
class Transcript:
    """Full per-cycle record of one honest run."""

    rows: tuple[str, ...]
    received: tuple[int, ...]
    completions: tuple[int, ...]
    nus: Optional[tuple[int, ...]]
    sent: tuple[int, ...]
    steps: int
    sender_clock: ClockSpec
    receiver_clock: ClockSpec
    bus: Signal

    def csv(self) -> str:
        return "\n".join((TRACE_HEADER,) + self.rows) + "\n"


# ---------------------------------------------------------------------------
# geometry shared by both engines


def _num_receiver_steps(cfg: SimConfig, sclk: ClockSpec, rclk: ClockSpec) -> int:
    """Receiver cycles to simulate: ~91 past the last byte's expected mark.

    Mark-free formula (pure geometry) so the honest run, the symbolic engine
    and resolution-stream sizing always agree. Long enough to see the last
    completion window plus the byte commit; short enough that the post-frame
    phantom byte (the missed-sync recovery path never detects frame end)
    cannot complete.
    """
    t_last = sclk.edge(cfg.start_cycle + 16 + 80 * (len(cfg.message) - 1))
    return math.floor((t_last - rclk.phase) / rclk.ratio) + 92


def _symbolic_inputs(cfg: SimConfig, sclk: ClockSpec,
                     rclk: ClockSpec) -> tuple[list, list[int], int]:
    """Per receiver cycle, the digitized sample: a forced bit, or None where
    the sampling window straddles a sender settling window and the value is
    resolution-dependent. Returns (inputs, event cycles, step count)."""
    frame = encode_frame(cfg.message)
    bits = frame.bits
    c = cfg.start_cycle
    steps = _num_receiver_steps(cfg, sclk, rclk)
    tp = cfg.tp
    lo_off = tp.t_pmin * sclk.ratio
    hi_off = tp.t_pmax * sclk.ratio
    ts_r = tp.t_s * rclk.ratio
    th_r = tp.t_h * rclk.ratio
    load_times = [sclk.edge(c + 8 * j) for j in range(len(bits))]

    inputs: list = [1]  # cycle 0: the receiver register drives its initial 1
    events: list[int] = []
    for u in range(1, steps):
        t = rclk.edge(u)
        w_lo, w_hi = t - ts_r, t + th_r
        j = bisect_left(load_times, w_hi - lo_off) - 1
        if j >= 0 and w_lo <= load_times[j] + hi_off:
            # sample overlaps the settling window of load j: oracle-resolved
            assert j == 0 or load_times[j - 1] + hi_off < w_lo
            inputs.append(None)
            events.append(u)
            continue
        j0 = bisect_right(load_times, t) - 1
        if j0 < 0:
            inputs.append(1)  # idle-high before the frame
        elif t <= load_times[j0] + lo_off:
            inputs.append(bits[j0 - 1] if j0 >= 1 else 1)
        else:
            assert t > load_times[j0] + hi_off
            inputs.append(bits[j0])
    return inputs, events, steps


def byte_marks(cfg: SimConfig, sclk: ClockSpec, rclk: ClockSpec) -> tuple[int, ...]:
    """The affected receiver cycle of each byte's first BSS edge (its nu)."""
    c = cfg.start_cycle
    return tuple(first_affected_cycle(c + 16 + 80 * i, sclk, rclk, cfg.tp)
                 for i in range(len(cfg.message)))


def required_resolution_bits(cfg: SimConfig, sender_ratio, receiver_ratio,
                             receiver_phase) -> int:
    """How many metastability events one run of this configuration consumes."""
    sclk = ClockSpec(rat(sender_ratio), Fraction(0))
    rclk = ClockSpec(rat(receiver_ratio), rat(receiver_phase))
    _, events, _ = _symbolic_inputs(cfg, sclk, rclk)
    return len(events)


# ---------------------------------------------------------------------------
# honest analog run


def run_transmission(cfg: SimConfig,
                     adv: AdversaryChoice) -> tuple[Transcript, ReceiverState]:
    """Simulate one complete transmission under a concrete adversary.

    The sender's register is driven by the frame's drive lists through the
    digital-to-analog bridge; its output is the wire, which the receiver's
    always-enabled register samples. Each receiver cycle's captured value is
    digitized at the cycle end and fed to the digital receiver.
    """
    sclk, rclk = adv.clocks()
    delta = cfg.tp.delta
    for ratio in (sclk.ratio, rclk.ratio):
        if not (1 - delta <= ratio <= 1 + delta):
            raise ValueError(f"adversary ratio {ratio} outside jitter bound")

    frame = encode_frame(cfg.message)
    drives = drive_lists(frame, cfg.start_cycle)
    steps = _num_receiver_steps(cfg, sclk, rclk)

    t_need = rclk.edge(steps) + cfg.tp.t_h * rclk.ratio
    n_sender = max(math.floor(t_need / sclk.ratio) + 4, len(drives.in_s) + 2)
    pad = n_sender - len(drives.in_s)
    in_list = drives.in_s + (1,) * pad   # idle high after FES
    ce_list = drives.ce_s + (0,) * pad

    sender_cfg = AnalogRegConfig(
        clock=sclk,
        ce=bits_to_signal(ce_list, sclk, cfg.tp),
        input=bits_to_signal(in_list, sclk, cfg.tp),
        out0=1,
        tp=cfg.tp,
    )
    # the sender's own inputs always meet setup/hold; an empty oracle proves it
    bus = register_output_signal(sender_cfg, n_sender, ResolutionOracle(()))

    receiver_cfg = AnalogRegConfig(
        clock=rclk,
        ce=Signal.constant(1),
        input=bus,
        out0=1,
        tp=cfg.tp,
    )
    reg = AnalogRegister(receiver_cfg)
    oracle = ResolutionOracle(adv.resolution)

    state = receiver_init(cfg.params)
    rows: list[str] = []
    completions: list[int] = []
    for u in range(steps):
        sig = reg.cycle_signal(u, oracle)
        inp = signal_to_bit(sig, rclk.edge(u + 1), oracle)
        nxt, outs = receiver_step(state, inp, cfg.params)
        rows.append(trace_row(u, state, inp, outs))
        if outs.rb_we:
            completions.append(u)
        state = nxt

    try:
        nus = byte_marks(cfg, sclk, rclk)
    except NoAffectedCycle:
        nus = None
    transcript = Transcript(
        rows=tuple(rows),
        received=state.received,
        completions=tuple(completions),
        nus=nus,
        sent=cfg.message,
        steps=steps,
        sender_clock=sclk,
        receiver_clock=rclk,
        bus=bus,
    )
    return transcript, state


def verdict_from_transcript(cfg: SimConfig, tr: Transcript) -> Verdict:
    """Judge one run: every byte intact, every completion inside its window."""
    if tr.nus is None:
        return Verdict(passed=False,
                       detail="no affected cycle exists for some byte mark "
                              "(hypothesis violated at this alignment)")
    l = len(tr.sent)
    window = completion_offsets(cfg.params)
    per_byte = []
    ok = len(tr.received) == l and len(tr.completions) == l
    for i in range(min(l, len(tr.received), len(tr.completions))):
        off = tr.completions[i] - tr.nus[i]
        per_byte.append(PerByte(index=i, sent=tr.sent[i], received=tr.received[i],
                                nu=tr.nus[i], completion=tr.completions[i],
                                offset=off))
        if tr.received[i] != tr.sent[i] or off not in window:
            ok = False
    detail = "" if ok else (
        f"received {len(tr.received)}/{l} bytes, completions {tr.completions}")
    return Verdict(passed=ok, per_byte=tuple(per_byte), detail=detail)


# ---------------------------------------------------------------------------
# adversary enumeration (explicit API)


def enumerate_adversaries(cfg: SimConfig, grid: GridSpec) -> Iterator[AdversaryChoice]:
    """Cartesian product of ratio grid x ratio grid x phase grid x resolution
    streams.

    The enumerated stream prefix is 2 + 10*l bits (one per frame-bit boundary
    up to the last data byte); events past those (FES-region boundaries at or
    after the last completion, which cannot influence byte values or completion
    cycles) are zero-filled so replays never underrun. Exhaustive coverage of
    *all* events is what ``verify_theorem`` provides symbolically.
    """
    l = len(cfg.message)
    prefix_len = 2 + 10 * l
    rng = random.Random(grid.seed)
    ratios = grid.ratios(cfg.tp.delta)
    for r_s in ratios:
        sclk = ClockSpec(r_s, Fraction(0))
        for r_r in ratios:
            for phase in grid.phases(r_r):
                rclk = ClockSpec(r_r, phase)
                _, events, _ = _symbolic_inputs(cfg, sclk, rclk)
                need = len(events)
                tail = (0,) * max(0, need - prefix_len)
                if grid.max_ones is None:
                    prefixes = itertools.product((0, 1), repeat=prefix_len)
                else:
                    prefixes = _low_weight_streams(prefix_len, grid.max_ones)
                seen = set()
                for p in prefixes:
                    p = tuple(p)
                    seen.add(p)
                    yield AdversaryChoice(r_s, r_r, phase, p + tail)
                for _ in range(grid.random_streams):
                    p = tuple(rng.randint(0, 1) for _ in range(prefix_len))
                    if p in seen:
                        continue
                    seen.add(p)
                    yield AdversaryChoice(r_s, r_r, phase, p + tail)


def _low_weight_streams(length: int, max_ones: int) -> Iterator[tuple[int, ...]]:
    for ones in range(max_ones + 1):
        for positions in itertools.combinations(range(length), ones):
            bits = [0] * length
            for pos in positions:
                bits[pos] = 1
            yield tuple(bits)


# ---------------------------------------------------------------------------
# symbolic exhaustive engine


class _BfsFailure(Exception):
    def __init__(self, u: int, witness: tuple[int, ...], reason: str,
                 certification: bool = False):
        super().__init__(reason)
        self.u = u
        self.witness = witness
        self.reason = reason
        # certification failures (a strobe outside the guaranteed voted-bit
        # window) need not corrupt the replayed run; the others must
        self.certification = certification


def byte_sync_marks(cfg: SimConfig, sclk: ClockSpec,
                    rclk: ClockSpec) -> tuple[int, ...]:
    """The affected receiver cycle of each byte's second BSS edge (its mu).

    The receiver re-synchronizes its strobe counter on this falling edge, so
    every data strobe of byte i is positioned relative to mu_i.
    """
    c = cfg.start_cycle
    return tuple(first_affected_cycle(c + 24 + 80 * i, sclk, rclk, cfg.tp)
                 for i in range(len(cfg.message)))


# Data bit j of a byte is loaded 8*(j+1) sender cycles after the byte's
# second BSS edge.  Its first forced receiver sample therefore starts at
# mu + 8*(j+1) + beta + chi with beta in {0,1} (metastable boundary sample)
# and chi in {-1,0,1} (mark drift within the byte) — four reachable sums
# -1..2.  The vote output is guaranteed to equal the bit on cycles 4..10
# after the first forced sample (seven forced samples, two-stage 5-way
# vote).  Intersecting that span over all four admissible starts leaves
# mu + 8*(j+1) + CERTIFIED_STROBE_SPAN as the positions where a strobe is
# *guaranteed* to read the bit regardless of alignment within the byte.
CERTIFIED_STROBE_SPAN = (6, 9)


def _bfs_check(cfg: SimConfig, sclk: ClockSpec, rclk: ClockSpec,
               nus: Sequence[int], mus: Sequence[int]) -> list[set]:
    """Explore all resolution streams for one clock configuration.

    Raises _BfsFailure with a witness stream prefix if any stream yields a
    wrong byte, a completion outside its window, a byte that never completes,
    or a data strobe outside the certified voted-bit span. Returns the
    per-byte sets of observed completion offsets.
    """
    inputs, _, steps = _symbolic_inputs(cfg, sclk, rclk)
    l = len(cfg.message)
    params = cfg.params
    message = cfg.message
    window = completion_offsets(params)

    deadlines_passed = [0] * (steps + 1)
    for nu in nus:
        if nu + window[-1] + 1 <= steps:
            deadlines_passed[nu + window[-1] + 1] += 1
    req = 0
    required_after = []
    for u in range(steps + 1):
        req += deadlines_passed[u]
        required_after.append(req)

    observed: list[set] = [set() for _ in range(l)]
    frontier: dict[tuple[ReceiverState, int], tuple[int, ...]] = {
        (receiver_init(params), 0): ()
    }
    for u in range(steps):
        inp = inputs[u]
        nxt: dict[tuple[ReceiverState, int], tuple[int, ...]] = {}
        for (st, done), wit in frontier.items():
            if inp is None:
                branches = ((0, wit + (0,)), (1, wit + (1,)))
            else:
                branches = ((inp, wit),)
            for bit, wit2 in branches:
                st2, outs = receiver_step(st, bit, params)
                done2 = done
                if outs.strobe and done < l and Z_B0 <= st.z <= Z_B7:
                    j = st.z - Z_B0
                    p = u - mus[done] - 8 * (j + 1)
                    lo, hi = CERTIFIED_STROBE_SPAN
                    if not lo <= p <= hi:
                        raise _BfsFailure(
                            u, wit2,
                            f"strobe for byte {done} bit {j} lands {p} cycles "
                            f"after the bit's nominal start; only {lo}..{hi} "
                            f"is guaranteed to read the bit for every "
                            f"alignment within the byte",
                            certification=True)
                if outs.rb_we:
                    if done >= l:
                        raise _BfsFailure(u, wit2, "byte committed past end of frame")
                    off = u - nus[done]
                    value = st2.received[-1]
                    if value != message[done]:
                        raise _BfsFailure(
                            u, wit2,
                            f"byte {done} corrupted: sent {message[done]:#04x}, "
                            f"got {value:#04x} (completion offset {off})")
                    if off not in window:
                        raise _BfsFailure(
                            u, wit2,
                            f"byte {done} completed at offset {off}, outside "
                            f"{window[0]}..{window[-1]}")
                    observed[done].add(off)
                    done2 = done + 1
                    st2 = replace(st2, received=())
                key = (st2, done2)
                if key not in nxt:
                    nxt[key] = wit2
        need = required_after[u + 1]
        if need:
            for (st, done), wit in nxt.items():
                if done < need:
                    raise _BfsFailure(
                        u, wit,
                        f"byte {done} did not complete within its window")
        frontier = nxt
    return observed


def _witness_adversary(cfg: SimConfig, sclk: ClockSpec, rclk: ClockSpec,
                       witness: tuple[int, ...]) -> AdversaryChoice:
    _, events, _ = _symbolic_inputs(cfg, sclk, rclk)
    stream = witness + (0,) * (len(events) - len(witness))
    return AdversaryChoice(sclk.ratio, rclk.ratio, rclk.phase, stream)


def _counterexample(cfg: SimConfig, sclk: ClockSpec, rclk: ClockSpec,
                    fail: _BfsFailure) -> tuple[Verdict, Counterexample]:
    adv = _witness_adversary(cfg, sclk, rclk, fail.witness)
    tr, _ = run_transmission(cfg, adv)
    verdict = verdict_from_transcript(cfg, tr)
    if fail.certification:
        # the strobe escaped its guaranteed span; the concrete bytes of this
        # replay may still be right — the trace shows the position violation
        verdict.passed = False
        verdict.detail = fail.reason
    elif verdict.passed:
        raise RuntimeError(
            f"internal inconsistency: replay of witness passed ({fail.reason})")
    t_fail = rclk.edge(fail.u)
    dump = dump_signal(tr.bus, t_fail - 3, t_fail + 3)
    text = "\n".join(
        [f"# {fail.reason}",
         f"# sender_ratio={adv.sender_ratio} receiver_ratio={adv.receiver_ratio} "
         f"receiver_phase={adv.receiver_phase}",
         f"# resolution={''.join(map(str, adv.resolution))}",
         tr.csv().rstrip("\n"),
         "",
         "# wire signal near the failure:"]
        + [f"# {line}" for line in dump]) + "\n"
    verdict.counterexample = Counterexample(adversary=adv, trace=text)
    return verdict, verdict.counterexample


def verify_theorem(cfg: SimConfig, grid: GridSpec) -> Verdict:
    """Check correct transmission over the whole adversary family.

    For every grid clock pair and phase: computes each byte's marks, then
    exhaustively explores all metastability resolutions, requiring (a) each
    byte received equals the byte sent, (b) the byte completes inside
    completion_offsets(cfg.params) relative to its mark, (c) nothing completes
    outside the frame, and (d) every data strobe falls in the span where the
    voted bit is guaranteed correct for every alignment within the byte.
    Alignments where some byte has no mark (hypothesis failure) are counted as
    skipped. First failure returns a replayed counterexample trace.
    """
    ratios = grid.ratios(cfg.tp.delta)
    l = len(cfg.message)
    checked = 0
    skipped = 0
    offsets: list[set] = [set() for _ in range(l)]
    for r_s in ratios:
        sclk = ClockSpec(r_s, Fraction(0))
        for r_r in ratios:
            for phase in grid.phases(r_r):
                rclk = ClockSpec(r_r, phase)
                try:
                    nus = byte_marks(cfg, sclk, rclk)
                    mus = byte_sync_marks(cfg, sclk, rclk)
                except NoAffectedCycle:
                    skipped += 1
                    continue
                try:
                    seen = _bfs_check(cfg, sclk, rclk, nus, mus)
                except _BfsFailure as fail:
                    verdict, _ = _counterexample(cfg, sclk, rclk, fail)
                    verdict.adversaries_checked = checked
                    verdict.skipped = skipped
                    return verdict
                checked += 1
                for i in range(l):
                    offsets[i] |= seen[i]

    baseline = AdversaryChoice(
        Fraction(1), Fraction(1), Fraction(0),
        (0,) * required_resolution_bits(cfg, 1, 1, 0))
    tr, _ = run_transmission(cfg, baseline)
    base = verdict_from_transcript(cfg, tr)
    if not base.passed:
        raise RuntimeError("baseline run failed after exhaustive pass")
    return Verdict(passed=True, per_byte=base.per_byte,
                   adversaries_checked=checked, skipped=skipped,
                   observed_offsets=tuple(frozenset(s) for s in offsets))


# ---------------------------------------------------------------------------
# parameter sweep


@dataclass(frozen=True)
class SweepRow:
    reset_value: int
    strobe_value: int
    diff: int
    passed: bool
    adversaries_checked: int
    counterexample: Optional[Counterexample] = None


def expected_sweep_pass(diff: int) -> bool:
    """The design rule: the strobe must trail the reset by 1..3 cycles."""
    return 1 <= diff <= 3


def sweep_strobe_reset(cfg: SimConfig, pairs: Sequence[tuple[int, int]],
                       grid: GridSpec) -> list[SweepRow]:
    """Run verify_theorem for each (reset, strobe) pair and tabulate."""
    rows = []
    for reset, strobe in pairs:
        cfg2 = replace(cfg, params=ReceiverParams(reset_value=reset,
                                                  strobe_value=strobe))
        verdict = verify_theorem(cfg2, grid)
        rows.append(SweepRow(
            reset_value=reset,
            strobe_value=strobe,
            diff=(strobe - reset) % 8,
            passed=verdict.passed,
            adversaries_checked=verdict.adversaries_checked,
            counterexample=verdict.counterexample,
        ))
    return rows


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    lines = ["reset,strobe,diff,result,adversaries_checked"]
    for r in rows:
        lines.append(f"{r.reset_value},{r.strobe_value},{r.diff},"
                     f"{'PASS' if r.passed else 'FAIL'},{r.adversaries_checked}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# digital-only exhaustive checks


def check_voted_bit() -> Verdict:
    """Seven equal input cycles force the voted bit for cycles 4..10, from any
    of the 2^7 pipeline initializations (and any free tail inputs)."""
    params = ReceiverParams()
    runs = 0
    for b in (0, 1):
        for bits in itertools.product((0, 1), repeat=7):
            rR, rRH, s0, s1, s2, s3, v_prev = bits
            for tail in itertools.product((0, 1), repeat=4):
                st = ReceiverState(rR=rR, rRH=rRH, sh4=(s0, s1, s2, s3),
                                   v_prev=v_prev)
                inputs = (b,) * 7 + tail
                for t in range(11):
                    st, outs = receiver_step(st, inputs[t], params)
                    if 4 <= t <= 10 and outs.v != b:
                        return Verdict(
                            passed=False, adversaries_checked=runs,
                            detail=f"v != {b} at cycle {t} from init {bits}, "
                                   f"tail {tail}")
                runs += 1
    return Verdict(passed=True, adversaries_checked=runs,
                   detail=f"{runs} runs x 11 cycles")


BSS_START_STATES = ((Z_BSS0, 2), (Z_BSS0, 3), (Z_FSS, 1), (Z_FSS, 2),
                    (Z_B7, 1), (Z_B7, 2), (Z_B7, 3), (Z_B7, 4))


def check_bss_traversal(params: ReceiverParams,
                        starts: Sequence[tuple[int, int]] = BSS_START_STATES) -> Verdict:
    """Digital-only byte-boundary traversal. The bus holds 1 from cycle t
    through t+m-1 (m in 7..9: the three alignments the boundary fall can take),
    one free sample follows at t+m, then 0s. Every listed automaton state at t
    must reach B0 carrying the post-strobe counter value at step 15 or 16 for
    the base alignment m = 7, and within [15, 18] across all three alignments.

    Pipeline registers at t range over everything consistent with the input
    history: the data-state starts (B7) admit any register contents, because
    the pre-window samples belong to the previous byte's payload, while the
    byte-start states (BSS0, FSS) sit inside the ones region, which fills the
    pipeline with ones.

    The step windows are the design-point ones (reset 0 / strobe 2);
    off-design counter pairs are expected to miss them — that is the point of
    sweeping.
    """
    expect_cnt = (params.strobe_value + 1) % 8
    runs = 0
    for z0, cnt0 in starts:
        if z0 == Z_B7:
            inits = []
            for bits in itertools.product((0, 1), repeat=6):
                sh4 = bits[2:]
                vps = {majority5_count(sh4 + (x,)) for x in (0, 1)}
                inits.extend((bits[0], bits[1], sh4, vp) for vp in sorted(vps))
        else:
            inits = [(1, 1, (1, 1, 1, 1), 1)]
        for rR0, rRH0, sh40, vp0 in inits:
            for m in (7, 8, 9):
                for free in (0, 1):
                    inputs = [1] * m + [free] + [0] * (17 - m)
                    st = ReceiverState(rR=rR0, rRH=rRH0, sh4=sh40,
                                       v_prev=vp0, cnt=cnt0, z=z0)
                    hit = None
                    for u in range(18):
                        st, _ = receiver_step(st, inputs[u], params)
                        if hit is None and st.z == Z_B0 and st.cnt == expect_cnt:
                            hit = u + 1
                    window = (15, 16) if m == 7 else (15, 16, 17, 18)
                    runs += 1
                    if hit not in window:
                        return Verdict(
                            passed=False, adversaries_checked=runs,
                            detail=f"start (z={z0}, cnt={cnt0}) m={m} "
                                   f"free={free} init=(rR={rR0}, rRH={rRH0}, "
                                   f"sh4={sh40}, v_prev={vp0}): "
                                   f"B0/cnt={expect_cnt} at {hit}, "
                                   f"wanted {window}")
    return Verdict(passed=True, adversaries_checked=runs,
                   detail=f"{runs} traversals")


# ---------------------------------------------------------------------------
# analog-layer property suite


def check_analog_transfer(tp: TimingParams, grid: GridSpec,
                          k: int = 7, n: int = 6) -> Verdict:
    """Single-transition transfer across the clock boundary.

    The sender loads a new bit at cycle c0 and holds it k cycles; for every
    grid clock pair/phase, both resolution branches, and all old/new bit
    combinations, the receiver's register must equal the new bit at the end of
    cycles mark+beta .. mark+beta+n (the n+1 guaranteed-good samples), with all
    those sampling windows inside the safe sampling window.
    """
    if not n + 1 <= k:
        raise ValueError("need n + 1 <= k")
    if tp.delta > 0 and k > math.floor(drift_horizon(tp.delta)):
        raise ValueError("k exceeds the drift horizon")
    c0 = 6
    ratios = grid.ratios(tp.delta)
    checked = 0
    skipped = 0
    for r_s in ratios:
        sclk = ClockSpec(r_s, Fraction(0))
        n_sender = c0 + k + 6
        for r_r in ratios:
            for phase in grid.phases(r_r):
                rclk = ClockSpec(r_r, phase)
                try:
                    xi = first_affected_cycle(c0, sclk, rclk, tp)
                except NoAffectedCycle:
                    skipped += 1
                    continue
                beta = metastability_factor(xi, c0, sclk, rclk, tp)
                ssw = safe_sampling_window(c0, k, sclk, tp)
                for x in range(n + 1):
                    e = rclk.edge(xi + beta + x)
                    if not ssw.covers(e - tp.t_s * rclk.ratio,
                                      e + tp.t_h * rclk.ratio):
                        return Verdict(
                            passed=False, adversaries_checked=checked,
                            detail=f"sampling window {xi + beta + x} escapes the "
                                   f"safe sampling window at ratios "
                                   f"({r_s}, {r_r}), phase {phase}")
                for old, new in itertools.product((0, 1), repeat=2):
                    in_list = [old] * (c0 - 1) + [new] * (n_sender - c0 + 1)
                    ce_list = [0] * n_sender
                    ce_list[c0 - 1] = 1
                    sender_cfg = AnalogRegConfig(
                        clock=sclk,
                        ce=bits_to_signal(ce_list, sclk, tp),
                        input=bits_to_signal(in_list, sclk, tp),
                        out0=old,
                        tp=tp,
                    )
                    bus = register_output_signal(sender_cfg, n_sender,
                                                 ResolutionOracle(()))
                    for branch in (0, 1):
                        reg = AnalogRegister(AnalogRegConfig(
                            clock=rclk, ce=Signal.constant(1), input=bus,
                            out0=old, tp=tp))
                        oracle = ResolutionOracle((branch,) * 2)
                        for x in range(n + 1):
                            got = reg.end_value(xi + beta + x, oracle)
                            if got != new:
                                return Verdict(
                                    passed=False, adversaries_checked=checked,
                                    detail=f"sample {x} after mark reads {got}, "
                                           f"expected {new}: ratios ({r_s}, {r_r}), "
                                           f"phase {phase}, old={old}, "
                                           f"branch={branch}, beta={beta}")
                        if oracle.consumed != beta:
                            return Verdict(
                                passed=False, adversaries_checked=checked,
                                detail=f"expected {beta} resolution events, "
                                       f"saw {oracle.consumed}")
                checked += 1
    return Verdict(passed=True, adversaries_checked=checked, skipped=skipped,
                   detail=f"{checked} clock configurations, k={k}, n={n}")


def check_mark_soundness(tp: TimingParams, grid: GridSpec,
                         alphas: Sequence[int] = (8, 16, 72, 80),
                         c0: int = 16) -> Verdict:
    """The concrete mark of a sender cycle alpha later always lies in the
    three-candidate set predicted from the current mark."""
    pi = drift_horizon(tp.delta)
    ratios = grid.ratios(tp.delta)
    checked = 0
    skipped = 0
    for r_s in ratios:
        sclk = ClockSpec(r_s, Fraction(0))
        for r_r in ratios:
            for phase in grid.phases(r_r):
                rclk = ClockSpec(r_r, phase)
                try:
                    xi = first_affected_cycle(c0, sclk, rclk, tp)
                    nxt = {a: first_affected_cycle(c0 + a, sclk, rclk, tp)
                           for a in alphas}
                except NoAffectedCycle:
                    skipped += 1
                    continue
                for a, xi2 in nxt.items():
                    if xi2 not in mark_candidates(xi, a, pi):
                        return Verdict(
                            passed=False, adversaries_checked=checked,
                            detail=f"mark for +{a} is {xi2}, not in "
                                   f"{sorted(mark_candidates(xi, a, pi))} "
                                   f"(ratios ({r_s}, {r_r}), phase {phase})")
                checked += 1
    return Verdict(passed=True, adversaries_checked=checked, skipped=skipped)


# ---------------------------------------------------------------------------
# serialization


def verdict_lines(verdict: Verdict) -> list[str]:
    lines = ["PASS" if verdict.passed else "FAIL"]
    for row in verdict.per_byte:
        lines.append(f"byte i={row.index} sent={row.sent:02X} "
                     f"recv={row.received:02X} nu={row.nu} done={row.offset}")
    if verdict.detail:
        lines.append(verdict.detail)
    return lines
