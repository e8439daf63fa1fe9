"""Three-valued signals over continuous time and the analog register semantics.

A ``Signal`` is piecewise constant over exact-rational time. A register clocked
at edge ``c`` emits, over the cycle ``]e(c), e(c+1)]``, one of three shapes:

* stable inputs, clock-enable high: old value, then oscillation (Omega) during
  the propagation window, then the newly captured value;
* stable inputs, clock-enable low: the old value throughout;
* unstable inputs (setup/hold window violated): old value, Omega, and finally a
  nondeterministically resolved bit that is stable by the next edge.

Nondeterminism is fed from an explicit ``ResolutionOracle`` bit stream so that
adversarial runs are enumerable and replayable. ``bits_to_signal`` /
``signal_to_bit`` are the digital-to-analog / analog-to-digital bridges.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .timebase import ClockSpec, TimingParams, TimeRat


class _Omega:
    """Unique 'oscillating / undefined' signal value."""

    __slots__ = ()

    def __repr__(self):
        return "OMEGA"


OMEGA = _Omega()
SignalValue = Union[int, _Omega]

_VALID_VALUES = (0, 1, OMEGA)


class OracleUnderrun(ValueError):
    """The adversary's resolution stream ran out of bits (configuration error)."""


class ResolutionOracle:
    """Ordered bit stream consumed at every nondeterministic {0,1} choice.

    Single-consumer: one evaluation run owns the oracle; ``consumed`` counts the
    nondeterministic events so far.
    """

    __slots__ = ("bits", "consumed")

    def __init__(self, bits: Iterable[int] = ()):
        self.bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("oracle bits must be 0/1")
        self.consumed = 0

    def draw(self) -> int:
        if self.consumed >= len(self.bits):
            raise OracleUnderrun(
                f"resolution stream exhausted after {self.consumed} events")
        bit = self.bits[self.consumed]
        self.consumed += 1
        return bit

    def __repr__(self):
        return f"ResolutionOracle({''.join(map(str, self.bits))!r}, consumed={self.consumed})"


class Signal:
    """Piecewise-constant signal: breakpoint ``(t, v)`` means ``v`` holds on the
    left-open/right-closed span from ``t`` to the next breakpoint (or to ``end``).
    Before the first breakpoint, and past ``end``, the value is Omega.
    ``end=None`` lets the last value hold forever (constant tails)."""

    __slots__ = ("points", "end", "_starts")

    def __init__(self, points: Iterable[tuple[TimeRat, SignalValue]],
                 end: Optional[TimeRat] = None):
        pts = tuple((Fraction(t), v) for t, v in points)
        if not pts:
            raise ValueError("signal needs at least one breakpoint")
        for (t0, v), (t1, _) in zip(pts, pts[1:]):
            if t0 >= t1:
                raise ValueError("breakpoints must be strictly increasing")
        for _, v in pts:
            if v not in _VALID_VALUES:
                raise ValueError(f"signal value must be 0, 1 or OMEGA, got {v!r}")
        self.points = pts
        self.end = None if end is None else Fraction(end)
        if self.end is not None and self.end <= pts[-1][0]:
            raise ValueError("end must lie past the last breakpoint")
        self._starts = tuple(t for t, _ in pts)

    @classmethod
    def constant(cls, value: SignalValue, start: TimeRat = Fraction(-4),
                 end: Optional[TimeRat] = None) -> "Signal":
        """A constant signal from ``start`` on (default: before any simulated time)."""
        return cls(((start, value),), end=end)

    def value_at(self, t: TimeRat) -> SignalValue:
        i = bisect_left(self._starts, t) - 1
        if i < 0:
            return OMEGA
        if i == len(self._starts) - 1 and self.end is not None and t > self.end:
            return OMEGA
        return self.points[i][1]

    def __repr__(self):
        inner = ", ".join(f"{t}:{'X' if v is OMEGA else v}" for t, v in self.points)
        return f"Signal([{inner}], end={self.end})"


def is_stable_defined(t1: TimeRat, t2: TimeRat, s: Signal) -> bool:
    """True iff s is constant and non-Omega on the closed interval [t1, t2]."""
    if t1 > t2:
        raise ValueError(f"need t1 <= t2, got {t1} > {t2}")
    v = s.value_at(t1)
    if v is OMEGA:
        return False
    if s.end is not None and t2 > s.end:
        return False
    # every span starting inside [t1, t2) must carry the same value
    for j in range(bisect_left(s._starts, t1), bisect_left(s._starts, t2)):
        if s.points[j][1] != v:
            return False
    return True


@dataclass(frozen=True)
class AnalogRegConfig:
    """Inputs of one analog register: its clock, clock-enable and data signals,
    the initial output, and the timing constants."""

    clock: ClockSpec
    ce: Signal
    input: Signal
    out0: int
    tp: TimingParams

    def __post_init__(self):
        if self.out0 not in (0, 1):
            raise ValueError("initial register output must be 0 or 1")


class AnalogRegister:
    """Cycle-by-cycle evaluator for the three-branch register semantics.

    The definition recurses on the previous cycle's end value; this evaluator
    walks cycles in order and memoizes those end values, consuming oracle bits
    as metastable cycles occur. Cycle signals must therefore be requested in
    non-decreasing cycle order for a given oracle to stay meaningful.
    """

    def __init__(self, cfg: AnalogRegConfig):
        self.cfg = cfg
        self._end_value: dict[int, int] = {-1: cfg.out0}
        self._signals: dict[int, Signal] = {}
        self._next = 0

    def cycle_signal(self, c: int, oracle: ResolutionOracle) -> Signal:
        if c < 0:
            raise ValueError("cycle must be >= 0")
        while self._next <= c:
            self._signals[self._next] = self._build(self._next, oracle)
            self._next += 1
        return self._signals[c]

    def end_value(self, c: int, oracle: ResolutionOracle) -> int:
        """Register output at e(c+1), i.e. what a sampler sees at cycle end."""
        self.cycle_signal(c, oracle)
        return self._end_value[c]

    def _build(self, c: int, oracle: ResolutionOracle) -> Signal:
        cfg = self.cfg
        clock, tp = cfg.clock, cfg.tp
        e = clock.edge(c)
        tau = clock.ratio
        if c == 0:
            sig = Signal(((e, cfg.out0),), end=clock.edge(1))
            self._end_value[0] = cfg.out0
            return sig
        ts, th = tp.t_s * tau, tp.t_h * tau
        tpmin, tpmax = tp.t_pmin * tau, tp.t_pmax * tau
        prev = self._end_value[c - 1]
        stable = (is_stable_defined(e - ts, e + th, cfg.ce)
                  and is_stable_defined(e - ts, e + th, cfg.input))
        if stable:
            if cfg.ce.value_at(e) == 1:
                new = cfg.input.value_at(e)
                sig = Signal(((e, prev), (e + tpmin, OMEGA), (e + tpmax, new)),
                             end=e + tau)
                self._end_value[c] = new
            else:
                sig = Signal(((e, prev),), end=e + tau)
                self._end_value[c] = prev
        else:
            bit = oracle.draw()
            # resolved bit holds through the cycle end; the single instant
            # tau - t_s before it still reads Omega (left-open spans)
            sig = Signal(((e, prev), (e + tpmin, OMEGA), (e + tau - ts, bit)),
                         end=e + tau)
            self._end_value[c] = bit
        return sig


def analog_register_signal(cfg: AnalogRegConfig, c: int,
                           oracle: ResolutionOracle) -> Signal:
    """The register's output over cycle c, i.e. on ``]e(c), e(c+1)]``.

    Evaluates cycles 0..c in order (the recursion made iterative), consuming one
    oracle bit per metastable cycle encountered along the way.
    """
    return AnalogRegister(cfg).cycle_signal(c, oracle)


def register_output_signal(cfg: AnalogRegConfig, cycles: int,
                           oracle: ResolutionOracle) -> Signal:
    """Concatenate cycles 0..cycles-1 of the register into one signal."""
    if cycles < 1:
        raise ValueError("need at least one cycle")
    reg = AnalogRegister(cfg)
    points: list[tuple[Fraction, SignalValue]] = []
    end = None
    for c in range(cycles):
        sig = reg.cycle_signal(c, oracle)
        for t, v in sig.points:
            if points and points[-1][1] == v:
                continue  # merge equal-valued adjacent spans
            points.append((t, v))
        end = sig.end
    return Signal(points, end=end)


class HalfOpenInterval(tuple):
    """Interval ``]lo : hi]``."""

    __slots__ = ()

    def __new__(cls, lo: TimeRat, hi: TimeRat):
        return super().__new__(cls, (Fraction(lo), Fraction(hi)))

    @property
    def lo(self) -> Fraction:
        return self[0]

    @property
    def hi(self) -> Fraction:
        return self[1]

    def contains(self, t: TimeRat) -> bool:
        return self.lo < t <= self.hi

    def covers(self, a: TimeRat, b: TimeRat) -> bool:
        """Is the closed interval [a, b] inside ]lo : hi]?"""
        return self.lo < a and b <= self.hi


def safe_sampling_window(c: int, k: int, clock: ClockSpec,
                         tp: TimingParams) -> HalfOpenInterval:
    """The span over which a value loaded at edge c and held for k extra cycles
    is guaranteed stable on the wire: ``]e(c)+t_pmax : e(c+k+1)+t_pmin]``
    (delays scaled by the driving clock's period)."""
    if k < 1:
        raise ValueError("need k >= 1")
    tau = clock.ratio
    return HalfOpenInterval(clock.edge(c) + tp.t_pmax * tau,
                            clock.edge(c + k + 1) + tp.t_pmin * tau)


def bits_to_signal(bits: Sequence[int], clock: ClockSpec,
                   tp: TimingParams) -> Signal:
    """Digital-to-analog bridge: bits[i] holds on ``]e(i)+t_h : e(i+1)+t_h]``,
    so a register clocked on edge i+1 reads bits[i] with setup and hold to spare
    (t_s + t_h < tau)."""
    if not bits:
        raise ValueError("bit list must be non-empty")
    shift = tp.t_h * clock.ratio
    points = [(clock.edge(i) + shift, int(b)) for i, b in enumerate(bits)]
    return Signal(points, end=clock.edge(len(bits)) + shift)


def signal_to_bit(s: Signal, t: TimeRat, oracle: ResolutionOracle) -> int:
    """Analog-to-digital bridge: the signal's value if defined at t, otherwise
    the next oracle bit (one nondeterministic event)."""
    v = s.value_at(t)
    if v is OMEGA:
        return oracle.draw()
    return v


def dump_signal(s: Signal, t1: Optional[TimeRat] = None,
                t2: Optional[TimeRat] = None) -> list[str]:
    """Debug dump, one line per breakpoint: ``t_num/t_den VALUE`` with VALUE in
    {0,1,X}, monotone in t. Optionally windowed to breakpoints in [t1, t2]."""

    def fmt(t: Fraction, v: SignalValue) -> str:
        return f"{t.numerator}/{t.denominator} {'X' if v is OMEGA else v}"

    lines = [fmt(t, v) for t, v in s.points
             if (t1 is None or t >= t1) and (t2 is None or t <= t2)]
    if s.end is not None and (t2 is None or s.end <= t2) and (t1 is None or s.end >= t1):
        lines.append(fmt(s.end, OMEGA))
    return lines
