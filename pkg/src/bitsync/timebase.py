"""Exact-rational time base: clocks, jitter/drift bounds, affected-cycle arithmetic.

Every time in this package is a ``fractions.Fraction``; nothing goes through
floats, so interval-membership questions (does this sampling edge land inside
that settling window?) are decided exactly.

Conventions
-----------
* The reference clock period is 1. A clock's ``ratio`` is its actual period;
  a clock within jitter bound ``delta`` satisfies ``1-delta <= ratio <= 1+delta``.
* ``phase`` shifts all edges: edge ``c`` of a clock occurs at ``phase + c*ratio``.
* Cross-domain scaling: propagation delays (``t_pmin``/``t_pmax``) are fractions
  of the *driving* clock's period, setup/hold (``t_s``/``t_h``) fractions of the
  *sampling* clock's period.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

TimeRat = Fraction


def rat(value) -> Fraction:
    """Parse an exact rational from "1/200", "0.005", ints, or Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass a string or Fraction")
    return Fraction(str(value).strip())


class NoAffectedCycle(ValueError):
    """No receiver edge is affected by the given sender cycle.

    The membership interval has length tau_r - t_pmin*tau_s < tau_r, so exact
    boundary alignments can leave a sender cycle without a mark.
    """


@dataclass(frozen=True)
class ClockSpec:
    """A free-running clock: edge ``c`` at ``phase + c * ratio``."""

    ratio: Fraction = Fraction(1)
    phase: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "ratio", rat(self.ratio))
        object.__setattr__(self, "phase", rat(self.phase))
        if self.ratio <= 0:
            raise ValueError(f"clock period ratio must be positive, got {self.ratio}")
        if self.phase < 0:
            raise ValueError(f"clock phase must be non-negative, got {self.phase}")

    def edge(self, c: int) -> Fraction:
        return self.phase + c * self.ratio


def edge_time(clock: ClockSpec, c: int) -> Fraction:
    """Time of the clock's c-th edge."""
    return clock.edge(c)


@dataclass(frozen=True)
class TimingParams:
    """Register timing constants (as fractions of the owning clock's period)
    plus the per-clock jitter bound delta."""

    t_s: Fraction = Fraction(1, 10)
    t_h: Fraction = Fraction(1, 10)
    t_pmin: Fraction = Fraction(1, 20)
    t_pmax: Fraction = Fraction(7, 20)
    delta: Fraction = Fraction(1, 200)

    def __post_init__(self):
        for name in ("t_s", "t_h", "t_pmin", "t_pmax", "delta"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if not (0 <= self.t_pmin <= self.t_pmax < 1):
            raise ValueError("need 0 <= t_pmin <= t_pmax < 1")
        if not (0 <= self.t_s and 0 <= self.t_h and self.t_s + self.t_h < 1):
            raise ValueError("need t_s, t_h >= 0 and t_s + t_h < 1")
        if not (0 <= self.delta < 1):
            raise ValueError("need 0 <= delta < 1")


def drift_horizon(delta: Fraction) -> Fraction:
    """pi = (1-delta)/(2*delta): cycle horizon over which two in-bound clocks'
    tick counts stay within one of each other. Callers typically use floor(pi)."""
    delta = rat(delta)
    if delta <= 0:
        raise ValueError("drift horizon is unbounded for delta <= 0")
    if delta >= 1:
        raise ValueError("delta must be < 1")
    return (1 - delta) / (2 * delta)


def drift_bound_holds(clock_i: ClockSpec, clock_j: ClockSpec, pi: Fraction) -> bool:
    """pi/(pi+1) <= min(tau_i, tau_j) / max(tau_i, tau_j), exactly."""
    pi = rat(pi)
    lo = min(clock_i.ratio, clock_j.ratio)
    hi = max(clock_i.ratio, clock_j.ratio)
    return pi / (pi + 1) <= lo / hi


def is_affected_cycle(xi: int, c: int, sender: ClockSpec, receiver: ClockSpec,
                      tp: TimingParams) -> bool:
    """Is receiver edge xi the first one influenced by the value the sender
    launches at its edge c?

    Membership test: e_r(xi) + t_h*tau_r  in  ]e_s(c) + t_pmin*tau_s : e_s(c) + tau_r].
    """
    t = receiver.edge(xi) + tp.t_h * receiver.ratio
    lo = sender.edge(c) + tp.t_pmin * sender.ratio
    hi = sender.edge(c) + receiver.ratio
    return lo < t <= hi


def first_affected_cycle(c: int, sender: ClockSpec, receiver: ClockSpec,
                         tp: TimingParams) -> int:
    """The unique receiver cycle xi with is_affected_cycle(xi, c), or raise
    NoAffectedCycle if the alignment leaves none (measure-zero boundary case)."""
    lo = sender.edge(c) + tp.t_pmin * sender.ratio
    hi = sender.edge(c) + receiver.ratio
    offset = receiver.phase + tp.t_h * receiver.ratio
    # smallest xi with offset + xi*tau_r > lo
    xi = math.floor((lo - offset) / receiver.ratio) + 1
    if offset + xi * receiver.ratio <= hi:
        if xi < 0:
            raise NoAffectedCycle(
                f"affected cycle for sender cycle {c} precedes receiver cycle 0")
        return xi
    raise NoAffectedCycle(
        f"no receiver edge is affected by sender cycle {c} at this alignment")


def mark_candidates(xi: int, alpha: int, pi: Fraction) -> set[int]:
    """Possible marks for a sender event alpha cycles after one marked at xi:
    {xi+alpha-1, xi+alpha, xi+alpha+1}, clipped at zero. Requires 0 < alpha <= pi."""
    pi = rat(pi)
    if not 0 < alpha <= pi:
        raise ValueError(f"need 0 < alpha <= pi, got alpha={alpha}, pi={pi}")
    return {xi + alpha + chi for chi in (-1, 0, 1) if xi + alpha + chi >= 0}


def metastability_factor(xi: int, c: int, sender: ClockSpec, receiver: ClockSpec,
                         tp: TimingParams) -> int:
    """1 if the receiver's sampling window at edge xi can straddle the sender's
    settling window for the value launched at sender edge c, else 0.

    Only meaningful when xi is the affected cycle of c: the inequality is
    trivially satisfied by any early-enough xi.
    """
    return int(receiver.edge(xi) - tp.t_s * receiver.ratio
               <= sender.edge(c) + tp.t_pmax * sender.ratio)
