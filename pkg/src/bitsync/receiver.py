"""Cycle-accurate digital receiver: synchronizer pipeline, 5-way majority
voter, sync/strobe counter, and the frame-traversal automaton with byte
assembly.

Per cycle t the combinational outputs are

* ``v``      — majority over the five oldest pipeline samples (inputs t-2..t-6),
* ``sync``   — ``v`` changed and the automaton is in BSS1 or idle,
* ``strobe`` — the counter equals the strobe value and no sync fires,
* ``rb_we``  — strobe while awaiting the last data bit: the byte completes.

On sync the counter reloads the reset value, otherwise it counts mod 8. On
strobe the byte shift register captures ``v`` and the automaton advances. Idle
is left when a falling edge syncs (v = 0): that is the TSS detection. Two
strobed-value guards keep the byte boundary honest: in BSS1 a strobed 1 means
the falling edge has not arrived yet, so the automaton stays put, and in BSS0
a strobed 0 means the fall already happened, so it re-enters B0 directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .sender import byte_value

Z_IDLE, Z_TSS, Z_FSS, Z_BSS0, Z_BSS1 = 0, 1, 2, 3, 4
Z_B0, Z_B1, Z_B2, Z_B3, Z_B4, Z_B5, Z_B6, Z_B7 = 5, 6, 7, 8, 9, 10, 11, 12

Z_NAMES = ("idle", "TSS", "FSS", "BSS0", "BSS1",
           "B0", "B1", "B2", "B3", "B4", "B5", "B6", "B7")


@dataclass(frozen=True)
class ReceiverParams:
    """Counter compare values; their difference is the strobe offset after a sync."""

    reset_value: int = 0
    strobe_value: int = 2

    def __post_init__(self):
        if not (0 <= self.reset_value <= 7 and 0 <= self.strobe_value <= 7):
            raise ValueError("counter compare values must be 3-bit")


@dataclass(frozen=True)
class ReceiverState:
    """Registers at a cycle boundary. ``sh4[i]`` is the synchronizer output
    from i+1 cycles ago, so (rRH, *sh4) are the five samples the voter sees."""

    rR: int = 0
    rRH: int = 0
    sh4: tuple[int, int, int, int] = (0, 0, 0, 0)
    v_prev: int = 0
    cnt: int = 0
    z: int = Z_IDLE
    byte_sh: tuple[int, ...] = (0,) * 8
    received: tuple[int, ...] = ()


@dataclass(frozen=True)
class StepOutputs:
    v: int
    sync: int
    strobe: int
    rb_we: int


def majority5_mux(b: Sequence[int]) -> int:
    """The mux-cascade majority circuit, literally: grow a 5-slot vector by
    appending a 1 or prepending a 0 per input bit, then read slot 2."""
    if len(b) != 5:
        raise ValueError("need exactly 5 bits")
    v = [b[0]]
    for bit in b[1:]:
        v = v + [1] if bit else [0] + v
    return v[2]


def majority5_count(b: Sequence[int]) -> int:
    """Independent oracle: 1 iff at least three of the five bits are 1."""
    if len(b) != 5:
        raise ValueError("need exactly 5 bits")
    return int(sum(b) >= 3)


def receiver_init(params: ReceiverParams,
                  initial: Optional[ReceiverState] = None) -> ReceiverState:
    """Default power-on state (all registers zero, idle) or a caller-supplied
    one, passed through unchanged."""
    del params  # compare values live outside the state
    return initial if initial is not None else ReceiverState()


def _advance(z: int) -> int:
    if z == Z_IDLE:
        return Z_IDLE
    if z == Z_B7:
        return Z_BSS0
    return z + 1


def receiver_step(state: ReceiverState, inp: int,
                  params: ReceiverParams) -> tuple[ReceiverState, StepOutputs]:
    """One clock cycle: compute v/sync/strobe/rb_we from the current registers,
    then return the next state."""
    v = majority5_mux((state.rRH,) + state.sh4)
    sync = 1 if (v != state.v_prev and state.z in (Z_BSS1, Z_IDLE)) else 0
    strobe = 1 if (state.cnt == params.strobe_value and not sync) else 0
    rb_we = 1 if (strobe and state.z == Z_B7) else 0

    z = state.z
    byte_sh = state.byte_sh
    received = state.received
    if sync and state.z == Z_IDLE and v == 0:
        z = Z_TSS
    elif strobe:
        byte_sh = state.byte_sh[1:] + (v,)
        if state.z == Z_BSS0:
            z = Z_BSS1 if v == 1 else Z_B0
        elif state.z == Z_BSS1 and v == 1:
            z = Z_BSS1  # falling edge not seen yet: keep waiting for it
        else:
            z = _advance(state.z)
        if rb_we:
            received = received + (byte_value(byte_sh),)

    cnt = params.reset_value if sync else (state.cnt + 1) % 8
    nxt = ReceiverState(
        rR=inp,
        rRH=state.rR,
        sh4=(state.rRH,) + state.sh4[:3],
        v_prev=v,
        cnt=cnt,
        z=z,
        byte_sh=byte_sh,
        received=received,
    )
    return nxt, StepOutputs(v=v, sync=sync, strobe=strobe, rb_we=rb_we)


TRACE_COLUMNS = ("cycle", "inp", "rR", "rRH", "sh4", "v", "sync", "cnt",
                 "strobe", "z", "byte_sh", "rb_we")
TRACE_HEADER = ",".join(TRACE_COLUMNS)


def trace_row(cycle: int, state: ReceiverState, inp: int,
              outs: StepOutputs) -> str:
    """One CSV line: registers at the cycle plus that cycle's outputs."""
    return ",".join(str(x) for x in (
        cycle, inp, state.rR, state.rRH,
        "".join(map(str, state.sh4)),
        outs.v, outs.sync, state.cnt, outs.strobe,
        Z_NAMES[state.z],
        "".join(map(str, state.byte_sh)),
        outs.rb_we,
    ))
