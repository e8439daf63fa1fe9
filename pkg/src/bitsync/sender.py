"""Frame encoding and the per-cycle digital drive lists feeding the sender's
output register.

Frame layout: one TSS bit (0), one FSS bit (1), then per byte a BSS pair (1,0)
followed by the eight data bits msb-first, and finally FES (0,1). Every frame
bit is driven for eight sender cycles; the output register's clock-enable is
high only on the first cycle of each bit, so the wire is guaranteed stable for
the seven hold cycles that follow.

List indexing follows the hardware convention: list element ``xs[c-1]`` is the
value a register clocked on edge ``c`` captures. ``drive_lists`` therefore
places frame bit j at indices ``c-1+8j .. c-1+8j+7``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

TSS = (0,)
FSS = (1,)
BSS = (1, 0)
FES = (0, 1)


def byte_bits(value: int) -> tuple[int, ...]:
    """Byte as eight bits, b[0] = msb (0xA5 -> 1,0,1,0,0,1,0,1)."""
    if not 0 <= value <= 0xFF:
        raise ValueError(f"byte out of range: {value}")
    return tuple((value >> (7 - i)) & 1 for i in range(8))


def byte_value(bits: Sequence[int]) -> int:
    if len(bits) != 8:
        raise ValueError("need exactly 8 bits")
    out = 0
    for b in bits:
        out = (out << 1) | (b & 1)
    return out


@dataclass(frozen=True)
class Frame:
    """An encoded frame: TSS, FSS, then (BSS, byte) per byte, then FES."""

    bits: tuple[int, ...]
    byte_count: int

    def __post_init__(self):
        if len(self.bits) != 4 + 10 * self.byte_count:
            raise ValueError("frame length must be 2 + 10*l + 2")


def encode_frame(message: Sequence[int]) -> Frame:
    """Encode a byte sequence into a frame bit list."""
    if not message:
        raise ValueError("message must be non-empty")
    bits: list[int] = [*TSS, *FSS]
    for byte in message:
        bits.extend(BSS)
        bits.extend(byte_bits(byte))
    bits.extend(FES)
    return Frame(bits=tuple(bits), byte_count=len(message))


@dataclass(frozen=True)
class DriveLists:
    """Digital inputs of the sender's output register, indexed by sender cycle
    (value captured at edge c sits at index c-1)."""

    in_s: tuple[int, ...]
    ce_s: tuple[int, ...]
    start_cycle: int


def drive_lists(frame: Frame, c: int) -> DriveLists:
    """Expand a frame into in_s / ce_s: each bit held eight cycles, ce high at
    each bit's first cycle. Cycles before the frame idle high with ce low."""
    if c <= 0:
        raise ValueError("start cycle must be > 0")
    nbits = len(frame.bits)
    length = c - 1 + 8 * nbits
    in_s = [1] * length
    ce_s = [0] * length
    for j, bit in enumerate(frame.bits):
        base = c - 1 + 8 * j
        ce_s[base] = 1
        for y in range(8):
            in_s[base + y] = bit
    return DriveLists(in_s=tuple(in_s), ce_s=tuple(ce_s), start_cycle=c)


def wf_ce(ce_s: Sequence[int], l: int, k: int, c: int) -> bool:
    """Well-formedness of the clock-enable list: for every frame bit j of an
    l-byte frame starting at cycle c, ce is 1 at the bit's load index and 0 for
    the k hold slots after it."""
    nbits = 4 + 10 * l
    last = c - 1 + 8 * (nbits - 1) + k
    if last >= len(ce_s):
        raise ValueError("ce list too short for l bytes with k hold cycles")
    for j in range(nbits):
        base = c - 1 + 8 * j
        if ce_s[base] != 1:
            return False
        for m in range(1, k + 1):
            if ce_s[base + m] != 0:
                return False
    return True


def wf_in(in_s: Sequence[int], l: int, c: int) -> bool:
    """Partial well-formedness of the data list: each byte's BSS pair is driven
    as eight ones then eight zeros at the expected cycle offsets. Data bits are
    unconstrained."""
    last = c + 80 * (l - 1) + 24 + 7 - 1
    if last >= len(in_s):
        raise ValueError("input list too short for l bytes")
    for i in range(l):
        for y in range(8):
            if in_s[c + 80 * i + 16 + y - 1] != 1:
                return False
            if in_s[c + 80 * i + 24 + y - 1] != 0:
                return False
    return True
