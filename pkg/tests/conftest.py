"""Shared helpers: the identity-clock baseline run used by several suites."""
from fractions import Fraction

from bitsync import (AdversaryChoice, SimConfig, Transcript,
                     required_resolution_bits, run_transmission)


def baseline_adversary(cfg: SimConfig) -> AdversaryChoice:
    """Identity clocks, zero phase, all-zeros resolution stream."""
    need = required_resolution_bits(cfg, Fraction(1), Fraction(1), Fraction(0))
    return AdversaryChoice(Fraction(1), Fraction(1), Fraction(0), (0,) * need)


def baseline_run(cfg: SimConfig) -> Transcript:
    transcript, _ = run_transmission(cfg, baseline_adversary(cfg))
    return transcript
