"""Digital receiver: voter circuit, pipeline, sync/strobe/counter equations,
automaton transitions, byte assembly, trace formatting."""
import itertools

import pytest

from bitsync import (ReceiverParams, ReceiverState, majority5_count,
                     majority5_mux, receiver_init, receiver_step, trace_row)
from bitsync.receiver import (TRACE_HEADER, Z_B0, Z_B1, Z_B3, Z_B7, Z_BSS0,
                              Z_BSS1, Z_FSS, Z_IDLE, Z_NAMES, Z_TSS)

P = ReceiverParams()


def test_majority_circuit_equals_counting_oracle_on_all_inputs():
    for bits in itertools.product((0, 1), repeat=5):
        assert majority5_mux(bits) == majority5_count(bits), bits


def test_majority_validates_width():
    with pytest.raises(ValueError):
        majority5_mux((1, 0, 1))
    with pytest.raises(ValueError):
        majority5_count((1,) * 6)


def test_receiver_params_validation():
    with pytest.raises(ValueError):
        ReceiverParams(reset_value=8)
    with pytest.raises(ValueError):
        ReceiverParams(strobe_value=-1)


def test_receiver_init_default_and_passthrough():
    st = receiver_init(P)
    assert st == ReceiverState()
    assert st.z == Z_IDLE and st.cnt == 0
    custom = ReceiverState(z=Z_FSS, cnt=3)
    assert receiver_init(P, custom) is custom


def test_pipeline_shift_and_voter_window():
    # v at step t is the majority of inputs t-2 .. t-6: feed a single 1 and
    # watch it traverse the five voter slots without ever flipping v
    st = receiver_init(P)
    vs = []
    for inp in (1, 0, 0, 0, 0, 0, 0, 0):
        st, outs = receiver_step(st, inp, P)
        vs.append(outs.v)
    assert vs == [0] * 8
    # three consecutive ones force v two cycles after the last entered rRH
    st = receiver_init(P)
    seen = []
    for inp in (1, 1, 1, 0, 0, 0, 0, 0):
        st, outs = receiver_step(st, inp, P)
        seen.append(outs.v)
    assert seen == [0, 0, 0, 0, 1, 1, 1, 0]


def test_sync_requires_bss1_or_idle():
    # same pipeline in B0: a v change must not sync
    base = ReceiverState(rR=0, rRH=0, sh4=(0, 0, 1, 1), v_prev=1)
    for z, expect in ((Z_BSS1, 1), (Z_IDLE, 1), (Z_B0, 0), (Z_BSS0, 0)):
        _, outs = receiver_step(
            ReceiverState(rR=0, rRH=0, sh4=(0, 0, 1, 1), v_prev=1, z=z, cnt=5),
            0, P)
        assert outs.v == 0 and outs.sync == expect, Z_NAMES[z]
    del base


def test_sync_resets_counter_strobe_suppressed():
    # counter sits at the strobe value while a sync fires: the strobe must be
    # suppressed and the counter reloaded
    st = ReceiverState(rR=0, rRH=0, sh4=(0, 0, 1, 1), v_prev=1,
                       z=Z_BSS1, cnt=P.strobe_value)
    nxt, outs = receiver_step(st, 0, P)
    assert outs.sync == 1 and outs.strobe == 0
    assert nxt.cnt == P.reset_value
    # without the sync the same counter value strobes and increments
    st2 = ReceiverState(rR=0, rRH=0, sh4=(0, 0, 1, 1), v_prev=0,
                        z=Z_BSS1, cnt=P.strobe_value)
    nxt2, outs2 = receiver_step(st2, 0, P)
    assert outs2.sync == 0 and outs2.strobe == 1
    assert nxt2.cnt == (P.strobe_value + 1) % 8


def test_counter_wraps_mod_8():
    st = ReceiverState(cnt=7, z=Z_B1)
    nxt, _ = receiver_step(st, 0, P)
    assert nxt.cnt == 0


def test_idle_exits_to_tss_on_falling_sync():
    st = ReceiverState(rR=0, rRH=0, sh4=(0, 0, 1, 1), v_prev=1, z=Z_IDLE, cnt=6)
    nxt, outs = receiver_step(st, 0, P)
    assert outs.sync == 1
    assert nxt.z == Z_TSS
    # a rising change in idle does not leave idle (idle is exited by the
    # falling TSS edge only)
    st2 = ReceiverState(rR=1, rRH=1, sh4=(1, 1, 0, 0), v_prev=0, z=Z_IDLE, cnt=6)
    nxt2, outs2 = receiver_step(st2, 1, P)
    assert outs2.sync == 1 and nxt2.z == Z_IDLE


def _strobing(z, v_bits, cnt=None):
    """A state in z whose strobe this cycle reads the majority of v_bits."""
    rRH, s0, s1, s2, s3 = v_bits
    return ReceiverState(rR=0, rRH=rRH, sh4=(s0, s1, s2, s3),
                         v_prev=majority5_count(v_bits), z=z,
                         cnt=P.strobe_value if cnt is None else cnt)


def test_bss0_strobed_one_advances_to_bss1():
    nxt, outs = receiver_step(_strobing(Z_BSS0, (1, 1, 1, 1, 1)), 0, P)
    assert outs.strobe == 1
    assert nxt.z == Z_BSS1


def test_bss0_strobed_zero_recovers_directly_to_b0():
    # the fall was missed while the automaton was still in BSS0: the strobed 0
    # is the first byte bit, not a frame end
    nxt, outs = receiver_step(_strobing(Z_BSS0, (0, 0, 0, 0, 0)), 0, P)
    assert outs.strobe == 1
    assert nxt.z == Z_B0


def test_bss1_strobed_one_stays_put():
    # a premature counter-wrap strobe in BSS1 still reads the byte-start ones:
    # the falling edge has not arrived, so the automaton keeps waiting
    nxt, outs = receiver_step(_strobing(Z_BSS1, (1, 1, 1, 1, 1)), 1, P)
    assert outs.strobe == 1
    assert nxt.z == Z_BSS1


def test_bss1_strobed_zero_advances_to_b0():
    nxt, outs = receiver_step(_strobing(Z_BSS1, (0, 0, 0, 0, 0)), 0, P)
    assert outs.strobe == 1
    assert nxt.z == Z_B0
    assert nxt.byte_sh[-1] == 0


def test_data_states_advance_and_b7_commits():
    st = _strobing(Z_B0, (1, 1, 1, 0, 0))
    nxt, outs = receiver_step(st, 0, P)
    assert nxt.z == Z_B1 and outs.rb_we == 0
    assert nxt.byte_sh == st.byte_sh[1:] + (1,)

    st7 = ReceiverState(rR=0, rRH=1, sh4=(1, 1, 1, 1), v_prev=1, z=Z_B7,
                        cnt=P.strobe_value,
                        byte_sh=(0, 1, 0, 1, 0, 1, 0, 1), received=(0x00,))
    nxt7, outs7 = receiver_step(st7, 0, P)
    assert outs7.strobe == 1 and outs7.rb_we == 1
    assert nxt7.z == Z_BSS0
    # committed byte: shift register after capturing this strobed 1
    assert nxt7.received == (0x00, 0xAB)  # 10101011


def test_no_strobe_no_byte_shift():
    st = ReceiverState(rR=1, rRH=1, sh4=(1, 1, 1, 1), v_prev=1, z=Z_B3, cnt=0,
                       byte_sh=(1, 0, 1, 0, 1, 0, 1, 0))
    nxt, outs = receiver_step(st, 1, P)
    assert outs.strobe == 0
    assert nxt.byte_sh == st.byte_sh
    assert nxt.z == Z_B3


def test_trace_row_format():
    st = ReceiverState(rR=1, rRH=0, sh4=(1, 1, 0, 0), v_prev=0, cnt=5,
                       z=Z_BSS0, byte_sh=(0, 0, 0, 1, 1, 0, 1, 1))
    row = trace_row(12, st, 1, receiver_step(st, 1, P)[1])
    cells = row.split(",")
    assert len(cells) == len(TRACE_HEADER.split(","))
    assert cells[0] == "12"
    assert cells[4] == "1100"
    assert cells[9] == "BSS0"
    assert cells[10] == "00011011"
