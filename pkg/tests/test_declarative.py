import math

import pytest
from hypothesis import given, settings, strategies as st

from actrsim.association import Context
from actrsim.declarative import (DeclarativeMemory, base_level, recall_probability_from,
                                 retrieval_latency_from)
from actrsim.errors import DanglingReferenceError, DomainError, OrderingError
from actrsim.params import (ConstantDecay, DeclarativeParams, SpacingDecayAS91,
                            SpacingDecayPA08)
from actrsim.values import Ref


def memory(mode=None, **kw):
    return DeclarativeMemory(DeclarativeParams(decay_mode=mode or ConstantDecay(), **kw))


def test_add_chunk_records_creation_as_first_event():
    mem = memory()
    cid = mem.add_chunk("goal", {"op": "add", "a": 36, "b": 23}, 0.0)
    chunk = mem[cid]
    assert [e.time for e in chunk.events] == [0.0]
    assert chunk.creation_time == 0.0
    assert chunk.slots == {"op": "add", "a": 36, "b": 23}


def test_single_event_of_age_one_has_zero_base_activation():
    mem = memory()
    cid = mem.add_chunk("fact", {}, 0.0)
    assert mem.base_activation(cid, 1.0) == 0.0


def test_two_events_ages_one_and_four():
    mem = memory()
    cid = mem.add_chunk("fact", {}, 0.0)
    mem.record_use(cid, 3.0)
    assert mem.base_activation(cid, 4.0) == pytest.approx(math.log(1.5), abs=1e-12)


def test_base_level_empty_and_zero_age():
    assert base_level([], [], 5.0) == -math.inf
    # the only event is at `now`: excluded, so the sum is empty
    assert base_level([5.0], [0.5], 5.0) == -math.inf
    assert base_level([0.0, 5.0], [0.5, 0.5], 5.0) == pytest.approx(math.log(5 ** -0.5))


def test_constant_B_shifts_activation():
    mem = memory(base_B=1.25)
    cid = mem.add_chunk("fact", {}, 0.0)
    assert mem.base_activation(cid, 1.0) == pytest.approx(1.25)


def test_dangling_reference_rejected():
    mem = memory()
    with pytest.raises(DanglingReferenceError):
        mem.add_chunk("fact", {"next": Ref("nowhere")}, 0.0)


def test_negative_time_rejected():
    with pytest.raises(DomainError):
        memory().add_chunk("fact", {}, -1.0)


def test_references_follow_slot_order():
    mem = memory()
    a = mem.add_chunk("x", {}, 0.0)
    b = mem.add_chunk("x", {}, 0.0)
    g = mem.add_chunk("g", {"p": Ref(b), "q": Ref(a), "r": Ref(b), "s": 3}, 0.0)
    assert mem[g].references == [b, a]


def test_load_allows_forward_references():
    mem = memory()
    mem.load([("a", "x", {"next": Ref("b")}), ("b", "x", {"next": Ref("a")})])
    assert mem["a"].references == ["b"]
    with pytest.raises(DanglingReferenceError):
        memory().load([("a", "x", {"next": Ref("zzz")})])


def test_record_use_must_move_forward():
    mem = memory()
    cid = mem.add_chunk("fact", {}, 2.0)
    with pytest.raises(OrderingError):
        mem.record_use(cid, 1.0)
    with pytest.raises(OrderingError):
        mem.record_use(cid, 2.0)


def test_constant_decay_for_every_event():
    mem = memory(ConstantDecay(0.5))
    cid = mem.add_chunk("fact", {}, 0.0)
    for t in (1.0, 2.5, 9.0):
        mem.record_use(cid, t)
    assert {e.decay for e in mem[cid].events} == {0.5}


def test_as91_wide_gap_uses_floor():
    mem = memory(SpacingDecayAS91(d1=0.5, b=0.5))
    cid = mem.add_chunk("fact", {}, 0.0)
    event = mem.record_use(cid, 100.0)
    assert event.decay == 0.5
    assert mem[cid].events[0].decay == 0.5  # first event: d1


def test_as91_short_gap_raises_decay():
    mem = memory(SpacingDecayAS91(d1=0.5, b=1.0))
    cid = mem.add_chunk("fact", {}, 0.0)
    event = mem.record_use(cid, 0.25)
    assert event.decay == pytest.approx(0.25 ** -0.5)


def test_pa08_first_event_uses_alpha_then_previous_activation():
    mode = SpacingDecayPA08(c=0.25, alpha=0.3)
    mem = memory(mode)
    cid = mem.add_chunk("fact", {}, 0.0)
    assert mem[cid].events[0].decay == 0.3
    m = 2.0 ** -0.3  # e**activation just before the use: one trace of age 2, decay 0.3
    event = mem.record_use(cid, 2.0)
    assert event.decay == pytest.approx(0.25 * m + 0.3)


def test_decays_are_fixed_at_creation():
    mem = memory(SpacingDecayPA08())
    cid = mem.add_chunk("fact", {}, 0.0)
    mem.record_use(cid, 1.0)
    before = [e.decay for e in mem[cid].events]
    mem.record_use(cid, 1.5)
    assert [e.decay for e in mem[cid].events[:2]] == before


def test_activation_adds_weighted_strengths():
    mem = memory()
    cid = mem.add_chunk("fact", {}, 0.0)
    j1 = mem.add_chunk("ctx", {}, 0.0)
    j2 = mem.add_chunk("ctx", {}, 0.0)
    base = mem.base_activation(cid, 4.0)
    assert mem.activation(cid, Context(), 4.0, lambda i, j: 9.0) == base
    one = Context(((j1, 1.0),))
    assert mem.activation(cid, one, 4.0, lambda i, j: 0.7) == pytest.approx(base + 0.7)
    two = Context(((j1, 0.5), (j2, 0.5)))
    s = {j1: 1.0, j2: -1.0}
    assert mem.activation(cid, two, 4.0, lambda i, j: s[j]) == pytest.approx(base)


def test_recall_probability_points():
    assert recall_probability_from(0.3, 0.3, 0.4) == 0.5
    assert recall_probability_from(0.3 + 0.4 * math.log(9), 0.3, 0.4) == pytest.approx(0.9)
    assert recall_probability_from(-math.inf, 0.0, 0.4) == 0.0
    assert recall_probability_from(1e6, 0.0, 0.4) == 1.0


def test_retrieval_latency_points():
    assert retrieval_latency_from(0.0, 1.0, 0.05) == pytest.approx(1.05)
    assert retrieval_latency_from(math.log(2), 1.0, 0.0) == pytest.approx(0.5)
    assert retrieval_latency_from(-math.inf, 1.0, 0.05) == math.inf
    assert retrieval_latency_from(-1e6, 1.0, 0.05) == math.inf


def test_set_slots_is_not_a_use():
    mem = memory()
    cid = mem.add_chunk("fact", {"v": 1}, 0.0)
    mem.set_slots(cid, {"v": 2})
    assert mem[cid].slots["v"] == 2 and len(mem[cid].events) == 1


@pytest.mark.parametrize("bad", [dict(retrieval_F=0.0), dict(retrieval_C=-1.0), dict(recall_noise_s=0.0)])
def test_parameter_domains(bad):
    with pytest.raises(DomainError):
        DeclarativeParams(**bad)


@pytest.mark.parametrize("mode", [lambda: ConstantDecay(1.0), lambda: SpacingDecayAS91(0.0, 1.0),
                                  lambda: SpacingDecayAS91(0.5, 0.0), lambda: SpacingDecayPA08(-1, 0.3),
                                  lambda: SpacingDecayPA08(0.2, 1.5)])
def test_decay_mode_domains(mode):
    with pytest.raises(DomainError):
        mode()


# ---------------------------------------------------------------- properties
gaps = st.lists(st.floats(0.01, 100.0), min_size=0, max_size=15)
modes = st.sampled_from([ConstantDecay(0.5), SpacingDecayAS91(0.5, 1.0), SpacingDecayPA08(0.25, 0.3)])


def _history(mode, gap_list, start=0.0):
    mem = memory(mode)
    cid = mem.add_chunk("item", {}, start)
    t = start
    for g in gap_list:
        t += g
        mem.record_use(cid, t)
    return mem, cid, t


@settings(max_examples=1000, deadline=None)
@given(modes, gaps, st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_activation_decays_after_last_use(mode, gap_list, d1, d2):
    mem, cid, last = _history(mode, gap_list)
    assert mem.base_activation(cid, last + d1) > mem.base_activation(cid, last + d1 + d2)


@settings(max_examples=1000, deadline=None)
@given(modes, gaps, st.floats(0.01, 100.0), st.floats(0.01, 100.0))
def test_practice_never_lowers_later_activation(mode, gap_list, extra, later):
    mem, cid, last = _history(mode, gap_list)
    probe = last + extra + later
    before = mem.base_activation(cid, probe)
    mem.record_use(cid, last + extra)
    assert mem.base_activation(cid, probe) >= before


@settings(max_examples=1000, deadline=None)
@given(st.floats(-20, 20), st.floats(-20, 20))
def test_recall_up_and_latency_down_in_activation(a, b):
    if abs(a - b) < 1e-9:
        return
    lo, hi = min(a, b), max(a, b)
    # s wide enough that the sigmoid has not saturated over the sampled range
    assert recall_probability_from(lo, 0.0, 4.0) < recall_probability_from(hi, 0.0, 4.0)
    assert retrieval_latency_from(lo, 1.0, 0.05) > retrieval_latency_from(hi, 1.0, 0.05)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 100.0), st.floats(0.01, 100.0), st.floats(0.01, 100.0))
def test_pa08_higher_previous_activation_gives_higher_decay(g1, g2, g3):
    # same history, next use after a shorter wait -> higher activation -> larger decay
    mem, cid, last = _history(SpacingDecayPA08(), [g1])
    short, long_ = sorted((g2, g2 + g3))
    m_short = mem.base_activation(cid, last + short)
    m_long = mem.base_activation(cid, last + long_)
    assert m_short > m_long
    mode = SpacingDecayPA08()
    assert mode.c * math.exp(m_short) + mode.alpha > mode.c * math.exp(m_long) + mode.alpha
