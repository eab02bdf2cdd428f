from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from actrsim.engine import run
from actrsim.errors import TraceFormatError
from actrsim.models import BUNDLED, load_bundled
from actrsim.trace import Trace, TraceEvent
from actrsim.values import Ref


@pytest.mark.parametrize("name", BUNDLED)
def test_text_round_trip(name):
    trace = run(load_bundled(name))
    again = Trace.from_text(trace.to_text())
    assert again.to_text() == trace.to_text()
    assert again.fired() == trace.fired()


def test_line_layout():
    ev = TraceEvent(0.5, "Fired", {"production": "P4", "chunks": ["g", "c1"], "var.z": 9,
                                   "var.g": Ref("g")})
    assert ev.to_line() == "0.500000\tFired\tproduction=P4 chunks=g,c1 var.z=9 var.g=@g"
    back = TraceEvent.from_line(ev.to_line())
    assert back.bindings == {"z": 9, "g": Ref("g")}
    assert back.payload["chunks"] == ["g", "c1"]


def test_slot_values_keep_their_type():
    ev = TraceEvent(1.0, "ExternalAction", {"action": "answer", "slot.x": Fraction(5, 4),
                                            "slot.s": "done", "slot.f": 2.5})
    assert TraceEvent.from_line(ev.to_line()).slots() == {"x": Fraction(5, 4), "s": "done", "f": 2.5}


@pytest.mark.parametrize("line", ["x\tFired\t", "0.1\tBogus\ta=1", "0.1\tFired", "0.1\tFired\tnoeq"])
def test_malformed_lines(line):
    with pytest.raises(TraceFormatError):
        TraceEvent.from_line(line)


def test_of_kind():
    trace = run(load_bundled("addition.actr"))
    assert len(trace.of_kind("ExternalAction")) == 2
    assert trace.of_kind("Halted")[0].payload["reason"] == "done"


@given(st.integers(-10**6, 10**6), st.sampled_from(["done", "start", "a-b", "x.y"]))
def test_values_round_trip(n, sym):
    ev = TraceEvent(2.0, "ChunkWritten", {"op": "create", "chunk": "c-1", "slot.n": n, "slot.s": sym})
    assert TraceEvent.from_line(ev.to_line()).payload == ev.payload
