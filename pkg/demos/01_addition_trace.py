"""
Adding 36 + 23, one production at a time
========================================

The bundled addition model encodes the written problem as one chunk per
digit column and solves it with six rules. Running it prints each firing,
when it happened, and what the model wrote.
"""

from actrsim import Engine
from actrsim.models import load_bundled, written_digits

model = load_bundled("addition.actr")
engine = Engine(model)
trace = engine.run()

# every cycle: match, resolve, fire; the trace keeps all of it
for event in trace.of_kind("Fired"):
    bindings = " ".join(f"{k}={v}" for k, v in event.bindings.items() if k not in ("g", "c", "p"))
    print(f"{event.time:7.3f}s  {event.payload['production']:3s} {bindings}")

print("answer written:", written_digits(engine.environment))
print("halted because:", engine.halt_reason)

# learning happened along the way: P2 fired twice, so it is now stronger
# and its estimated success probability has moved off the prior
p2 = engine.productions["P2"]
print("P2 fired at", [round(e.time, 3) for e in p2.fire_events], "q =", p2.utility.q)

# the same model on 36 + 27 needs the carry rule P5
carry = Engine(load_bundled("addition_carry.actr"))
print("36 + 27:", " ".join(carry.run().fired()), "->", written_digits(carry.environment))
