"""
When to stop waiting for a better production
============================================

With the best match so far worth ``V`` and the goal worth ``G``, waiting
``t`` longer is worth an expected ``(G - V)(1 - t(1 - exp(-1/t)))``.
The engine fires the best match once that gain falls to the waiting cost.
"""

import numpy as np

from actrsim.conflict import ValuedMatch, expected_gain, expected_gain_quad, resolve, waiting_window
from actrsim.params import ConflictParams
from actrsim.procedural import Instantiation

G = 20.0
params = ConflictParams(goal_value_G=G, waiting_cost_tau=0.5)

# closed form against direct numerical integration
for V, t in ((10.0, 0.1), (10.0, 1.0), (18.0, 5.0)):
    print(f"V={V:4.1f} t={t:4.1f}: closed {expected_gain(V, G, t):.12f}  quad {expected_gain_quad(V, G, t):.12f}")

# worse current options justify a longer wait
for V in (0.0, 10.0, 15.0, 19.0):
    print(f"best value {V:4.1f}: wait up to {waiting_window(V, G, params):.3f} s")

# three matches arriving over time; the third comes after the window has closed
def arrival(name, value, at):
    return ValuedMatch(Instantiation(name, {}, ("goal",), 0.0, at), value)

window = waiting_window(8.0, G, params)
matches = [arrival("quick", 8.0, 0.05), arrival("better", 15.0, 0.05 + window / 2),
           arrival("too-late", 19.0, 12.0)]
res = resolve(matches, params)
print(f"fires {res.winner.instantiation.production} at {res.fire_time:.3f} s "
      f"after considering {[m.instantiation.production for m in res.considered]}")
print("gain grid is decreasing in t:",
      bool(np.all(np.diff([expected_gain(10.0, G, t) for t in np.logspace(-2, 2, 50)]) < 0)))
