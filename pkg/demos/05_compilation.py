"""
Compiling experience into new productions
=========================================

Proceduralization turns one solved episode into a single rule that maps the
problem straight to its answer. Composition folds two rules that fire in
sequence into one, merging their arithmetic.
"""

from actrsim import Engine, Model, compose, proceduralize
from actrsim.modelfile import format_production
from actrsim.models import load_bundled, written_digits

# --- proceduralization: 36 + 23 becomes a fact-like rule
model = load_bundled("addition.actr")
trace = Engine(model).run()
rule = proceduralize(trace)
print(format_production(rule))

solo = Engine(Model(model.parameters, model.chunks, [rule], model.goal))
print("fired:", solo.run().fired(), "wrote", written_digits(solo.environment))

# --- composition: multiply by 5 then divide by 4 becomes multiply by 5/4
eq = load_bundled("equation.actr")
merged = compose(eq.production("multiply-5"), eq.production("divide-4"))
print(format_production(merged))

two_step = Engine(eq)
two_step.run()
one_step = Engine(Model(eq.parameters, eq.chunks, [merged, eq.production("report")], eq.goal))
one_step.run()
print("two steps:", two_step.environment, " one step:", one_step.environment)
