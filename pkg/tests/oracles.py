"""Independent reference implementations used by the tests.

Nothing here imports the code under test's algorithms: the matcher oracle
enumerates every chunk tuple, the association oracle recounts a full log.
"""
from __future__ import annotations

import itertools
import math
import operator
from collections import Counter

import numpy as np

from actrsim.declarative import DeclarativeMemory
from actrsim.expr import Compare, Const, Var, WILDCARD
from actrsim.procedural import Guard, Pattern, Production
from actrsim.values import Ref

KINDS = ("goal", "fact", "item")
SLOTS = ("x", "y", "z")
VALUES = (0, 1, 2, "red")
VARS = ("a", "b", "c")
_OPS = {"<": operator.lt, "<=": operator.le, "!=": operator.ne}


# ----------------------------------------------------------------- matcher
def random_instance(rng: np.random.Generator):
    """Memory with a goal plus <= 8 chunks, and <= 5 productions of <= 3 patterns."""
    memory = DeclarativeMemory()
    n_chunks = int(rng.integers(1, 9))
    goal = memory.add_chunk("goal", _random_slots(rng), 0.0)
    for _ in range(n_chunks - 1):
        memory.add_chunk(str(rng.choice(KINDS)), _random_slots(rng), 0.0)
    prods = []
    for p in range(int(rng.integers(1, 6))):
        n_pat = int(rng.integers(1, 4))
        patterns = [_random_pattern(rng, "goal" if i == 0 else str(rng.choice(KINDS)), i)
                    for i in range(n_pat)]
        if n_pat > 1 and rng.random() < 0.25:
            patterns[-1].negated = True
        guards = []
        bound = set().union(*(q.bound_variables() for q in patterns if not q.negated))
        numeric = sorted(bound & set(VARS))
        if numeric and rng.random() < 0.4:
            v = str(rng.choice(numeric))
            op = str(rng.choice(list(_OPS)))
            guards.append(Guard(Compare(Var(v), (op,), (Const(int(rng.integers(0, 3))),))))
        prods.append(Production(f"r{p}", patterns, guards, []))
    return memory, goal, prods


def _random_slots(rng):
    return {s: _pick(rng, VALUES) for s in SLOTS if rng.random() < 0.8}


def _pick(rng, seq):
    return seq[int(rng.integers(0, len(seq)))]


def _random_pattern(rng, kind, index):
    slots = {}
    for s in SLOTS:
        r = rng.random()
        if r < 0.3:
            slots[s] = Var(_pick(rng, VARS))
        elif r < 0.5:
            slots[s] = Const(_pick(rng, VALUES))
        elif r < 0.6:
            slots[s] = WILDCARD
    chunk_var = f"c{index}" if rng.random() < 0.3 else None
    return Pattern(kind, slots, chunk_var)


def _fits(pattern, chunk, bindings):
    """Bindings after checking ``pattern`` against ``chunk``, or None."""
    if chunk.kind != pattern.kind:
        return None
    out = dict(bindings)
    checks = []
    if pattern.chunk_var:
        checks.append((pattern.chunk_var, ("ref", chunk.id)))
    for slot, term in pattern.slots.items():
        if slot not in chunk.slots:
            return None
        value = chunk.slots[slot]
        if isinstance(term, Const) and not (type(value) is type(term.value) and value == term.value):
            return None
        if isinstance(term, Var):
            checks.append((term.name, value))
    for name, value in checks:
        if name in out and not (type(out[name]) is type(value) and out[name] == value):
            return None
        out[name] = value
    return out


def _guard_ok(guard, bindings):
    value = bindings[guard.expr.left.name]
    op = guard.expr.ops[0]
    if op != "!=" and not isinstance(value, int):
        return False  # ordering a symbol against a number is an evaluation error
    return _OPS[op](value, guard.expr.comparators[0].value)


def brute_force_match(memory, goal, prods):
    """Set of ``(production, frozen bindings, matched ids)`` by full tuple enumeration."""
    chunks = list(memory.chunks.values())
    out = []
    for prod in prods:
        positives = [p for p in prod.patterns if not p.negated]
        negatives = [p for p in prod.patterns if p.negated]
        for rest in itertools.product(chunks, repeat=len(positives) - 1):
            combo = (memory[goal],) + rest
            bindings = {}
            for pattern, chunk in zip(positives, combo):
                bindings = _fits(pattern, chunk, bindings)
                if bindings is None:
                    break
            if bindings is None:
                continue
            if not all(_guard_ok(g, bindings) for g in prod.guards):
                continue
            if any(_fits(n, c, bindings) is not None for n in negatives for c in chunks):
                continue
            out.append((prod.name, _freeze(bindings), tuple(c.id for c in combo)))
    return Counter(out)


def _freeze(bindings):
    items = []
    for k, v in bindings.items():
        if isinstance(v, Ref):
            v = ("ref", v.id)
        items.append((k, v))
    return frozenset(items)


def engine_match_set(found):
    return Counter((i.production, _freeze(i.bindings), i.matched) for i in found)


# ------------------------------------------------------------- association
def replay_strength(log, i, j, a=1.0, b=1.0):
    """``s_ij`` recounted from a full log of ``(matched ids, context ids)`` firings."""
    n = len(log)
    n_j = sum(1 for _, ctx in log if j in ctx)
    n_i = sum(1 for m, _ in log if i in m)
    n_ij = sum(1 for m, ctx in log if i in m and j in ctx)
    return math.log((n_ij + a) / (n_j + a + b)) - math.log((n_i + a) / (n + a + b))
