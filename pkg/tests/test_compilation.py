from fractions import Fraction

import pytest

from actrsim.compilation import compose, find_episode, proceduralize
from actrsim.engine import Engine, run
from actrsim.errors import CompositionError, EpisodeError
from actrsim.expr import Const
from actrsim.model import Model
from actrsim.modelfile import format_production, parse_model
from actrsim.models import load_bundled, written_digits
from actrsim.procedural import EmitExternal, Pattern, PopGoal
from actrsim.trace import Trace


@pytest.fixture(scope="module")
def addition_trace():
    return run(load_bundled("addition.actr"))


def test_find_episode_spans_push_to_pop(addition_trace):
    push, events = find_episode(addition_trace)
    assert push.payload["goal"] == "problem"
    assert events[-1].kind == "GoalPopped" and events[-1].payload["goal"] == "problem"


def test_find_episode_by_pattern(addition_trace):
    push, _ = find_episode(addition_trace, Pattern("process", {"col": Const(2)}))
    assert push.slots() == {"col": 2}


def test_incomplete_episode(addition_trace):
    with pytest.raises(EpisodeError):
        proceduralize(Trace(addition_trace[:10]))
    with pytest.raises(EpisodeError):
        find_episode(addition_trace, Pattern("nothing"))


def test_proceduralized_rule_shape(addition_trace):
    rule = proceduralize(addition_trace)
    assert rule.name == "proc-add-36-23-start"
    assert rule.patterns == [Pattern("add", {"a": Const(36), "b": Const(23), "state": Const("start")})]
    assert rule.actions == [EmitExternal("write", {"col": Const(1), "digit": Const(9)}),
                            EmitExternal("write", {"col": Const(2), "digit": Const(5)}),
                            PopGoal()]


def test_proceduralized_rule_alone_reproduces_environment(addition_trace):
    model = load_bundled("addition.actr")
    rule = proceduralize(addition_trace)
    engine = Engine(Model(model.parameters, model.chunks, [rule], model.goal))
    assert engine.run().fired() == [rule.name]
    assert written_digits(engine.environment) == "59"


def test_proceduralized_rule_does_not_fire_on_other_problems(addition_trace):
    rule = proceduralize(addition_trace)
    other = load_bundled("addition_carry.actr")
    engine = Engine(Model(other.parameters, other.chunks, [rule], other.goal))
    engine.run()
    assert engine.halt_reason == "impasse"


def test_compose_multiply_then_divide():
    eq = load_bundled("equation.actr")
    merged = compose(eq.production("multiply-5"), eq.production("divide-4"))
    assert merged.name == "multiply-5-then-divide-4"
    text = format_production(merged)
    assert "coef=(?a * (5/4))" in text and "rhs=(?r * (5/4))" in text and "step=solved" in text


def test_composed_rule_matches_two_step_result():
    eq = load_bundled("equation.actr")
    two = Engine(eq)
    two.run()
    merged = compose(eq.production("multiply-5"), eq.production("divide-4"))
    one = Engine(Model(eq.parameters, eq.chunks, [merged, eq.production("report")], eq.goal))
    assert one.run().fired() == [merged.name, "report"]
    assert one.memory.snapshot() == two.memory.snapshot()
    assert one.environment == two.environment == [("answer", {"x": Fraction(5, 4)})]


@pytest.mark.parametrize("a,b", [("divide-4", "multiply-5"), ("multiply-5", "report"),
                                 ("report", "multiply-5")])
def test_compose_rejects_incompatible_pairs(a, b):
    eq = load_bundled("equation.actr")
    with pytest.raises(CompositionError):
        compose(eq.production(a), eq.production(b))


def test_compose_rejects_dependence_on_written_chunk():
    model = load_bundled("addition.actr")
    with pytest.raises(CompositionError):
        compose(model.production("P1"), model.production("P2"))


def test_compose_renames_clashing_variables():
    model = load_bundled("addition.actr")
    merged = compose(model.production("P2"), model.production("P4"))
    # P4's ?c (carry) must not capture P2's ?c (the counter chunk)
    text = format_production(merged)
    assert "as ?c" in text and "carry=?c_2" in text


def test_composed_rule_parses_back():
    eq = load_bundled("equation.actr")
    merged = compose(eq.production("multiply-5"), eq.production("divide-4"))
    text = "[chunks]\neq equation coef=4/5 rhs=1 step=start\n[productions]\n" + \
        format_production(merged) + "\n[goal]\neq\n"
    assert parse_model(text).productions == [merged]
