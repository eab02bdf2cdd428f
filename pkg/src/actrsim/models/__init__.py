"""Models shipped with the package.

``addition.actr`` is 36 + 23 under the six column-addition rules;
``addition_carry.actr`` is 36 + 27 (exercises the carry rule);
``equation.actr`` solves (4/5) x = 1 in two steps for the composition demo.
"""
from __future__ import annotations

from importlib import resources

from ..modelfile import parse_model

BUNDLED = ("addition.actr", "addition_carry.actr", "equation.actr")


def bundled_text(name: str) -> str:
    if name not in BUNDLED:
        raise FileNotFoundError(name)
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def load_bundled(name: str):
    return parse_model(bundled_text(name))


def written_digits(environment) -> str:
    """Digits emitted by ``write col=K digit=D`` actions, most significant first."""
    cols = {}
    for kind, slots in environment:
        if kind == "write":
            cols[slots["col"]] = slots["digit"]
    return "".join(str(cols[k]) for k in sorted(cols, reverse=True))
