"""Rational conflict resolution.

A production's value is ``V = p*G - C``. Having the best match so far with
value ``V``, waiting ``t`` more seconds for a better one is worthwhile while

    gain(V, G, t) = integral_V^G (x - V) Z_t(x; V) dx

exceeds the waiting cost ``tau``, where ``Z_t(x; V)`` is an exponential
density on ``(-inf, G]`` with scale ``t * (G - V)``. The integral has the
closed form ``(G - V) * (1 - t * (1 - exp(-1/t)))``; :func:`expected_gain_quad`
evaluates the defining integral numerically so the two can be checked
against each other.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from enum import Enum

from scipy import integrate, optimize

from .errors import DomainError, NoMatchError
from .params import ConflictParams


class Decision(Enum):
    FIRE = "fire"
    WAIT = "wait"


@dataclass(frozen=True)
class ValuedMatch:
    instantiation: object
    value: float

    @property
    def match_time(self) -> float:
        return self.instantiation.match_time


@dataclass
class Resolution:
    winner: ValuedMatch
    fire_time: float
    # matches seen (arrived) before the decision, in arrival order
    considered: list = field(default_factory=list)


def expected_value(stats, params: ConflictParams, spent_cost: float = 0.0) -> float:
    """``V = q * r * G - C`` for a production's :class:`UtilityStats`."""
    return stats.p(spent_cost) * params.goal_value_G - stats.estimate_C()


def _check(V, G, t, strict_v=True):
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if strict_v and not V < G:
        raise DomainError(f"V must be below G, got V={V}, G={G}")
    if not strict_v and V > G:
        raise DomainError(f"V must not exceed G, got V={V}, G={G}")


def z_density(x: float, V: float, G: float, t: float) -> float:
    _check(V, G, t)
    scale = t * (G - V)
    if x > G:
        return 0.0
    return math.exp(-(G - x) / scale) / scale


def expected_gain(V: float, G: float, t: float) -> float:
    _check(V, G, t, strict_v=False)
    delta = G - V
    if delta == 0:
        return 0.0
    # -expm1(-1/t) == 1 - exp(-1/t) without cancellation at large t
    return delta * (1.0 - t * -math.expm1(-1.0 / t))


def expected_gain_quad(V: float, G: float, t: float) -> float:
    """Adaptive quadrature of the defining integral (reference for the closed form)."""
    _check(V, G, t, strict_v=False)
    delta = G - V
    if delta == 0:
        return 0.0
    scale = t * delta
    # substitute u = G - x so the mass sits at u = 0 with decay length `scale`
    f = lambda u: (delta - u) * math.exp(-u / scale) / scale
    breaks = sorted({min(delta, k * scale) for k in (1.0, 5.0, 20.0)} - {delta})
    value, _ = integrate.quad(f, 0.0, delta, points=breaks or None, epsabs=0.0,
                              epsrel=1e-13, limit=500)
    return value


def decide(best: ValuedMatch, t: float, params: ConflictParams) -> Decision:
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    V = min(best.value, params.goal_value_G)
    gain = expected_gain(V, params.goal_value_G, t)
    return Decision.FIRE if gain <= params.waiting_cost_tau else Decision.WAIT


def waiting_window(V: float, G: float, params: ConflictParams) -> float:
    """Time ``T`` after which the best match fires: ``gain(V, G, T) == tau``."""
    tau = params.waiting_cost_tau
    if V >= G or tau >= G - V:
        return 0.0
    if tau == 0:
        return math.inf
    f = lambda t: expected_gain(V, G, t) - tau
    hi = 1.0
    while f(hi) > 0:
        hi *= 2.0
    lo = hi / 2.0
    while f(lo) <= 0:
        lo /= 2.0
    return optimize.brentq(f, lo, hi, xtol=1e-14, rtol=4 * sys.float_info.epsilon, maxiter=500)


def _arrival_key(vm: ValuedMatch):
    inst = vm.instantiation
    return (vm.match_time, inst.production, inst.sort_key())


def resolve(matches, params: ConflictParams) -> Resolution:
    """Pick the instantiation that fires and the time it fires.

    Matches are taken in arrival order. Each strictly better arrival resets
    the clock; the best-so-far fires once its waiting window elapses with no
    better arrival, or, when the candidate list runs out, at the last arrival.
    """
    ordered = sorted(matches, key=_arrival_key)
    if not ordered:
        raise NoMatchError("no instantiation to resolve")
    for vm in ordered:
        if not math.isfinite(vm.match_time):
            raise DomainError("resolve needs finite match times")
    G = params.goal_value_G
    best = ordered[0]
    origin = best.match_time
    considered = [best]
    for vm in ordered[1:]:
        window = waiting_window(best.value, G, params)
        if vm.match_time - origin > window:
            return Resolution(best, origin + window, considered)
        considered.append(vm)
        if vm.value > best.value:
            best = vm
            origin = vm.match_time
    return Resolution(best, considered[-1].match_time, considered)
