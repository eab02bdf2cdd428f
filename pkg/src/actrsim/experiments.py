"""Desk-scale reproductions: the power law of practice and the spacing effect."""
from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, replace

import numpy as np

from .declarative import DeclarativeMemory
from .errors import DomainError
from .params import ConstantDecay, DeclarativeParams, Parameters

POWERLAW_HEADER = ("k", "age_profile", "latency")
SPACING_HEADER = ("schedule", "activation", "recall_prob")


@dataclass
class PowerLawResult:
    rows: list  # (k, age_profile, latency)
    slope: float
    intercept: float

    def to_csv(self) -> str:
        return _csv(POWERLAW_HEADER, self.rows)


def powerlaw(d: float = 0.5, dt: float = 10.0, events: int = 100, probe: float = 0.5,
             params: Parameters | None = None, fit_from: int = 5) -> PowerLawResult:
    """Retrieval latency of one chunk practised ``events`` times, ``dt`` apart.

    Decay is forced to the constant ``d``. After the k-th use, latency is
    probed ``probe * dt`` later (before the next use); ``age_profile`` is
    ``sum_j age_j**-d`` at that moment. The slope is the least-squares fit of
    ``log(latency - C)`` against ``log k`` over ``k >= fit_from``; the fixed
    retrieval cost ``C`` is removed because it does not scale with practice.
    """
    if events < 10:
        raise DomainError("need at least 10 events for a meaningful regression")
    if not dt > 0:
        raise DomainError("dt must be positive")
    if not 0 < probe <= 1:
        raise DomainError("probe must lie in (0, 1]")
    base = (params or Parameters()).declarative()
    decl = replace(base, decay_mode=ConstantDecay(d))
    memory = DeclarativeMemory(decl)
    cid = memory.add_chunk("item", {}, 0.0)
    rows = []
    for k in range(1, events + 1):
        if k > 1:
            memory.record_use(cid, (k - 1) * dt)
        t = (k - 1) * dt + probe * dt
        profile = math.exp(memory.base_activation(cid, t) - decl.base_B)
        rows.append((k, profile, memory.retrieval_latency(cid, None, t)))
    ks = np.array([r[0] for r in rows if r[0] >= fit_from], dtype=float)
    lat = np.array([r[2] for r in rows if r[0] >= fit_from]) - decl.retrieval_C
    slope, intercept = np.polyfit(np.log(ks), np.log(lat), 1)
    return PowerLawResult(rows, float(slope), float(intercept))


def parse_schedule(spec: str):
    """``NAME=GAPxEVENTS`` or ``NAME=g1,g2,...`` -> ``(name, gaps)``."""
    name, sep, body = spec.partition("=")
    if not sep or not name or not body:
        raise ValueError(f"bad schedule {spec!r}; expected NAME=GAPxEVENTS or NAME=g1,g2,...")
    m = re.fullmatch(r"([0-9.eE+-]+)x(\d+)", body)
    if m:
        gap, n = float(m.group(1)), int(m.group(2))
        if n < 1:
            raise ValueError(f"schedule {name} needs at least one event")
        gaps = [gap] * (n - 1)
    else:
        gaps = [float(g) for g in body.split(",") if g]
    if any(not g > 0 for g in gaps):
        raise ValueError(f"schedule {name} has a non-positive gap")
    return name, gaps


def schedule_times(gaps, end: float) -> list:
    """Event times with the given gaps, shifted so the last event is at ``end``."""
    times = [0.0]
    for g in gaps:
        times.append(times[-1] + g)
    shift = end - times[-1]
    return [t + shift for t in times]


def spacing(schedules: dict, mode: str = "as91", test_delay: float = 1e4,
            params: Parameters | None = None) -> list:
    """Activation and recall probability after each practice schedule.

    ``schedules`` maps a name to its list of inter-event gaps. All schedules
    must have the same number of events; they are aligned to finish at the
    same moment and tested ``test_delay`` seconds later.
    """
    if len(schedules) < 2:
        raise DomainError("need at least two schedules to compare")
    counts = {len(g) + 1 for g in schedules.values()}
    if len(counts) != 1:
        raise DomainError("schedules have different numbers of events")
    if not test_delay > 0:
        raise DomainError("test delay must be positive")
    p = (params or Parameters()).with_values(decay_mode=mode)
    decl: DeclarativeParams = p.declarative()
    end = max(sum(g) for g in schedules.values())
    rows = []
    for name, gaps in schedules.items():
        memory = DeclarativeMemory(decl)
        times = schedule_times(gaps, end)
        cid = memory.add_chunk("item", {}, times[0])
        for t in times[1:]:
            memory.record_use(cid, t)
        test = end + test_delay
        rows.append((name, memory.activation(cid, None, test), memory.recall_probability(cid, None, test)))
    return rows


def _fmt(x):
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def spacing_csv(rows) -> str:
    return _csv(SPACING_HEADER, rows)
