import csv
import io
import math

import pytest

from actrsim import experiments
from actrsim.errors import DomainError


def test_powerlaw_slopes():
    assert -0.55 <= experiments.powerlaw(d=0.5, dt=10, events=100).slope <= -0.45
    assert -0.75 <= experiments.powerlaw(d=0.3, dt=10, events=100).slope <= -0.65


def test_powerlaw_rows():
    result = experiments.powerlaw(d=0.5, dt=10, events=12)
    assert [r[0] for r in result.rows] == list(range(1, 13))
    # first probe: a single trace of age dt/2
    assert result.rows[0][1] == pytest.approx(5.0 ** -0.5)
    assert result.rows[0][2] == pytest.approx(1.0 / 5.0 ** -0.5 + 0.05)
    latencies = [r[2] for r in result.rows]
    assert all(a > b for a, b in zip(latencies, latencies[1:]))


def test_powerlaw_csv_header():
    text = experiments.powerlaw(events=10).to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["k", "age_profile", "latency"] and len(rows) == 11


def test_powerlaw_refuses_short_runs():
    with pytest.raises(DomainError):
        experiments.powerlaw(events=9)


@pytest.mark.parametrize("text,gaps", [("massed=1x4", [1.0, 1.0, 1.0]),
                                       ("s=2,3.5,10", [2.0, 3.5, 10.0])])
def test_parse_schedule(text, gaps):
    name, parsed = experiments.parse_schedule(text)
    assert name == text.split("=")[0] and parsed == gaps


@pytest.mark.parametrize("bad", ["nogaps", "a=", "a=1x0", "a=-1,2", "a=zz"])
def test_parse_schedule_rejects(bad):
    with pytest.raises((ValueError, DomainError)):
        experiments.parse_schedule(bad)


def test_schedule_times_end_together():
    assert experiments.schedule_times([1.0, 2.0], 10.0) == [7.0, 8.0, 10.0]


def test_spacing_modes():
    schedules = {"massed": [1.0] * 9, "spaced": [100.0] * 9}
    as91 = dict((r[0], r[1]) for r in experiments.spacing(schedules, "as91"))
    pa08 = dict((r[0], r[1]) for r in experiments.spacing(schedules, "pa08"))
    assert as91["spaced"] > as91["massed"]
    assert pa08["spaced"] > pa08["massed"]


def test_spacing_csv():
    rows = experiments.spacing({"a": [1.0, 1.0], "b": [5.0, 5.0]}, "constant")
    parsed = list(csv.reader(io.StringIO(experiments.spacing_csv(rows))))
    assert parsed[0] == ["schedule", "activation", "recall_prob"]
    assert [r[0] for r in parsed[1:]] == ["a", "b"]
    assert all(0.0 <= float(r[2]) <= 1.0 and math.isfinite(float(r[1])) for r in parsed[1:])


def test_spacing_refusals():
    with pytest.raises(DomainError):
        experiments.spacing({"only": [1.0]}, "as91")
    with pytest.raises(DomainError):
        experiments.spacing({"a": [1.0], "b": [1.0, 1.0]}, "as91")
