import numpy as np
import pytest

from actrsim.conflict import expected_value
from actrsim.errors import DomainError
from actrsim.params import ConflictParams, Parameters
from actrsim.utility import ConstantR, CostDiscountR, UtilityStats, stats_from_parameters


def test_uniform_prior_q_is_half():
    assert UtilityStats().q == 0.5


def test_q_updates():
    stats = UtilityStats()
    stats.update_q(True).update_q(True).update_q(False)
    assert stats.q == pytest.approx(3 / 5)


def test_q_tracks_empirical_frequency():
    rng = np.random.default_rng(0)
    stats = UtilityStats()
    outcomes = rng.random(10_000) < 0.7
    for o in outcomes:
        stats.update_q(bool(o))
    assert abs(stats.q - outcomes.mean()) < 0.02


def test_cost_running_mean_and_prior():
    stats = UtilityStats(cost_prior=0.3)
    assert stats.estimate_C() == 0.3
    stats.update_cost(1.0).update_cost(2.0)
    assert stats.estimate_C() == pytest.approx(1.5)


def test_r_modes():
    assert ConstantR(0.8).estimate(100.0) == 0.8
    r = CostDiscountR(budget=10.0)
    assert r.estimate(0.0) == 1.0
    assert r.estimate(5.0) == pytest.approx(0.5)
    assert r.estimate(50.0) == 0.0


def test_p_is_q_times_r():
    stats = UtilityStats(3.0, 1.0, r_mode=ConstantR(0.5))
    assert stats.p() == pytest.approx(0.375)


def test_expected_value_example():
    stats = UtilityStats(9.0, 1.0, r_mode=ConstantR(1.0), cost_prior=2.0)
    assert expected_value(stats, ConflictParams(goal_value_G=20.0)) == pytest.approx(16.0)


@pytest.mark.parametrize("call", [lambda: UtilityStats(0.0, 1.0),
                                  lambda: UtilityStats().update_cost(-1.0),
                                  lambda: UtilityStats().estimate_r(-1.0),
                                  lambda: ConstantR(1.5),
                                  lambda: CostDiscountR(0.0)])
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


def test_stats_from_parameters():
    stats = stats_from_parameters(Parameters(q_alpha=2.0, q_beta=3.0, r_mode="cost-discount",
                                             r_budget=4.0, cost_prior=0.2))
    assert stats.q == pytest.approx(0.4)
    assert stats.estimate_r(1.0) == pytest.approx(0.75)
    assert stats.estimate_C() == 0.2
