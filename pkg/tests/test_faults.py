import math

import numpy as np
import pytest

from chargesim.ev import EvParams
from chargesim.network import add_colocated_redundancy
from chargesim.reservations import ReservationLedger
from chargesim.router import AWARE, RouterConfig
from chargesim.faults import (
    COMPLETED,
    REROUTED,
    STRANDED,
    FaultConfig,
    estimate_ps_first_order,
    replay_trip,
    run_fault_sweep,
    sample_fault_mask,
)

from helpers import (
    FAULT_ISOLATION_RADIUS_KM,
    fault_network,
    fault_trip_rows,
    plan_fault_trips,
)

CFG = RouterConfig(ev=EvParams(), mode=AWARE)


@pytest.fixture(scope="module")
def net():
    return fault_network()


@pytest.fixture(scope="module")
def planned(net):
    return plan_fault_trips(net, CFG)


def test_fixture_geometry(net):
    # exactly the two far points are isolated at the emergency radius
    assert [p.id for p in net.isolated_points(FAULT_ISOLATION_RADIUS_KM)] == ["i0", "i23"]
    assert len(net) == 14


def test_fixture_canonical_plans(net, planned):
    plans, unroutable = planned
    assert unroutable == 0
    assert len(plans) == 70
    by_cp = {}
    for plan, (_, _, _, want_cp) in zip(
        plans, (r for r in fault_trip_rows() for _ in range(r[2]))
    ):
        assert plan.needed_charge
        assert len(plan.stops) == 1
        assert plan.stops[0].cp_id == want_cp
        by_cp[want_cp] = by_cp.get(want_cp, 0) + 1
    assert by_cp["i0"] == 5 and by_cp["i23"] == 5


def test_mask_edge_probabilities(net):
    rng = np.random.default_rng(0)
    assert sample_fault_mask(net, 0.0, rng) == frozenset()
    assert sample_fault_mask(net, 1.0, rng) == frozenset(net.by_id)


def test_mask_binomial_band(net):
    rng = np.random.default_rng(np.random.SeedSequence(404))
    p = 0.3
    n_draws = 2000
    total = sum(len(sample_fault_mask(net, p, rng)) for _ in range(n_draws))
    n = n_draws * len(net)
    sigma = math.sqrt(p * (1 - p) / n)
    assert abs(total / n - p) < 3.0 * sigma


def test_replay_completed(net, planned):
    plans, _ = planned
    out = replay_trip(plans[0], frozenset({"b1"}), net, ReservationLedger(), CFG)
    assert out.status == COMPLETED
    assert out.first_faulty_cp is None
    assert out.extra_time_h == 0.0


def test_replay_rerouted_within_cluster(net, planned):
    plans, _ = planned
    # first trip charges at c0; with c0 down it diverts to a neighbour
    out = replay_trip(plans[0], frozenset({"c0"}), net, ReservationLedger(), CFG)
    assert out.status == REROUTED
    assert out.first_faulty_cp == "c0"
    assert out.extra_time_h > 0.0


def test_replay_stranded_at_isolated_point(net, planned):
    plans, _ = planned
    iso_plan = next(p for p in plans if p.stops[0].cp_id == "i0")
    out = replay_trip(iso_plan, frozenset({"i0"}), net, ReservationLedger(), CFG)
    assert out.status == STRANDED
    assert out.first_faulty_cp == "i0"


def test_replay_zero_extra_time_with_colocated_twin(net, planned):
    plans, _ = planned
    grown = add_colocated_redundancy(net, ["i0"])
    iso_plan = next(p for p in plans if p.stops[0].cp_id == "i0")
    out = replay_trip(iso_plan, frozenset({"i0"}), grown, ReservationLedger(), CFG)
    assert out.status == REROUTED
    # the twin shares the location, so the reroute costs nothing
    assert out.extra_time_h == pytest.approx(0.0, abs=1e-12)


def test_replay_leaves_ledger_untouched(net, planned):
    plans, _ = planned
    led = ReservationLedger()
    for mask in (frozenset({"c0"}), frozenset({"i0"}), frozenset({"b1", "c3"})):
        for p in plans[:10]:
            replay_trip(p, mask, net, led, CFG)
    assert len(led) == 0


def test_first_order_estimate():
    got = estimate_ps_first_order(0.02, 0.1, 3, 708)
    assert got == pytest.approx(8.47457627118644e-06, rel=1e-12)
    assert estimate_ps_first_order(0.5, 0.1, 0, 100) == 0.0
    assert estimate_ps_first_order(0.5, 0.0, 3, 100) == 0.0
    assert estimate_ps_first_order(0.5, 0.1, 3, 0) == 0.0


def test_sweep_zero_fault_probability(net, planned):
    plans, unroutable = planned
    rows = run_fault_sweep(
        plans, unroutable, net, ReservationLedger(), CFG, [0.0], n_masks=5, seed=1
    )
    assert len(rows) == 1
    assert rows[0].stranded == 0
    assert rows[0].p_s == 0.0
    assert rows[0].trips == 70 * 5


def test_sweep_row_bookkeeping(net, planned):
    plans, unroutable = planned
    rows = run_fault_sweep(
        plans, unroutable, net, ReservationLedger(), CFG, [0.05, 0.01], n_masks=20, seed=3
    )
    assert [r.p_f for r in rows] == [0.01, 0.05]  # sorted, deduplicated
    for r in rows:
        assert r.trips == 70 * 20
        assert r.needed_charge == 70 * 20
        assert r.unroutable == 0
        assert 0 <= r.stranded <= r.needed_charge
        assert r.p_s == r.stranded / r.trips
        assert 0.0 <= r.ci_low <= r.p_s <= r.ci_high <= 1.0


def test_sweep_monotone_in_fault_probability(net, planned):
    # common random numbers make the curve exactly monotone, mask by mask
    plans, unroutable = planned
    rows = run_fault_sweep(
        plans, unroutable, net, ReservationLedger(), CFG,
        [0.02, 0.1, 0.3, 0.6], n_masks=30, seed=9,
    )
    strandings = [r.stranded for r in rows]
    assert strandings == sorted(strandings)
    assert strandings[-1] > 0


def test_sweep_empty_grid_rejected(net, planned):
    plans, unroutable = planned
    with pytest.raises(ValueError, match="empty"):
        run_fault_sweep(plans, unroutable, net, ReservationLedger(), CFG, [], 5, 0)


def test_fault_config_validation():
    with pytest.raises(ValueError):
        FaultConfig(p_f=-0.1)
    with pytest.raises(ValueError):
        FaultConfig(p_f=1.5)
    with pytest.raises(ValueError):
        FaultConfig(p_f=0.1, n_masks=0)
    assert FaultConfig(p_f=0.1).n_masks == 100
