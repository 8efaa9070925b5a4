"""Scenario orchestration: fleets, replicates, metrics, capacity, cost.

A scenario deploys n_ev vehicles on one day. Each vehicle gets an
independent random substream keyed by (seed, replicate, trip index), so a
trip is identical whether the fleet holds 100 or 100000 vehicles: fleets of
different sizes share a common prefix of trips, which makes capacity curves
smooth in n_ev and congestion effects attributable to fleet size alone.
Vehicles are planned and committed in a seeded uniformly random order
(each trip carries a priority drawn from its own substream).
"""

from __future__ import annotations

import concurrent.futures
import os
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DataError
from .ev import EvParams
from .faults import FaultConfig, run_fault_sweep
from .network import ChargeNetwork, load_network_csv
from .population import (
    PopulationGrid,
    RingEmpty,
    load_population_csv,
    sample_destination,
    sample_origin,
)
from .reservations import ReservationLedger
from .router import (
    AWARE,
    RoutePlan,
    RouterConfig,
    TripRequest,
    Unroutable,
    average_trip_speed,
    commit_route,
    plan_route,
)
from .stats import wilson_interval, wilson_upper
from .triplength import TripLengthDistribution, default_trip_distribution

DEFAULT_SPEED_THRESHOLDS = (60.0, 40.0, 10.0)


@dataclass(frozen=True)
class ScenarioConfig:
    n_ev: int
    seed: int = 0
    replicates: int = 1
    mode: str = AWARE
    ev: EvParams = field(default_factory=EvParams)
    population_csv: str | None = None
    network_csv: str | None = None
    speed_thresholds_kph: tuple[float, ...] = DEFAULT_SPEED_THRESHOLDS
    max_stops: int = 64
    fault: FaultConfig | None = None
    threads: int = 1

    def __post_init__(self) -> None:
        if self.n_ev < 1:
            raise ValueError("n_ev must be at least 1")
        if self.replicates < 1:
            raise ValueError("replicates must be at least 1")


@dataclass
class ScenarioMetrics:
    n_ev: int
    thresholds: tuple[float, ...]
    trips: int = 0
    needed_charge: int = 0
    unroutable: int = 0
    completed: int = 0
    below: dict[float, int] = field(default_factory=dict)
    speed_sum_kph: float = 0.0
    replayed: int = 0
    stranded: int = 0

    def __post_init__(self) -> None:
        for t in self.thresholds:
            self.below.setdefault(t, 0)

    @property
    def frac_needing_charge(self) -> float:
        return self.needed_charge / self.trips if self.trips else 0.0

    @property
    def frac_unroutable(self) -> float:
        return self.unroutable / self.trips if self.trips else 0.0

    def frac_below(self, threshold_kph: float) -> float:
        return self.below[threshold_kph] / self.trips if self.trips else 0.0

    @property
    def mean_speed_kph(self) -> float:
        return self.speed_sum_kph / self.completed if self.completed else 0.0

    def ci_below(self, threshold_kph: float) -> tuple[float, float]:
        return wilson_interval(self.below[threshold_kph], self.trips)

    def merge(self, other: "ScenarioMetrics") -> None:
        if other.thresholds != self.thresholds:
            raise ValueError("cannot merge metrics with different thresholds")
        self.trips += other.trips
        self.needed_charge += other.needed_charge
        self.unroutable += other.unroutable
        self.completed += other.completed
        self.speed_sum_kph += other.speed_sum_kph
        self.replayed += other.replayed
        self.stranded += other.stranded
        for t in self.thresholds:
            self.below[t] += other.below[t]


def sample_trip(
    grid: PopulationGrid,
    dist: TripLengthDistribution,
    rng: np.random.Generator,
    ev_id: int,
    max_attempts: int = 1000,
) -> TripRequest:
    """One trip: weighted origin, then a length whose destination ring is
    populated. Empty rings resample the length, never the origin."""
    origin = sample_origin(grid, rng)
    for _ in range(max_attempts):
        trip_km = dist.sample(rng)
        try:
            dest = sample_destination(grid, origin, trip_km, rng)
        except RingEmpty:
            continue
        return TripRequest(ev_id=ev_id, origin=origin, destination=dest)
    raise DataError(
        f"no destination found for origin near {origin} after {max_attempts} trip lengths"
    )


def sample_trip_batch(
    grid: PopulationGrid,
    dist: TripLengthDistribution,
    seed: int,
    replicate: int,
    n: int,
) -> list[TripRequest]:
    """n trips in processing order.

    Each trip draws from SeedSequence(seed, (replicate, i)) and carries a
    priority from the same substream; sorting by priority yields a uniform
    random processing order that interleaves consistently as n grows.
    """
    out = []
    for i in range(n):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(replicate, i)))
        priority = rng.random()
        out.append((priority, i, sample_trip(grid, dist, rng, ev_id=i)))
    out.sort(key=lambda t: (t[0], t[1]))
    return [req for _, _, req in out]


def route_and_commit(
    trips: list[TripRequest],
    net: ChargeNetwork,
    ledger: ReservationLedger,
    cfg: RouterConfig,
) -> list[RoutePlan | Unroutable]:
    """Plan and commit trips in the given order; realized plans returned in
    the same order."""
    results: list[RoutePlan | Unroutable] = []
    for req in trips:
        plan = plan_route(req, net, ledger, cfg)
        if isinstance(plan, RoutePlan):
            plan = commit_route(plan, ledger, cfg)
        results.append(plan)
    return results


def run_replicate(
    cfg: ScenarioConfig,
    replicate: int,
    grid: PopulationGrid,
    net: ChargeNetwork,
    dist: TripLengthDistribution,
    ledger: ReservationLedger | None = None,
) -> tuple[ScenarioMetrics, list[RoutePlan | Unroutable]]:
    """One replicate: sample, route, commit, measure. Returns the metrics
    and the per-trip outcomes in processing order. Callers that want the
    realized bookings pass their own ledger and read it afterwards."""
    trips = sample_trip_batch(grid, dist, cfg.seed, replicate, cfg.n_ev)
    router_cfg = RouterConfig(ev=cfg.ev, mode=cfg.mode, max_stops=cfg.max_stops)
    if ledger is None:
        ledger = ReservationLedger()
    results = route_and_commit(trips, net, ledger, router_cfg)

    m = ScenarioMetrics(n_ev=cfg.n_ev, thresholds=tuple(cfg.speed_thresholds_kph))
    plans: list[RoutePlan] = []
    for r in results:
        m.trips += 1
        if r.needed_charge:
            m.needed_charge += 1
        if isinstance(r, Unroutable):
            m.unroutable += 1
            continue
        plans.append(r)
        m.completed += 1
        v = average_trip_speed(r)
        m.speed_sum_kph += v
        for t in m.thresholds:
            if v < t:
                m.below[t] += 1

    if cfg.fault is not None:
        rows = run_fault_sweep(
            plans,
            m.unroutable,
            net,
            ledger,
            router_cfg,
            [cfg.fault.p_f],
            cfg.fault.n_masks,
            # distinct mask stream per replicate
            seed=cfg.fault.seed + replicate,
        )
        m.replayed += rows[0].trips
        m.stranded += rows[0].stranded
    return m, results


def load_scenario_inputs(
    cfg: ScenarioConfig,
    grid: PopulationGrid | None = None,
    net: ChargeNetwork | None = None,
    dist: TripLengthDistribution | None = None,
) -> tuple[PopulationGrid, ChargeNetwork, TripLengthDistribution]:
    if grid is None:
        if cfg.population_csv is None:
            raise DataError("scenario needs a population grid")
        grid = load_population_csv(cfg.population_csv)
    if net is None:
        if cfg.network_csv is None:
            raise DataError("scenario needs a charge network")
        net = load_network_csv(cfg.network_csv)
    if dist is None:
        dist = default_trip_distribution()
    return grid, net, dist


def run_scenario(
    cfg: ScenarioConfig,
    *,
    grid: PopulationGrid | None = None,
    net: ChargeNetwork | None = None,
    dist: TripLengthDistribution | None = None,
) -> ScenarioMetrics:
    """All replicates of one scenario, merged. Deterministic for a given
    config: replicates use disjoint substreams and merge in order."""
    grid, net, dist = load_scenario_inputs(cfg, grid, net, dist)
    total = ScenarioMetrics(n_ev=cfg.n_ev, thresholds=tuple(cfg.speed_thresholds_kph))
    threads = cfg.threads if cfg.threads > 0 else (os.cpu_count() or 1)
    if threads > 1 and cfg.replicates > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(run_replicate, cfg, r, grid, net, dist)
                for r in range(cfg.replicates)
            ]
            for f in futures:
                total.merge(f.result()[0])
    else:
        for r in range(cfg.replicates):
            total.merge(run_replicate(cfg, r, grid, net, dist)[0])
    assert total.completed + total.unroutable == total.trips
    return total


def run_scenario_grid(
    cfg: ScenarioConfig,
    n_ev_grid: list[int],
    *,
    grid: PopulationGrid | None = None,
    net: ChargeNetwork | None = None,
    dist: TripLengthDistribution | None = None,
) -> list[ScenarioMetrics]:
    grid, net, dist = load_scenario_inputs(cfg, grid, net, dist)
    return [
        run_scenario(replace(cfg, n_ev=n), grid=grid, net=net, dist=dist)
        for n in n_ev_grid
    ]


# ---------------------------------------------------------------------------
# capacity search


@dataclass(frozen=True)
class CapacityProbe:
    n_ev: int
    failures: int
    trials: int
    upper_ci: float


@dataclass(frozen=True)
class CapacityResult:
    found: bool
    n_ev: int
    threshold_kph: float
    target_p: float
    probes: tuple[CapacityProbe, ...]


def capacity_search(
    cfg: ScenarioConfig,
    threshold_kph: float = 40.0,
    target_p: float = 1e-4,
    *,
    grid: PopulationGrid | None = None,
    net: ChargeNetwork | None = None,
    dist: TripLengthDistribution | None = None,
) -> CapacityResult:
    """Largest fleet whose below-threshold fraction stays within target_p.

    A fleet passes when the Wilson 95% upper bound on the fraction of trips
    slower than the threshold is at or below target_p. Geometric doubling
    finds a failing fleet size, then bisection pins the boundary; trip
    coupling across fleet sizes keeps the pass/fail curve monotone up to
    Monte Carlo noise. cfg.n_ev is the search ceiling.
    """
    if not 0.0 < target_p <= 1.0:
        raise ValueError(f"target probability out of (0, 1]: {target_p}")
    grid, net, dist = load_scenario_inputs(cfg, grid, net, dist)
    if threshold_kph not in cfg.speed_thresholds_kph:
        cfg = replace(
            cfg, speed_thresholds_kph=tuple(cfg.speed_thresholds_kph) + (threshold_kph,)
        )
    ceiling = cfg.n_ev
    probes: dict[int, CapacityProbe] = {}

    def passes(n: int) -> bool:
        if n not in probes:
            m = run_scenario(replace(cfg, n_ev=n), grid=grid, net=net, dist=dist)
            probes[n] = CapacityProbe(
                n_ev=n,
                failures=m.below[threshold_kph],
                trials=m.trips,
                upper_ci=wilson_upper(m.below[threshold_kph], m.trips),
            )
        return probes[n].upper_ci <= target_p

    def result(found: bool, n: int) -> CapacityResult:
        return CapacityResult(
            found=found,
            n_ev=n,
            threshold_kph=threshold_kph,
            target_p=target_p,
            probes=tuple(probes[k] for k in sorted(probes)),
        )

    if not passes(1):
        return result(False, 0)
    lo = 1
    hi = None
    n = 2
    while n < ceiling:
        if passes(n):
            lo = n
        else:
            hi = n
            break
        n *= 2
    if hi is None:
        if passes(ceiling):
            return result(True, ceiling)
        hi = ceiling
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if passes(mid):
            lo = mid
        else:
            hi = mid
    return result(True, lo)


# ---------------------------------------------------------------------------
# infrastructure cost


@dataclass(frozen=True)
class InfraCostModel:
    dc_install_eur: float = 48000.0
    ac_install_eur: float = 12500.0
    dc_annual_eur: float = 6000.0
    ac_annual_eur: float = 350.0
    lifespan_years: float = 20.0

    def __post_init__(self) -> None:
        if self.lifespan_years <= 0:
            raise ValueError("lifespan must be positive")


def cost_per_user_eur(model: InfraCostModel, net: ChargeNetwork, n_users: int) -> float:
    """Annualized network cost split across daily users: installation
    amortized over the hardware lifespan, plus running costs."""
    if n_users < 1:
        raise ValueError("need at least one user")
    install = net.n_dc * model.dc_install_eur + net.n_ac * model.ac_install_eur
    annual = net.n_dc * model.dc_annual_eur + net.n_ac * model.ac_annual_eur
    return (install / model.lifespan_years + annual) / n_users
