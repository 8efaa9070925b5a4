"""Time-optimal trip routing across the charge network.

A route is a sequence of charge stops between origin and destination. Legs
are point-to-point at cruise speed; every leg must keep the state of charge
at or above the reserve floor, and each stop charges up to the target level
before departing. The planner searches stop sequences with a label-setting
search ordered by departure time:

  * labels carry (location, charge, departure time, set of stops used);
  * a label extends to every operational charge point reachable on its
    charge, never revisiting a point within one journey;
  * in reservation-aware mode the wait at a point comes from the ledger's
    earliest free slot; reservation-blind planning assumes zero wait and
    discovers the real queue only at commit time;
  * a label whose departure already exceeds the best known arrival cannot
    improve it (extra legs only add time), so it is cut; labels dominated
    at the same point by an earlier-departing, better-charged label with a
    subset of its visited stops are cut as well.

Ties on arrival break toward fewer stops, then the lexicographically
smallest stop-id sequence, so plans are deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, replace

from .ev import EvParams, charge_duration_h, effective_charge_kw, soc_drop
from .geo import GeoPoint, distance_km
from .network import ChargeNetwork
from .reservations import Booking, ReservationLedger

AWARE = "aware"
BLIND = "blind"
MODES = (AWARE, BLIND)


@dataclass(frozen=True)
class TripRequest:
    ev_id: int
    origin: GeoPoint
    destination: GeoPoint
    depart_h: float = 0.0


@dataclass(frozen=True)
class RouterConfig:
    ev: EvParams
    mode: str = AWARE
    max_stops: int = 64
    prune: bool = True

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown router mode: {self.mode!r}")
        if self.max_stops < 1:
            raise ValueError("max_stops must be at least 1")


@dataclass(frozen=True)
class Leg:
    start: GeoPoint
    end: GeoPoint
    distance_km: float
    drive_h: float


@dataclass(frozen=True)
class Stop:
    cp_id: str
    arrival_h: float
    wait_h: float
    charge_start_h: float
    charge_end_h: float
    soc_in: float
    soc_out: float


@dataclass(frozen=True)
class RoutePlan:
    ev_id: int
    depart_h: float
    arrival_h: float
    legs: tuple[Leg, ...]
    stops: tuple[Stop, ...]
    direct_km: float
    needed_charge: bool

    @property
    def total_time_h(self) -> float:
        return self.arrival_h - self.depart_h

    @property
    def route_km(self) -> float:
        return sum(leg.distance_km for leg in self.legs)

    @property
    def destination(self) -> GeoPoint:
        return self.legs[-1].end


@dataclass(frozen=True)
class Unroutable:
    ev_id: int
    reason: str
    direct_km: float
    needed_charge: bool = True


def average_trip_speed(plan: RoutePlan) -> float:
    """Driven distance over total elapsed time, kph. Waiting and charging
    count as elapsed time; the denominator is the whole journey."""
    if plan.total_time_h <= 0.0:
        return 0.0
    return plan.route_km / plan.total_time_h


def plan_route(
    req: TripRequest,
    net: ChargeNetwork,
    ledger: ReservationLedger,
    cfg: RouterConfig,
    *,
    initial_soc: float = 1.0,
    reserve_floor: float | None = None,
    exclude: frozenset[str] = frozenset(),
    ignore_ev: int | None = None,
) -> RoutePlan | Unroutable:
    """Plan one trip; returns the time-optimal RoutePlan or Unroutable.

    The keyword arguments serve fault replay: a reroute starts mid-journey
    at a reduced charge, may spend the reserve (floor 0), must avoid the
    faulted points, and ignores the vehicle's own abandoned bookings.
    """
    ev = cfg.ev
    floor = ev.reserve_soc if reserve_floor is None else reserve_floor

    def span_km(soc: float) -> float:
        # longest leg that keeps arrival charge at or above the floor
        return max(0.0, soc - floor) * ev.max_range_km * ev.route_scale

    direct = distance_km(req.origin, req.destination)
    if direct <= span_km(initial_soc):
        leg = Leg(req.origin, req.destination, direct, direct / ev.speed_kph)
        return RoutePlan(
            ev_id=req.ev_id,
            depart_h=req.depart_h,
            arrival_h=req.depart_h + leg.drive_h,
            legs=(leg,),
            stops=(),
            direct_km=direct,
            needed_charge=False,
        )

    # label-setting search; heap orders by (departure, stops, stop ids) so
    # exploration order agrees with the final tie-break preference
    start = (req.depart_h, 0, (), req.origin, initial_soc, frozenset(), (), ())
    heap = [start]
    pareto: dict[str, list[tuple[float, float, frozenset[str]]]] = {}
    candidates: list[tuple[float, int, tuple[str, ...], tuple[Leg, ...], tuple[Stop, ...]]] = []
    best_arrival = float("inf")
    budget_hit = False

    while heap:
        dep, n_stops, seq, loc, soc, visited, stops, legs = heapq.heappop(heap)
        if cfg.prune and dep > best_arrival:
            break
        d_dest = distance_km(loc, req.destination)
        if d_dest <= span_km(soc):
            final = Leg(loc, req.destination, d_dest, d_dest / ev.speed_kph)
            arrival = dep + final.drive_h
            best_arrival = min(best_arrival, arrival)
            candidates.append((arrival, n_stops, seq, legs + (final,), stops))
            # extending a completed label cannot beat its own arrival:
            # charge time is non-negative and legs obey the triangle
            # inequality, so skip the extensions
            continue
        if n_stops >= cfg.max_stops:
            budget_hit = True
            continue
        for d_leg, cp in net.within_radius(loc, span_km(soc)):
            if not cp.operational or cp.id in exclude or cp.id in visited:
                continue
            arr = dep + d_leg / ev.speed_kph
            soc_in = soc - soc_drop(ev, d_leg)
            if soc_in >= ev.charge_target_soc:
                # already above the charge target: stop adds nothing
                duration = 0.0
                slot = arr
                soc_out = soc_in
            else:
                duration = charge_duration_h(
                    ev, soc_in, ev.charge_target_soc,
                    effective_charge_kw(ev, cp.kind, cp.power_kw),
                )
                if cfg.mode == AWARE:
                    slot = ledger.earliest_slot(cp.id, arr, duration, ignore_ev)
                else:
                    slot = arr
                soc_out = ev.charge_target_soc
            ndep = slot + duration
            nvis = visited | {cp.id}
            entries = pareto.setdefault(cp.id, [])
            if any(d <= ndep and s >= soc_out and v <= nvis for d, s, v in entries):
                continue
            entries[:] = [(d, s, v) for d, s, v in entries
                          if not (ndep <= d and soc_out >= s and nvis <= v)]
            entries.append((ndep, soc_out, nvis))
            stop = Stop(cp.id, arr, slot - arr, slot, ndep, soc_in, soc_out)
            leg = Leg(loc, cp.location, d_leg, d_leg / ev.speed_kph)
            heapq.heappush(
                heap,
                (ndep, n_stops + 1, seq + (cp.id,), cp.location, soc_out,
                 nvis, stops + (stop,), legs + (leg,)),
            )

    if not candidates:
        reason = (
            f"stop budget exhausted at {cfg.max_stops} stops"
            if budget_hit
            else "no operational charge-point sequence reaches the destination"
        )
        return Unroutable(req.ev_id, reason, direct)

    arrival, _, _, legs, stops = min(candidates, key=lambda c: (c[0], c[1], c[2]))
    return RoutePlan(
        ev_id=req.ev_id,
        depart_h=req.depart_h,
        arrival_h=arrival,
        legs=legs,
        stops=stops,
        direct_km=direct,
        needed_charge=True,
    )


def commit_route(plan: RoutePlan, ledger: ReservationLedger, cfg: RouterConfig) -> RoutePlan:
    """Book the plan's charging intervals; returns the realized plan.

    Reservation-aware plans were built against the current ledger, so their
    intervals commit as-is. Reservation-blind plans assumed zero waits; each
    stop is re-resolved against the ledger in journey order, first come
    first served, and every later time shifts by the accumulated delay.
    """
    if cfg.mode == AWARE:
        for s in plan.stops:
            if s.charge_end_h > s.charge_start_h:
                ledger.commit(Booking(s.cp_id, plan.ev_id, s.charge_start_h, s.charge_end_h))
        return plan

    delay = 0.0
    realized = []
    for s in plan.stops:
        arr = s.arrival_h + delay
        duration = s.charge_end_h - s.charge_start_h
        if duration > 0.0:
            slot = ledger.earliest_slot(s.cp_id, arr, duration)
            ledger.commit(Booking(s.cp_id, plan.ev_id, slot, slot + duration))
        else:
            slot = arr
        end = slot + duration
        realized.append(replace(s, arrival_h=arr, wait_h=slot - arr, charge_start_h=slot, charge_end_h=end))
        delay = end - s.charge_end_h
    return replace(plan, stops=tuple(realized), arrival_h=plan.arrival_h + delay)
