"""The chargesim command line.

Subcommands: simulate (fleet sweep -> metrics CSV + summary JSON), faults
(fault-injection sweep -> CSV), capacity (fleet-size search), validate
(arithmetic and distribution self-checks), gen-fixtures (synthetic inputs).

Every run directory gets a manifest.json recording the resolved options,
seed, and tool version, written atomically after the outputs, so a run can
be reproduced bit-for-bit from its manifest.

Exit codes: 0 success, 2 bad configuration, 3 bad input data, 4 failed
self-check.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .config import (
    SCHEMA,
    SEED_ENV_VAR,
    describe_schema,
    parse_config_file,
    resolve_options,
    scenario_from_options,
)
from .errors import ConfigError, DataError
from .ev import EvParams, charge_duration_h, effective_speed_kph, max_leg_km
from .experiment import (
    InfraCostModel,
    ScenarioMetrics,
    capacity_search,
    cost_per_user_eur,
    load_scenario_inputs,
    run_replicate,
    run_scenario_grid,
)
from .faults import SweepRow, run_fault_sweep
from .fixtures import (
    PopulationBlob,
    synthetic_network,
    synthetic_population_grid,
    write_network_csv,
    write_population_csv,
)
from .geo import GeoPoint
from .network import AC, DC, ChargeNetwork, ChargePoint, add_colocated_redundancy
from .reservations import ReservationLedger
from .router import RouterConfig, RoutePlan, Unroutable, average_trip_speed
from .stats import wilson_interval
from .triplength import default_trip_distribution


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _write_atomic(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _out_dir(ns) -> str:
    d = ns.out or "chargesim-out"
    os.makedirs(d, exist_ok=True)
    return d


def _jsonable(v):
    if isinstance(v, tuple):
        return list(v)
    return v


def _write_manifest(out_dir: str, ns, opts: dict, outputs: list[str], t0: float) -> None:
    manifest = {
        "tool": "chargesim",
        "version": __version__,
        "subcommand": ns.subcommand,
        "config_file": os.path.abspath(ns.config) if getattr(ns, "config", None) else None,
        "options": {k: _jsonable(v) for k, v in sorted(opts.items())},
        "seed": opts.get("seed"),
        "outputs": sorted(os.path.basename(p) for p in outputs),
        "wall_clock_s": round(time.monotonic() - t0, 3),
    }
    _write_atomic(os.path.join(out_dir, "manifest.json"), json.dumps(manifest, indent=2) + "\n")


def _collect_overrides(ns) -> dict:
    """Flag values routed into the config schema; --set covers every key."""
    overrides: dict = {}
    for flag, key in getattr(ns, "_flag_keys", {}).items():
        val = getattr(ns, flag, None)
        if val is None:
            continue
        if isinstance(val, str) and SCHEMA[key][0] is not str:
            try:
                val = SCHEMA[key][0](val)
            except ValueError as exc:
                raise ConfigError(f"bad value for --{flag.replace('_', '-')}: {exc}") from exc
        overrides[key] = val
    for item in getattr(ns, "set", None) or []:
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"--set needs KEY=VALUE, got {item!r}")
        if key not in SCHEMA:
            raise ConfigError(f"--set: unknown key {key!r}")
        try:
            overrides[key] = SCHEMA[key][0](raw.strip())
        except ValueError as exc:
            raise ConfigError(f"--set {key}: {exc}") from exc
    return overrides


def _resolve(ns) -> dict:
    file_values = parse_config_file(ns.config) if getattr(ns, "config", None) else {}
    return resolve_options(file_values, _collect_overrides(ns))


def _require_sources(opts: dict) -> None:
    for key in ("population_csv", "network_csv"):
        if not opts[key]:
            raise ConfigError(f"{key} is required (config file or --set {key}=PATH)")


def parse_pf_grid(text: str) -> tuple[float, ...]:
    """Comma list, or start:stop:n, start:stop:n:log, start:stop:log (n=8)."""
    s = text.strip()
    try:
        if ":" in s:
            parts = [p.strip() for p in s.split(":")]
            log = parts[-1].lower() == "log"
            if log:
                parts = parts[:-1]
            if len(parts) == 2:
                start, stop, n = float(parts[0]), float(parts[1]), 8
            elif len(parts) == 3:
                start, stop, n = float(parts[0]), float(parts[1]), int(parts[2])
            else:
                raise ValueError("expected start:stop[:n][:log]")
            if n < 2:
                raise ValueError("grid needs at least 2 points")
            if not 0.0 <= start < stop <= 1.0:
                raise ValueError("need 0 <= start < stop <= 1")
            if log:
                if start <= 0.0:
                    raise ValueError("log grid needs start > 0")
                vals = np.geomspace(start, stop, n)
            else:
                vals = np.linspace(start, stop, n)
            return tuple(float(v) for v in vals)
        vals = tuple(float(x) for x in s.split(",") if x.strip())
        if not vals:
            raise ValueError("empty grid")
        if any(not 0.0 <= v <= 1.0 for v in vals):
            raise ValueError("probabilities must lie in [0, 1]")
        return vals
    except ValueError as exc:
        raise ConfigError(f"bad p_f grid {text!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# simulate


def _metrics_csv(metrics: list[ScenarioMetrics], thresholds: tuple[float, ...]) -> str:
    header = (
        "n_ev,trips,frac_charge,"
        + ",".join(f"frac_below_{t:g}" for t in thresholds)
        + ",frac_unroutable,mean_speed"
    )
    lines = [header]
    for m in metrics:
        cells = [str(m.n_ev), str(m.trips), _fmt(m.frac_needing_charge)]
        cells += [_fmt(m.frac_below(t)) for t in thresholds]
        cells += [_fmt(m.frac_unroutable), _fmt(m.mean_speed_kph)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _metrics_summary(m: ScenarioMetrics) -> dict:
    below = {}
    for t in m.thresholds:
        lo, hi = m.ci_below(t)
        below[f"{t:g}"] = {
            "count": m.below[t],
            "frac": m.frac_below(t),
            "ci_low": lo,
            "ci_high": hi,
        }
    return {
        "n_ev": m.n_ev,
        "trips": m.trips,
        "needed_charge": m.needed_charge,
        "frac_needing_charge": m.frac_needing_charge,
        "unroutable": m.unroutable,
        "frac_unroutable": m.frac_unroutable,
        "mean_speed_kph": m.mean_speed_kph,
        "below_kph": below,
    }


def _route_record(replicate: int, res: RoutePlan | Unroutable) -> dict:
    if isinstance(res, Unroutable):
        return {
            "replicate": replicate,
            "ev_id": res.ev_id,
            "status": "unroutable",
            "direct_km": res.direct_km,
            "needed_charge": res.needed_charge,
            "reason": res.reason,
        }
    return {
        "replicate": replicate,
        "ev_id": res.ev_id,
        "status": "ok",
        "depart_h": res.depart_h,
        "arrival_h": res.arrival_h,
        "direct_km": res.direct_km,
        "route_km": res.route_km,
        "needed_charge": res.needed_charge,
        "mean_speed_kph": average_trip_speed(res),
        "stops": [dataclasses.asdict(s) for s in res.stops],
    }


def cmd_simulate(ns) -> int:
    t0 = time.monotonic()
    opts = _resolve(ns)
    _require_sources(opts)
    cfg = scenario_from_options(opts)
    sizes = list(opts["n_ev_grid"]) or [cfg.n_ev]
    dump = ns.dump_routes or ns.dump_ledger
    if dump and len(sizes) != 1:
        raise ConfigError("route/ledger dumps need a single fleet size, not a grid")
    grid, net, dist = load_scenario_inputs(cfg)
    out = _out_dir(ns)
    outputs = []

    if dump:
        total = ScenarioMetrics(n_ev=cfg.n_ev, thresholds=tuple(cfg.speed_thresholds_kph))
        route_lines: list[str] = []
        ledger_lines = ["replicate,cp_id,ev_id,start_h,end_h"]
        for r in range(cfg.replicates):
            ledger = ReservationLedger()
            m, results = run_replicate(cfg, r, grid, net, dist, ledger=ledger)
            total.merge(m)
            route_lines += [
                json.dumps(_route_record(r, res), sort_keys=True) for res in results
            ]
            ledger_lines += [
                f"{cp},{ev},{_fmt(s)},{_fmt(e)}" for cp, ev, s, e in ledger.to_rows()
            ]
        metrics = [total]
        if ns.dump_routes:
            path = os.path.join(out, "routes.jsonl")
            _write_atomic(path, "\n".join(route_lines) + "\n")
            outputs.append(path)
        if ns.dump_ledger:
            path = os.path.join(out, "ledger.csv")
            _write_atomic(path, "\n".join(ledger_lines) + "\n")
            outputs.append(path)
    else:
        metrics = run_scenario_grid(cfg, sizes, grid=grid, net=net, dist=dist)

    csv_path = os.path.join(out, "metrics.csv")
    _write_atomic(csv_path, _metrics_csv(metrics, tuple(cfg.speed_thresholds_kph)))
    outputs.append(csv_path)
    summary = {
        "seed": opts["seed"],
        "mode": opts["mode"],
        "options": {k: _jsonable(v) for k, v in sorted(opts.items())},
        "results": [_metrics_summary(m) for m in metrics],
    }
    summary_path = os.path.join(out, "summary.json")
    _write_atomic(summary_path, json.dumps(summary, indent=2, sort_keys=True) + "\n")
    outputs.append(summary_path)
    _write_manifest(out, ns, opts, outputs, t0)
    for m in metrics:
        print(
            f"n_ev {m.n_ev}: {m.trips} trips, "
            f"{m.frac_needing_charge:.4f} needed charge, "
            f"mean speed {m.mean_speed_kph:.1f} kph"
        )
    print(f"wrote {out}/metrics.csv")
    return 0


# ---------------------------------------------------------------------------
# faults


def _merge_sweep_rows(per_replicate: list[list[SweepRow]]) -> list[SweepRow]:
    merged = []
    for rows in zip(*per_replicate):
        trips = sum(r.trips for r in rows)
        needed = sum(r.needed_charge for r in rows)
        stranded = sum(r.stranded for r in rows)
        unroutable = sum(r.unroutable for r in rows)
        lo, hi = wilson_interval(stranded, trips)
        merged.append(
            SweepRow(
                p_f=rows[0].p_f,
                trips=trips,
                needed_charge=needed,
                stranded=stranded,
                unroutable=unroutable,
                p_s=stranded / trips if trips else 0.0,
                ci_low=lo,
                ci_high=hi,
            )
        )
    return merged


def _parse_redundancy(text: str, net: ChargeNetwork) -> list[str]:
    s = text.strip()
    if s.lower().startswith("isolated:"):
        try:
            radius = float(s.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"bad --add-redundancy radius in {text!r}") from exc
        if radius <= 0:
            raise ConfigError("--add-redundancy radius must be positive")
        return [p.id for p in net.isolated_points(radius)]
    ids = [x.strip() for x in s.split(",") if x.strip()]
    if not ids:
        raise ConfigError(f"--add-redundancy got no target ids in {text!r}")
    return ids


def cmd_faults(ns) -> int:
    t0 = time.monotonic()
    opts = _resolve(ns)
    _require_sources(opts)
    cfg = scenario_from_options(opts)
    pf_grid = parse_pf_grid(ns.pf_grid) if ns.pf_grid else tuple(opts["pf_grid"])
    grid, net, dist = load_scenario_inputs(cfg)
    if ns.add_redundancy:
        targets = _parse_redundancy(ns.add_redundancy, net)
        net = add_colocated_redundancy(net, targets)
        print(f"added {len(targets)} redundant points; network now {len(net)} points")

    per_replicate = []
    router_cfg = RouterConfig(ev=cfg.ev, mode=cfg.mode, max_stops=cfg.max_stops)
    for r in range(cfg.replicates):
        ledger = ReservationLedger()
        _, results = run_replicate(cfg, r, grid, net, dist, ledger=ledger)
        plans = [p for p in results if isinstance(p, RoutePlan)]
        n_unroutable = sum(1 for p in results if isinstance(p, Unroutable))
        per_replicate.append(
            run_fault_sweep(
                plans,
                n_unroutable,
                net,
                ledger,
                router_cfg,
                list(pf_grid),
                opts["fault_masks"],
                seed=opts["fault_seed"] + r,
            )
        )
    rows = _merge_sweep_rows(per_replicate)

    out = _out_dir(ns)
    lines = ["p_f,trips,needed_charge,stranded,unroutable,p_s,ci_low,ci_high"]
    for row in rows:
        lines.append(
            f"{_fmt(row.p_f)},{row.trips},{row.needed_charge},{row.stranded},"
            f"{row.unroutable},{_fmt(row.p_s)},{_fmt(row.ci_low)},{_fmt(row.ci_high)}"
        )
    csv_path = os.path.join(out, "faults.csv")
    _write_atomic(csv_path, "\n".join(lines) + "\n")
    _write_manifest(out, ns, opts, [csv_path], t0)
    for row in rows:
        print(
            f"p_f {row.p_f:.4g}: p_s {row.p_s:.3e} "
            f"[{row.ci_low:.2e}, {row.ci_high:.2e}], "
            f"unroutable {row.unroutable}/{row.trips}"
        )
    print(f"wrote {csv_path}")
    return 0


# ---------------------------------------------------------------------------
# capacity


def cmd_capacity(ns) -> int:
    t0 = time.monotonic()
    opts = _resolve(ns)
    _require_sources(opts)
    threshold = opts["capacity_threshold_kph"]
    target = opts["capacity_target_p"]
    if not 0.0 < target <= 1.0:
        raise ConfigError(f"capacity target probability out of (0, 1]: {target}")
    if threshold <= 0.0:
        raise ConfigError(f"capacity threshold must be positive: {threshold}")
    cfg = scenario_from_options(opts)
    grid, net, dist = load_scenario_inputs(cfg)
    result = capacity_search(cfg, threshold, target, grid=grid, net=net, dist=dist)

    out = _out_dir(ns)
    probe_lines = ["n_ev,failures,trials,upper_ci"]
    probe_lines += [
        f"{p.n_ev},{p.failures},{p.trials},{_fmt(p.upper_ci)}" for p in result.probes
    ]
    csv_path = os.path.join(out, "capacity.csv")
    _write_atomic(csv_path, "\n".join(probe_lines) + "\n")
    report = {
        "found": result.found,
        "capacity_n_ev": result.n_ev,
        "threshold_kph": result.threshold_kph,
        "target_p": result.target_p,
        "ceiling_n_ev": cfg.n_ev,
        "probes": [dataclasses.asdict(p) for p in result.probes],
    }
    json_path = os.path.join(out, "capacity.json")
    _write_atomic(json_path, json.dumps(report, indent=2, sort_keys=True) + "\n")
    _write_manifest(out, ns, opts, [csv_path, json_path], t0)
    if result.found:
        print(
            f"capacity {result.n_ev} vehicles "
            f"(below {threshold:g} kph with P <= {target:g}, ceiling {cfg.n_ev})"
        )
    else:
        print(f"target {target:g} unreachable even at 1 vehicle")
    print(f"wrote {csv_path}")
    return 0


# ---------------------------------------------------------------------------
# validate


class _Report:
    """Collects computed-vs-nominal lines; any out-of-tolerance check fails
    the run. Informational lines record known mismatches without failing."""

    def __init__(self) -> None:
        self.failures = 0

    def check(self, label: str, computed: float, nominal: float, tol: float) -> None:
        ok = abs(computed - nominal) <= tol
        if not ok:
            self.failures += 1
        print(
            f"  {label:<42s} computed {computed:<12.6g} "
            f"nominal {nominal:<8g} tol {tol:<8g} {'PASS' if ok else 'FAIL'}"
        )

    def info(self, label: str, computed: float, note: str) -> None:
        print(f"  {label:<42s} computed {computed:<12.6g} {note}")


def _counting_network(n_dc: int, n_ac: int) -> ChargeNetwork:
    # geometry is irrelevant to the cost model, only the kind counts matter
    pts = []
    for i in range(n_dc):
        pts.append(ChargePoint(f"d{i}", GeoPoint(0.0, -179.0 + i * 1e-3), DC, 50.0))
    for i in range(n_ac):
        pts.append(ChargePoint(f"a{i}", GeoPoint(1.0, -179.0 + i * 1e-3), AC, 22.0))
    return ChargeNetwork(pts)


def cmd_validate(ns) -> int:
    sections = [s for s in ("ev_math", "cost", "dist") if getattr(ns, s)]
    if not sections:
        sections = ["ev_math", "cost", "dist"]
    rep = _Report()
    ev = EvParams()

    if "ev_math" in sections:
        print("vehicle arithmetic:")
        rep.check(
            "charge 0.2->0.8 at 45 kW (min)",
            60.0 * charge_duration_h(ev, 0.2, 0.8, 45.0),
            19.2,
            1e-9,
        )
        rep.check("effective speed at 45 kW (kph)", effective_speed_kph(ev, 45.0), 62.7, 0.05)
        rep.check("effective speed at 22 kW (kph)", effective_speed_kph(ev, 22.0), 47.6, 0.05)
        rep.check("max leg 1.0->0.2 (km)", max_leg_km(ev, 1.0, 0.2), 74.8, 0.01)
        rep.check("max leg 0.8->0.2 (km)", max_leg_km(ev, 0.8, 0.2), 56.1, 0.01)

    if "cost" in sections:
        print("infrastructure cost (EUR per user per year):")
        model = InfraCostModel()
        mixed = _counting_network(72, 636)
        dc_only = _counting_network(708, 0)
        rep.check("72 DC + 636 AC, 36000 users", cost_per_user_eur(model, mixed, 36000), 34.0, 0.1)
        rep.check("708 DC, 36000 users", cost_per_user_eur(model, dc_only, 36000), 165.2, 0.1)
        rep.check("72 DC + 636 AC, 3600 users", cost_per_user_eur(model, mixed, 3600), 340.3, 0.5)

    if "dist" in sections:
        print("trip length distribution:")
        dist = default_trip_distribution()
        rep.check("total probability", dist.tail_probability(0.0), 1.0, 1e-6)
        rep.check("mean trip (km)", dist.mean_km(), 16.7, 0.1)
        rep.info(
            "P(trip > 74.8 km)",
            dist.tail_probability(74.8),
            "nominal ~0.026 from a shape-1/3 closed form; informational",
        )
        rep.info(
            "P(trip > 161 km)",
            dist.tail_probability(161.0),
            "nominal 0.01 is a known overstatement; informational",
        )
        rep.info("median trip (km)", dist.quantile(0.5), "")

    if rep.failures:
        print(f"{rep.failures} check(s) failed")
        return 4
    print("all checks passed")
    return 0


# ---------------------------------------------------------------------------
# gen-fixtures


def cmd_gen_fixtures(ns) -> int:
    t0 = time.monotonic()
    out = _out_dir(ns)
    anchor = GeoPoint(53.0, -8.0)
    w, h = ns.width_km, ns.height_km
    if w < 4 or h < 4:
        raise ConfigError("fixture region must be at least 4 km on each side")
    if ns.population <= 0:
        raise ConfigError("fixture population must be positive")

    blobs = None
    if ns.blobs > 0:
        rng = np.random.default_rng(np.random.SeedSequence(ns.seed, spawn_key=(1,)))
        sigma = min(w, h) / 10.0
        blobs = [
            PopulationBlob(
                center_east_km=float(rng.uniform(0.2 * w, 0.8 * w)),
                center_north_km=float(rng.uniform(0.2 * h, 0.8 * h)),
                sigma_km=sigma,
            )
            for _ in range(ns.blobs)
        ]
    grid = synthetic_population_grid(anchor, int(w), int(h), ns.population, blobs)
    net = synthetic_network(anchor, w, h, ns.n_dc, ns.n_ac, ns.seed)

    pop_path = os.path.join(out, "population.csv")
    net_path = os.path.join(out, "network.csv")
    write_population_csv(grid, pop_path)
    write_network_csv(net, net_path)
    cfg_path = os.path.join(out, "scenario.cfg")
    cfg_text = "\n".join(
        [
            describe_schema(),
            "",
            f"population_csv = {os.path.abspath(pop_path)}",
            f"network_csv = {os.path.abspath(net_path)}",
            f"n_ev = {ns.n_ev}",
            f"seed = {ns.seed}",
            "mode = aware",
            "replicates = 1",
            "",
        ]
    )
    _write_atomic(cfg_path, cfg_text)
    opts = {
        "seed": ns.seed,
        "width_km": w,
        "height_km": h,
        "population": ns.population,
        "n_dc": ns.n_dc,
        "n_ac": ns.n_ac,
        "blobs": ns.blobs,
        "n_ev": ns.n_ev,
    }
    _write_manifest(out, ns, opts, [pop_path, net_path, cfg_path], t0)
    print(f"wrote {pop_path} ({len(grid)} cells), {net_path} ({len(net)} points)")
    print(f"wrote {cfg_path}")
    return 0


# ---------------------------------------------------------------------------
# parser


BASE_FLAG_KEYS = {
    "n_ev": "n_ev",
    "seed": "seed",
    "mode": "mode",
    "replicates": "replicates",
    "threads": "threads",
}


def _add_common(p: argparse.ArgumentParser, **extra_flag_keys: str) -> None:
    p.add_argument("-c", "--config", help="flat key = value config file")
    p.add_argument("--out", help="output directory (default chargesim-out)")
    p.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override any config key; repeatable",
    )
    p.add_argument("--n-ev", type=int, dest="n_ev", help="fleet size")
    p.add_argument("--seed", type=int, help=f"root seed (default ${SEED_ENV_VAR} or 0)")
    p.add_argument("--mode", help="aware | blind (reservation- prefix accepted)")
    p.add_argument("--replicates", type=int, help="independent replicates")
    p.add_argument("--threads", type=int, help="worker processes; 0 = all cores")
    p.set_defaults(_flag_keys=dict(BASE_FLAG_KEYS, **extra_flag_keys))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chargesim",
        description="Monte Carlo simulation of a public EV charging network",
        epilog="run `chargesim gen-fixtures --out demo` for a ready-made scenario",
    )
    parser.add_argument("--version", action="version", version=f"chargesim {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("simulate", help="fleet sweep: metrics CSV + summary JSON")
    _add_common(p, n_ev_grid="n_ev_grid", onboard_ac="onboard_ac_limit_kw")
    p.add_argument("--n-ev-grid", dest="n_ev_grid", help="comma list of fleet sizes")
    p.add_argument(
        "--onboard-ac", type=float, dest="onboard_ac", help="onboard AC charger limit, kW"
    )
    p.add_argument("--dump-routes", action="store_true", help="write per-trip routes.jsonl")
    p.add_argument("--dump-ledger", action="store_true", help="write realized bookings CSV")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("faults", help="fault-injection sweep over p_f")
    _add_common(p, masks="fault_masks", fault_seed="fault_seed", reserve="reserve_soc")
    p.add_argument("--pf-grid", help="comma list, or start:stop[:n][:log]")
    p.add_argument("--masks", type=int, dest="masks", help="fault masks per p_f")
    p.add_argument("--fault-seed", type=int, dest="fault_seed", help="mask stream seed")
    p.add_argument("--reserve", type=float, dest="reserve", help="reserve state of charge")
    p.add_argument(
        "--add-redundancy",
        metavar="isolated:RADIUS_KM | id,id,...",
        help="add a co-located twin at each target point before the sweep",
    )
    p.set_defaults(func=cmd_faults)

    p = sub.add_parser("capacity", help="largest fleet meeting a failure target")
    _add_common(p, threshold="capacity_threshold_kph", target="capacity_target_p")
    p.add_argument("--threshold", type=float, dest="threshold", help="speed threshold, kph")
    p.add_argument("--target", type=float, dest="target", help="tolerated P(below threshold)")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("validate", help="arithmetic and distribution self-checks")
    p.add_argument("--ev-math", dest="ev_math", action="store_true", help="vehicle arithmetic")
    p.add_argument("--cost", dest="cost", action="store_true", help="cost model")
    p.add_argument("--dist", dest="dist", action="store_true", help="trip length distribution")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen-fixtures", help="write a synthetic scenario to a directory")
    p.add_argument("--out", help="output directory (default chargesim-out)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width-km", type=float, dest="width_km", default=160.0)
    p.add_argument("--height-km", type=float, dest="height_km", default=120.0)
    p.add_argument("--population", type=float, default=2e5)
    p.add_argument("--n-dc", type=int, dest="n_dc", default=25)
    p.add_argument("--n-ac", type=int, dest="n_ac", default=25)
    p.add_argument("--blobs", type=int, default=2, help="population clusters; 0 = uniform")
    p.add_argument("--n-ev", type=int, dest="n_ev", default=500, help="n_ev in scenario.cfg")
    p.set_defaults(func=cmd_gen_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
