"""Synthetic scenario inputs.

Ships a population generator (a mixture of Gaussian density blobs
discretized onto the 1 km cell grid) and a uniform charge-point scatter, so
the simulator can be exercised end to end without any real-world data. All
generation is seeded and deterministic.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .ev import AC, DC
from .geo import GeoPoint, offset_km
from .network import ChargeNetwork, ChargePoint
from .population import Cell, PopulationGrid


@dataclass(frozen=True)
class PopulationBlob:
    center_east_km: float
    center_north_km: float
    sigma_km: float
    weight: float = 1.0


def synthetic_population_grid(
    anchor: GeoPoint,
    width_km: int,
    height_km: int,
    total_population: float,
    blobs: list[PopulationBlob] | None = None,
    keep_fraction: float = 1e-6,
) -> PopulationGrid:
    """Population on a width x height block of 1 km cells.

    Cell centres sit at half-km offsets east/north of the anchor. With no
    blobs the density is uniform; otherwise it is the blob mixture, and
    cells below keep_fraction of the peak are dropped to keep grids small.
    """
    if width_km < 1 or height_km < 1:
        raise ValueError("grid must be at least 1 km by 1 km")
    east = np.arange(width_km) + 0.5
    north = np.arange(height_km) + 0.5
    ee, nn = np.meshgrid(east, north, indexing="ij")
    ee = ee.ravel()
    nn = nn.ravel()
    if blobs is None:
        density = np.ones_like(ee)
    else:
        density = np.zeros_like(ee)
        for b in blobs:
            r2 = (ee - b.center_east_km) ** 2 + (nn - b.center_north_km) ** 2
            density += b.weight * np.exp(-r2 / (2.0 * b.sigma_km**2))
        keep = density >= keep_fraction * density.max()
        ee, nn, density = ee[keep], nn[keep], density[keep]
    pops = density * (total_population / density.sum())
    cells = [
        Cell(offset_km(anchor, float(e), float(n)), float(p))
        for e, n, p in zip(ee, nn, pops)
    ]
    return PopulationGrid(cells)


def synthetic_network(
    anchor: GeoPoint,
    width_km: float,
    height_km: float,
    n_dc: int,
    n_ac: int,
    seed: int,
    dc_power_kw: float = 50.0,
    ac_power_kw: float = 22.0,
) -> ChargeNetwork:
    """Charge points scattered uniformly over the block, DC first."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    points = []
    width = max(1, n_dc + n_ac)
    pad = int(math.log10(width)) + 1
    for i in range(n_dc + n_ac):
        e = rng.uniform(0.0, width_km)
        n = rng.uniform(0.0, height_km)
        kind, power = (DC, dc_power_kw) if i < n_dc else (AC, ac_power_kw)
        points.append(ChargePoint(f"cp{i:0{pad}d}", offset_km(anchor, e, n), kind, power))
    return ChargeNetwork(points)


def write_population_csv(grid: PopulationGrid, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["lat", "lon", "population"])
        for c in grid.cells:
            w.writerow([f"{c.center.lat_deg:.8f}", f"{c.center.lon_deg:.8f}", f"{c.population:.6g}"])


def write_network_csv(net: ChargeNetwork, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "lat", "lon", "kind", "power_kw"])
        for p in net.points:
            w.writerow([p.id, f"{p.location.lat_deg:.8f}", f"{p.location.lon_deg:.8f}", p.kind, f"{p.power_kw:g}"])
