"""Charge-point inventory with spatial queries.

Every charge point serves one vehicle at a time. Radius queries are served
from a latitude-sorted index: a latitude band is an exact prefilter because
great-circle distance is never less than the meridional separation, so the
band never excludes a true match.
"""

from __future__ import annotations

import bisect
import csv
from dataclasses import dataclass, replace

from .errors import DataError
from .ev import AC, DC
from .geo import KM_PER_DEG_LAT, GeoPoint, distance_km

KINDS = (DC, AC)


@dataclass(frozen=True)
class ChargePoint:
    id: str
    location: GeoPoint
    kind: str
    power_kw: float
    operational: bool = True

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DataError(f"charge point {self.id}: unknown kind {self.kind!r}")
        if self.power_kw <= 0:
            raise DataError(f"charge point {self.id}: power must be positive")


class ChargeNetwork:
    def __init__(self, points: list[ChargePoint]) -> None:
        self.points = list(points)
        self.by_id: dict[str, ChargePoint] = {}
        for p in self.points:
            if p.id in self.by_id:
                raise DataError(f"duplicate charge point id: {p.id}")
            self.by_id[p.id] = p
        # latitude-sorted view for radius queries
        self._sorted = sorted(self.points, key=lambda p: p.location.lat_deg)
        self._lats = [p.location.lat_deg for p in self._sorted]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def n_dc(self) -> int:
        return sum(1 for p in self.points if p.kind == DC)

    @property
    def n_ac(self) -> int:
        return sum(1 for p in self.points if p.kind == AC)

    def within_radius(self, center: GeoPoint, radius_km: float) -> list[tuple[float, ChargePoint]]:
        """All points within the radius, as (distance, point) sorted by
        (distance, id)."""
        if radius_km < 0:
            raise ValueError(f"negative radius: {radius_km}")
        band = radius_km / KM_PER_DEG_LAT + 1e-9
        lo = bisect.bisect_left(self._lats, center.lat_deg - band)
        hi = bisect.bisect_right(self._lats, center.lat_deg + band)
        hits = []
        for p in self._sorted[lo:hi]:
            d = distance_km(center, p.location)
            if d <= radius_km:
                hits.append((d, p))
        hits.sort(key=lambda t: (t[0], t[1].id))
        return hits

    def isolated_points(self, radius_km: float) -> list[ChargePoint]:
        """Points with no other point within the radius, in id order."""
        out = []
        for p in sorted(self.points, key=lambda p: p.id):
            hits = self.within_radius(p.location, radius_km)
            if all(q.id == p.id for _, q in hits):
                out.append(p)
        return out


def load_network_csv(path) -> ChargeNetwork:
    """Read an ``id,lat,lon,kind,power_kw`` CSV. An empty body is a valid
    (empty) network."""
    points: list[ChargePoint] = []
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise DataError(f"cannot read charge network {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path}: empty file")
        if [h.strip().lower() for h in header] != ["id", "lat", "lon", "kind", "power_kw"]:
            raise DataError(f"{path}: line 1: expected header id,lat,lon,kind,power_kw")
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 5:
                raise DataError(f"{path}: line {lineno}: expected 5 fields, got {len(row)}")
            try:
                pid = row[0].strip()
                lat, lon = float(row[1]), float(row[2])
                kind = row[3].strip().upper()
                power = float(row[4])
                points.append(ChargePoint(pid, GeoPoint(lat, lon), kind, power))
            except (ValueError, DataError) as exc:
                raise DataError(f"{path}: line {lineno}: {exc}") from exc
    return ChargeNetwork(points)


def add_colocated_redundancy(net: ChargeNetwork, target_ids: list[str]) -> ChargeNetwork:
    """A new network with one duplicate point beside each target id.

    Duplicates share the target's location, kind and power under a fresh id,
    so a fault at the original leaves a zero-distance fallback.
    """
    for tid in target_ids:
        if tid not in net.by_id:
            raise DataError(f"redundancy target not in network: {tid}")
    points = list(net.points)
    taken = set(net.by_id)
    for tid in target_ids:
        t = net.by_id[tid]
        n = 1
        while f"{tid}+r{n}" in taken:
            n += 1
        twin_id = f"{tid}+r{n}"
        taken.add(twin_id)
        points.append(replace(t, id=twin_id))
    return ChargeNetwork(points)
