"""Assign Saffir-Simpson categories to named places from a hurricane track.

A track is a time-ordered list of storm-center fixes with intensity. A place
gets the category of the nearest fix within a configurable radius (or, under
the alternative rule, the maximum category of any fix within the radius).
Both rules are approximations of reading intensity off a plotted track map
and are flagged as such in emitted reports.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from .corpus import GeoPoint, _parse_timestamp

EARTH_RADIUS_KM = 6371.0
CATEGORY_RULES = ("nearest", "max-within-radius")
DEFAULT_RADIUS_KM = 50.0


@dataclass(frozen=True)
class TrackPoint:
    position: GeoPoint
    time: float
    category: int

    def __post_init__(self) -> None:
        if not 0 <= self.category <= 5:
            raise ValueError(f"track category {self.category} outside 0-5")


@dataclass(frozen=True)
class PlaceEntry:
    name: str
    position: GeoPoint

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("place name must be non-empty")


def haversine_km(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in km over a sphere of mean Earth radius."""
    lat1, lon1 = math.radians(a.lat), math.radians(a.lon)
    lat2, lon2 = math.radians(b.lat), math.radians(b.lon)
    s = (
        math.sin((lat2 - lat1) / 2.0) ** 2
        + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2.0) ** 2
    )
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(s)))


def assign_category(
    place: PlaceEntry,
    track: list[TrackPoint],
    radius_km: float = DEFAULT_RADIUS_KM,
    rule: str = "nearest",
) -> int | None:
    """Category for ``place``, or None when no track point lies within radius.

    Under "nearest", distance ties go to the earlier fix. Under
    "max-within-radius", the strongest fix inside the radius wins.
    """
    if not track:
        raise ValueError("track must be non-empty")
    if radius_km <= 0:
        raise ValueError("radius_km must be positive")
    if rule not in CATEGORY_RULES:
        raise ValueError(f"unknown category rule {rule!r}; expected one of {CATEGORY_RULES}")
    within = []
    for tp in track:
        distance = haversine_km(place.position, tp.position)
        if distance <= radius_km:
            within.append((distance, tp))
    if not within:
        return None
    if rule == "nearest":
        _, best = min(within, key=lambda item: (item[0], item[1].time))
        return best.category
    return max(tp.category for _, tp in within)


def build_place_table(
    places: list[PlaceEntry],
    track: list[TrackPoint],
    radius_km: float = DEFAULT_RADIUS_KM,
    rule: str = "nearest",
) -> dict[str, int]:
    """Map each place to its assigned category, omitting out-of-range places."""
    table: dict[str, int] = {}
    for place in places:
        category = assign_category(place, track, radius_km=radius_km, rule=rule)
        if category is not None:
            table[place.name] = category
    return table


def _csv_rows(path: str | Path, expected_header: list[str]) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        rows = [line for line in fh if not line.lstrip().startswith("#")]
    reader = csv.DictReader(rows)
    got = [f.strip() for f in reader.fieldnames or []]
    if got != expected_header:
        raise ValueError(f"{path}: expected header {','.join(expected_header)!r}, got {','.join(got)!r}")
    return list(reader)


def load_track(path: str | Path) -> list[TrackPoint]:
    """Read a ``time,lat,lon,category`` track file with ISO-8601 times."""
    points = []
    for rec in _csv_rows(path, ["time", "lat", "lon", "category"]):
        points.append(
            TrackPoint(
                position=GeoPoint(float(rec["lat"]), float(rec["lon"])),
                time=_parse_timestamp(rec["time"]),
                category=int(rec["category"]),
            )
        )
    return points


def load_places(path: str | Path) -> list[PlaceEntry]:
    """Read a ``name,lat,lon`` place file."""
    return [
        PlaceEntry(name=rec["name"], position=GeoPoint(float(rec["lat"]), float(rec["lon"])))
        for rec in _csv_rows(path, ["name", "lat", "lon"])
    ]
