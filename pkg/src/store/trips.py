"""Trip CSV files: `trip_id,lat,lon,timestamp,mode`, one row per GPS fix."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Sequence

import pandas as pd

from core import InvalidCoordinate, InvalidTripFile, UnknownMode
from geo import DEFAULT_MODE_NAMES, GpsPoint, Trip
from synth import mode_label

logger = logging.getLogger(__name__)

TRIP_COLUMNS = ("trip_id", "lat", "lon", "timestamp", "mode")
NUMERIC_COLUMNS = ("lat", "lon", "timestamp")

# Data rows start on line 2, after the header.
_FIRST_DATA_LINE = 2


def _fail(message: str, line: int | None = None) -> InvalidTripFile:
    where = f"line {line}: " if line is not None else ""
    return InvalidTripFile(f"{where}{message}", operation="read_trips_csv")


def read_trips_csv(path: str | Path, class_names: Sequence[str] = DEFAULT_MODE_NAMES) -> list[Trip]:
    """Parse a trip file; rows are grouped by trip_id in order of first appearance."""
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except FileNotFoundError as exc:
        raise _fail(f"no such file: {path}") from exc
    except pd.errors.EmptyDataError as exc:
        raise _fail("file is empty; a header row is required", 1) from exc
    except (pd.errors.ParserError, UnicodeDecodeError) as exc:
        raise _fail(str(exc)) from exc

    frame.columns = [c.strip() for c in frame.columns]
    missing = [c for c in TRIP_COLUMNS if c not in frame.columns]
    if missing:
        raise _fail(f"header lacks columns {missing}", 1)

    frame = frame.loc[:, list(TRIP_COLUMNS)].apply(lambda col: col.str.strip())
    frame["line"] = frame.index + _FIRST_DATA_LINE
    for column in ("trip_id", *NUMERIC_COLUMNS):
        parsed = pd.to_numeric(frame[column], errors="coerce")
        bad = parsed.isna()
        if bad.any():
            row = frame[bad].iloc[0]
            raise _fail(f"{column} '{row[column]}' is not a number", int(row["line"]))
        frame[column] = parsed
    if (frame["trip_id"] % 1 != 0).any():
        row = frame[frame["trip_id"] % 1 != 0].iloc[0]
        raise _fail(f"trip_id {row['trip_id']} is not an integer", int(row["line"]))

    trips: list[Trip] = []
    for trip_id, rows in frame.groupby("trip_id", sort=False):
        modes = rows["mode"].unique()
        if len(modes) != 1:
            raise _fail(f"trip {int(trip_id)} mixes modes {list(modes)}", int(rows["line"].iloc[0]))
        try:
            label = mode_label(modes[0], class_names)
        except UnknownMode as exc:
            raise _fail(str(exc), int(rows["line"].iloc[0])) from exc

        points = []
        for lat, lon, t, line in rows[["lat", "lon", "timestamp", "line"]].itertuples(index=False):
            try:
                points.append(GpsPoint(float(lat), float(lon), float(t)))
            except InvalidCoordinate as exc:
                raise _fail(str(exc), int(line)) from exc
        trips.append(Trip(points=tuple(points), mode=label, trip_id=int(trip_id)))

    logger.info("Read %d trips (%d fixes) from %s", len(trips), len(frame), path)
    return trips


def write_trips_csv(path: str | Path, trips: Sequence[Trip]) -> Path:
    """Write trips with full float precision so a reread reproduces them exactly."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    records = [
        (trip.trip_id, p.lat, p.lon, p.t, trip.mode.name)
        for trip in trips
        for p in trip.points
    ]
    frame = pd.DataFrame.from_records(records, columns=list(TRIP_COLUMNS))
    frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    logger.info("Wrote %d trips (%d fixes) to %s", len(trips), len(records), path)
    return path
