# File persistence for runs: trip CSVs, metric tables, run directory layout.
from .paths import RunLayout, checkpoint_path, pipeline_path  # noqa: F401
from .results import (  # noqa: F401
    CentralizedRow,
    MetricsRow,
    read_json,
    read_metrics_csv,
    write_centralized_csv,
    write_json,
    write_metrics_csv,
)
from .trips import TRIP_COLUMNS, read_trips_csv, write_trips_csv  # noqa: F401
