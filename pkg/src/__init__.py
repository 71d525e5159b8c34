"""fedmode: federated ensemble learning for GPS travel-mode detection, simulated in one process."""

__version__ = "0.1.0"
