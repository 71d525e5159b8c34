"""Utility functions for fedmode."""

from .helpers import derive_seed, floor_fraction, split_counts

__all__ = ["derive_seed", "floor_fraction", "split_counts"]
