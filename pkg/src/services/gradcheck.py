"""Finite-difference gradient check across every architecture."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable

from nn import GRADCHECK_THRESHOLD, Architecture, grad_check, small_spec

logger = logging.getLogger(__name__)

GRADCHECK_ARCHITECTURES: tuple[Architecture, ...] = (
    Architecture.MLP,
    Architecture.LSTM,
    Architecture.GRU,
    Architecture.CNN1D,
)
GRADCHECK_SEEDS = (0, 1, 2, 3, 4)


@dataclass(frozen=True)
class GradcheckResult:
    architecture: str
    max_relative_error: float
    threshold: float = GRADCHECK_THRESHOLD

    @property
    def passed(self) -> bool:
        return math.isfinite(self.max_relative_error) and self.max_relative_error < self.threshold

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.architecture:<6} max_rel_err={self.max_relative_error:.3e} {status}"


def run_gradcheck(seeds: Iterable[int] = GRADCHECK_SEEDS) -> list[GradcheckResult]:
    seeds = tuple(seeds)
    results = []
    for arch in GRADCHECK_ARCHITECTURES:
        spec = small_spec(arch)
        worst = max(grad_check(spec, seed) for seed in seeds)
        logger.debug("gradcheck %s over seeds %s: %.3e", arch.value, seeds, worst)
        results.append(GradcheckResult(arch.value, worst))
    return results
