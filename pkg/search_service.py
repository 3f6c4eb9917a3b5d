import logging
from fractions import Fraction
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from configs import (
    PointConfig,
    is_general_position,
    random_convex_config_3d,
    random_general_config,
    random_interior_config,
)
from crossing import CrossingReport, count_crossing_pairs
from exceptions import GenerationError, ParameterError, SizeError
from settings import get_settings

logger = logging.getLogger("hypercross")


class SearchResult(BaseModel):
    objective: Literal["min", "max"]
    trials: int
    best: CrossingReport
    improvements: List[Tuple[int, int]]

    def to_external(self) -> dict:
        return {
            "objective": self.objective,
            "trials": self.trials,
            "best_count": self.best.crossing_count,
            "best_config": {"dim": self.best.config.dim, "points": [[str(x) for x in p] for p in self.best.config.points]},
            "improvements": [{"trial": t + 1, "crossing_count": c} for t, c in self.improvements],
        }


class SearchService:
    """Random restarts plus single-coordinate nudges over exact configurations.

    The walk moves on ties as well as improvements. When minimizing, every other restart
    starts from a simplex with the remaining points inside it.
    """

    def __init__(self, restart_every: int = 25, nudge: Optional[int] = None):
        self.restart_every = restart_every
        self.nudge = nudge

    def _step_bound(self, d: int, n: int) -> int:
        if self.nudge is not None:
            return self.nudge
        return max(1, get_settings().box_factor * n * d // 8)

    def _nudged(self, config: PointConfig, step_bound: int, rng: np.random.Generator) -> Optional[PointConfig]:
        points = [list(p) for p in config.points]
        i = int(rng.integers(config.n))
        r = int(rng.integers(config.dim))
        step = int(rng.integers(-step_bound, step_bound + 1))
        if step == 0:
            return None
        points[i][r] += Fraction(step)
        candidate = PointConfig(dim=config.dim, points=tuple(tuple(p) for p in points))
        if not is_general_position(candidate):
            return None
        return candidate.model_copy(update={"general_position_validated": True})

    def _fresh(self, d: int, n: int, convex: bool, interior: bool, rng: np.random.Generator) -> PointConfig:
        seed = int(rng.integers(2**31 - 1))
        if convex:
            return random_convex_config_3d(n, seed)
        if interior:
            return random_interior_config(d, n, seed)
        return random_general_config(d, n, seed)

    def search(
        self,
        d: int,
        n: int,
        trials: int,
        seed: int,
        objective: Literal["min", "max"] = "min",
        convex: bool = False,
        stop_at: Optional[int] = None,
    ) -> SearchResult:
        if trials <= 0:
            raise ParameterError(f"search budget must be positive, got {trials}")
        if n < 2 * d:
            raise SizeError(f"K_n^d needs n >= 2d = {2 * d}, got n={n}")
        if convex and d != 3:
            raise ParameterError("convex configurations are generated in R^3 only")

        rng = np.random.default_rng(seed)
        step_bound = self._step_bound(d, n)
        better = (lambda a, b: a < b) if objective == "min" else (lambda a, b: a > b)
        best: Optional[CrossingReport] = None
        current: Optional[CrossingReport] = None
        improvements: List[Tuple[int, int]] = []
        logger.info(f"🔍 Searching {trials} trials for the {objective} crossing count of K_{n}^{d}")

        for trial in range(trials):
            restart = current is None or convex or trial % self.restart_every == 0
            if restart:
                interior = objective == "min" and (trial // self.restart_every) % 2 == 0
                try:
                    candidate = self._fresh(d, n, convex, interior, rng)
                except GenerationError as e:
                    logger.warning(f"⚠️ Trial {trial + 1}: {e}")
                    continue
            else:
                candidate = self._nudged(current.config, step_bound, rng)
                if candidate is None:
                    continue
            report = count_crossing_pairs(candidate, keep_witnesses=False)
            if restart or not better(current.crossing_count, report.crossing_count):
                current = report
            if best is None or better(report.crossing_count, best.crossing_count):
                best = report
                improvements.append((trial, report.crossing_count))
                logger.info(f"✅ Trial {trial + 1}: {report.crossing_count} crossing pairs")
                if stop_at is not None and report.crossing_count == stop_at:
                    break

        if best is None:
            raise GenerationError("no trial produced a valid configuration")
        return SearchResult(objective=objective, trials=trials, best=best, improvements=improvements)
