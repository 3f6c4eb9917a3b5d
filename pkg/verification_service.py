import logging
from itertools import combinations
from math import comb
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from configs import (
    MomentParams,
    PointConfig,
    hull_interior_points,
    is_convex_position,
    moment_config,
    random_convex_config_3d,
    random_general_config,
    validated,
)
from crossing import (
    Bipartition,
    count_crossing_pairs,
    crossing_split_counts,
    extension_crossings,
    full_bipartitions,
    simplices_cross,
)
from crossing_service import CrossingService
from exceptions import DegeneracyError, HypercrossError, ParameterError
from gale import gale_convexity_check, gale_moment_d3, gale_transform, observation_holds, spans_check
from moment import (
    closed_form_cdm,
    count_moment_crossings_enum,
    lemma8_lower_bound,
    noncrossing_distribution_count,
    noncrossing_distribution_enum,
    noncrossing_distribution_proof_form,
    thm1_lower_bound,
)
from separations import count_proper_separations, separation_split_counts, sweep_lower_bound_witnesses

logger = logging.getLogger("hypercross")

GEOMETRIC_D_MAX = 5
COMBINATORIAL_D_MAX = 14
ENUMERATION_D_MAX = 10
BOUND_CHAIN_DIMS = range(4, 11)


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str
    degenerate_input: bool = False


class VerificationReport(BaseModel):
    passed: bool
    exit_code: int
    d_min: int
    d_max: int
    trials: int
    seed: int
    cdm: List[int]
    checks: List[CheckResult]

    @property
    def failed_checks(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]


def _stream_seeds(seed: int, stream: int, count: int) -> List[int]:
    return [int(s) for s in np.random.SeedSequence([seed, stream]).generate_state(count)]


def _sub_pairs(config: PointConfig, total: int) -> List[Bipartition]:
    """Bipartitions on every `total`-subset of the points with both sides in 2..d."""
    pairs = []
    for support in combinations(range(config.n), total):
        for local in full_bipartitions(total, 2, config.dim):
            pairs.append(Bipartition.of([support[i] for i in local.left], [support[i] for i in local.right]))
    return pairs


class VerificationService:
    """Runs the named consistency checks between formulas, enumerations and exact geometry."""

    def __init__(self, crossing_service: CrossingService, geometric_samples: int = 20):
        self.crossing_service = crossing_service
        self.geometric_samples = geometric_samples

    def _run(self, name: str, check: Callable[[], Tuple[bool, str]]) -> CheckResult:
        try:
            passed, detail = check()
        except DegeneracyError as e:
            logger.error(f"❌ {name}: degenerate input: {e}")
            return CheckResult(name=name, passed=False, detail=str(e), degenerate_input=True)
        except HypercrossError as e:
            logger.error(f"❌ {name}: {e}")
            return CheckResult(name=name, passed=False, detail=str(e))
        if passed:
            logger.info(f"✅ {name}: {detail}")
        else:
            logger.warning(f"🚨 {name}: {detail}")
        return CheckResult(name=name, passed=passed, detail=detail)

    def check_cdm_agreement(self, dims: range) -> Tuple[bool, str]:
        mismatches = []
        for d in dims:
            formula = closed_form_cdm(d)
            counts = {}
            if d <= ENUMERATION_D_MAX:
                counts["enum"] = count_moment_crossings_enum(d)
            if d <= GEOMETRIC_D_MAX:
                config = moment_config(MomentParams.integers(d, 2 * d))
                counts["geometric"] = self.crossing_service.count(config, keep_witnesses=False).crossing_count
            for source, value in counts.items():
                if value != formula:
                    mismatches.append(f"d={d}: formula {formula} vs {source} {value}")
        if mismatches:
            return False, "; ".join(mismatches)
        return True, f"closed form agrees with enumeration (d <= {ENUMERATION_D_MAX}) and geometry (d <= {GEOMETRIC_D_MAX}) for d={dims.start}..{dims.stop - 1}"

    def check_noncrossing_forms(self, dims: range) -> Tuple[bool, str]:
        mismatches = []
        for d in dims:
            count, proof = noncrossing_distribution_count(d), noncrossing_distribution_proof_form(d)
            if count != proof:
                mismatches.append(f"d={d}: {count} vs proof form {proof}")
            if d <= ENUMERATION_D_MAX and noncrossing_distribution_enum(d) != count:
                mismatches.append(f"d={d}: {count} vs block enumeration {noncrossing_distribution_enum(d)}")
        if mismatches:
            return False, "; ".join(mismatches)
        return True, f"noncrossing counts consistent for d={dims.start}..{dims.stop - 1}"

    def check_bound_chain(self, dims: range, seed: int) -> Tuple[bool, str]:
        broken = []
        for d in BOUND_CHAIN_DIMS:
            cdm = closed_form_cdm(d)
            if not thm1_lower_bound(d).value <= cdm <= comb(2 * d, d):
                broken.append(f"d={d}: thm1 <= cdm <= C(2d,d) fails")
            if not lemma8_lower_bound(d).value <= cdm:
                broken.append(f"d={d}: lemma8 <= cdm fails")
        sampled = {}
        for d in (x for x in dims if x in (4, 5)):
            floor = thm1_lower_bound(d).value
            sampled[d] = self.geometric_samples
            for sample_seed in _stream_seeds(seed, d, self.geometric_samples):
                config = random_general_config(d, 2 * d, sample_seed)
                found = self.crossing_service.count(config, keep_witnesses=False).crossing_count
                if found < floor:
                    broken.append(f"d={d}, seed {sample_seed}: {found} crossings below {floor}")
        if broken:
            return False, "; ".join(broken)
        samples = "".join(f", {count} random configurations at d={d}" for d, count in sampled.items())
        return True, f"bounds ordered for d={BOUND_CHAIN_DIMS.start}..{BOUND_CHAIN_DIMS.stop - 1}{samples}"

    def check_sweep_witnesses(self, dims: range) -> Tuple[bool, str]:
        broken = []
        for d in (x for x in dims if 4 <= x <= GEOMETRIC_D_MAX):
            config = moment_config(MomentParams.integers(d, 2 * d))
            witnesses = sweep_lower_bound_witnesses(config)
            if len(witnesses) < thm1_lower_bound(d).value:
                broken.append(f"d={d}: {len(witnesses)} sweep witnesses below the bound")
            if not all(simplices_cross(config, w) for w in witnesses):
                broken.append(f"d={d}: a sweep witness does not cross")
        if broken:
            return False, "; ".join(broken)
        return True, "sweep witnesses cross and meet the lower bound"

    def check_convex_k6(self, trials: int, seed: int) -> Tuple[bool, str]:
        broken = []
        for sample_seed in _stream_seeds(seed, 6, trials):
            config = random_convex_config_3d(6, sample_seed)
            crossings = count_crossing_pairs(config, keep_witnesses=False).crossing_count
            proper = count_proper_separations(gale_transform(config))
            if crossings != 3 or proper != 3:
                broken.append(f"seed {sample_seed}: {crossings} crossings, {proper} proper separations")
        if broken:
            return False, "; ".join(broken)
        return True, f"{trials} convex 6-point configurations in R^3 have exactly 3 crossing pairs"

    def check_gale_bridges(self, trials: int, seed: int) -> Tuple[bool, str]:
        broken = []
        for i, sample_seed in enumerate(_stream_seeds(seed, 2, trials)):
            d = 2 + i % 2
            m = d + 3 + (i // 2) % 2
            config = random_general_config(d, m, sample_seed)
            diagram = gale_transform(config)
            if not spans_check(diagram):
                broken.append(f"d={d}, m={m}, seed {sample_seed}: vectors fail to span")
            elif gale_convexity_check(diagram) != is_convex_position(config):
                interior = [i + 1 for i in hull_interior_points(config)]
                broken.append(f"d={d}, m={m}, seed {sample_seed}: convexity criteria disagree (interior points {interior})")
        if broken:
            return False, "; ".join(broken)
        return True, f"spanning and convexity bridges hold on {trials} configurations"

    def check_separation_bijection(self, trials: int, seed: int) -> Tuple[bool, str]:
        broken = []
        for i, sample_seed in enumerate(_stream_seeds(seed, 3, trials)):
            d = 2 + i % 2
            config = random_general_config(d, d + 3, sample_seed)
            crossing, separated = crossing_split_counts(config), separation_split_counts(gale_transform(config))
            if crossing != separated:
                broken.append(f"d={d}, seed {sample_seed}: crossings {dict(crossing)} vs separations {dict(separated)}")
        if broken:
            return False, "; ".join(broken)
        return True, f"separations match crossing splits on {trials} configurations"

    def check_extensions(self, dims: range, seed: int) -> Tuple[bool, str]:
        broken, checked = [], 0
        for d in (x for x in dims if 3 <= x <= 4):
            configs = [
                moment_config(MomentParams.integers(d, 2 * d)),
                random_general_config(d, 2 * d, _stream_seeds(seed, 40 + d, 1)[0]),
            ]
            for config in configs:
                sub_pairs = _sub_pairs(config, d + 1) + _sub_pairs(config, d + 2)
                for sub_pair in sub_pairs:
                    if not simplices_cross(config, sub_pair):
                        continue
                    for pair in extension_crossings(config, sub_pair):
                        checked += 1
                        if not simplices_cross(config, pair):
                            broken.append(f"d={d}: {pair.to_external()} extends {sub_pair.to_external()} but does not cross")
        if broken:
            return False, "; ".join(broken)
        return True, f"{checked} extensions of crossing sub-pairs all cross"

    def check_observation(self, dims: range) -> Tuple[bool, str]:
        failing = [d for d in dims if not observation_holds(gale_moment_d3(MomentParams.integers(d, d + 3)), d)]
        if failing:
            return False, f"quadrant or slope pattern broken for d={failing}"
        return True, "moment diagrams alternate quadrants with decreasing slopes"

    def check_input_config(self, config: PointConfig) -> Tuple[bool, str]:
        validated(config)
        return True, f"{config.n} input points in general position"

    def verify(
        self,
        d_min: int = 2,
        d_max: int = 4,
        trials: int = 25,
        seed: int = 42,
        input_config: Optional[PointConfig] = None,
    ) -> VerificationReport:
        if d_min < 2 or d_max < d_min:
            raise ParameterError(f"empty dimension range {d_min}..{d_max}")
        if d_max > COMBINATORIAL_D_MAX:
            raise ParameterError(f"verification stops at d = {COMBINATORIAL_D_MAX}, got {d_max}")
        if trials <= 0:
            raise ParameterError(f"trial count must be positive, got {trials}")

        dims = range(d_min, d_max + 1)
        logger.info(f"🔍 Verifying d={d_min}..{d_max} with {trials} trials (seed {seed})")
        checks = []
        if input_config is not None:
            checks.append(self._run("general-position", lambda: self.check_input_config(input_config)))
        checks += [
            self._run("cdm-agreement", lambda: self.check_cdm_agreement(dims)),
            self._run("noncrossing-forms", lambda: self.check_noncrossing_forms(dims)),
            self._run("bound-chain", lambda: self.check_bound_chain(dims, seed)),
            self._run("sweep-witnesses", lambda: self.check_sweep_witnesses(dims)),
            self._run("convex-k6", lambda: self.check_convex_k6(trials, seed)),
            self._run("gale-bridges", lambda: self.check_gale_bridges(trials, seed)),
            self._run("separation-bijection", lambda: self.check_separation_bijection(trials, seed)),
            self._run("extension", lambda: self.check_extensions(dims, seed)),
            self._run("moment-observation", lambda: self.check_observation(dims)),
        ]

        failed = [c for c in checks if not c.passed]
        if not failed:
            exit_code = 0
        elif any(c.degenerate_input for c in failed):
            exit_code = 3
        else:
            exit_code = 1
        if failed:
            logger.warning(f"🚨 {len(failed)} check(s) failed: {', '.join(c.name for c in failed)}")
        else:
            logger.info(f"✅ All {len(checks)} checks passed")
        return VerificationReport(
            passed=not failed,
            exit_code=exit_code,
            d_min=d_min,
            d_max=d_max,
            trials=trials,
            seed=seed,
            cdm=[closed_form_cdm(d) for d in dims],
            checks=checks,
        )
