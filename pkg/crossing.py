from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from configs import PointConfig, affinely_independent, validated
from exact_core import LpProblem, LpStatus, Matrix, lp_max_slack
from exceptions import ContractError, DegenerateSupportError, DimensionError, DisjointnessError, SizeError


class Bipartition(BaseModel):
    """Two disjoint vertex sets, stored 0-based with min(U ∪ V) on the left."""

    model_config = ConfigDict(frozen=True)

    left: Tuple[int, ...]
    right: Tuple[int, ...]

    @model_validator(mode="after")
    def _canonical(self):
        if not self.left or not self.right:
            raise SizeError("both sides of a bipartition need at least one vertex")
        if set(self.left) & set(self.right):
            raise DisjointnessError(f"index sets overlap in {sorted(set(self.left) & set(self.right))}")
        for side in (self.left, self.right):
            if list(side) != sorted(set(side)):
                raise ValueError(f"bipartition sides must be strictly increasing, got {side}")
        if self.right[0] < self.left[0]:
            raise ValueError("the smallest vertex belongs on the left")
        return self

    @classmethod
    def of(cls, u: Iterable[int], v: Iterable[int]) -> "Bipartition":
        u, v = tuple(sorted(set(u))), tuple(sorted(set(v)))
        if set(u) & set(v):
            raise DisjointnessError(f"index sets overlap in {sorted(set(u) & set(v))}")
        if not u or not v:
            raise SizeError("both sides of a bipartition need at least one vertex")
        if min(v) < min(u):
            u, v = v, u
        return cls(left=u, right=v)

    def sort_key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return self.left, self.right

    def to_external(self) -> dict:
        return {"left": [i + 1 for i in self.left], "right": [i + 1 for i in self.right]}


class CrossingReport(BaseModel):
    config: PointConfig = Field(exclude=True)
    hyperedge_size: int
    total_pairs: int
    crossing_count: int
    witnesses: Optional[List[Bipartition]] = None

    def to_external(self) -> dict:
        payload = {
            "dim": self.config.dim,
            "n": self.config.n,
            "hyperedge_size": self.hyperedge_size,
            "total_pairs": self.total_pairs,
            "crossing_count": self.crossing_count,
        }
        if self.witnesses is not None:
            payload["witnesses"] = [w.to_external() for w in self.witnesses]
        return payload


def crossing_lp(config: PointConfig, u: Sequence[int], v: Sequence[int]) -> LpProblem:
    """Variables a_U, b_V, t with lambda = a + t, mu = b + t; maximize t.

    Rows: sum lambda_i p_i - sum mu_j p_j = 0 per coordinate, sum lambda = 1, sum mu = 1.
    """
    p, q = [config.points[i] for i in u], [config.points[j] for j in v]
    width = len(u) + len(v) + 1
    rows, rhs = [], []
    for r in range(config.dim):
        row = [x[r] for x in p] + [-y[r] for y in q]
        row.append(sum((x[r] for x in p), Fraction(0)) - sum((y[r] for y in q), Fraction(0)))
        rows.append(row)
        rhs.append(0)
    rows.append([1] * len(u) + [0] * len(v) + [len(u)])
    rhs.append(1)
    rows.append([0] * len(u) + [1] * len(v) + [len(v)])
    rhs.append(1)
    return LpProblem(a_eq=Matrix.from_rows(rows), b_eq=tuple(Fraction(x) for x in rhs), objective_index=width - 1)


def sets_cross(config: PointConfig, u: Sequence[int], v: Sequence[int]) -> bool:
    if set(u) & set(v):
        raise DisjointnessError(f"index sets overlap in {sorted(set(u) & set(v))}")
    if any(not 0 <= i < config.n for i in (*u, *v)):
        raise DimensionError(f"vertex index outside 1..{config.n}")
    for side in (u, v):
        if not 1 <= len(side) <= config.dim + 1:
            raise SizeError(f"a simplex in R^{config.dim} has 1..{config.dim + 1} vertices, got {len(side)}")
        if not config.general_position_validated and not affinely_independent([config.points[i] for i in side]):
            raise DegenerateSupportError(f"vertices {[i + 1 for i in side]} are affinely dependent")
    result = lp_max_slack(crossing_lp(config, u, v))
    # touching closures give optimum 0: relative interiors stay disjoint
    return result.status is LpStatus.OPTIMAL and result.optimum > 0


def simplices_cross(config: PointConfig, pair: Bipartition) -> bool:
    return sets_cross(config, pair.left, pair.right)


def hyperedge_pairs(n: int, size: int) -> List[Bipartition]:
    """Every unordered pair of disjoint `size`-subsets of range(n), in canonical lexicographic order."""
    pairs = []
    for support in combinations(range(n), 2 * size):
        first, rest = support[0], support[1:]
        for chosen in combinations(rest, size - 1):
            left = (first,) + chosen
            right = tuple(i for i in rest if i not in chosen)
            pairs.append(Bipartition(left=left, right=right))
    pairs.sort(key=Bipartition.sort_key)
    return pairs


def crossing_pairs_among(config: PointConfig, pairs: Iterable[Bipartition]) -> List[Bipartition]:
    return [pair for pair in pairs if simplices_cross(config, pair)]


def count_crossing_pairs(
    config: PointConfig, hyperedge_size: Optional[int] = None, keep_witnesses: bool = True
) -> CrossingReport:
    size = config.dim if hyperedge_size is None else hyperedge_size
    if config.n < 2 * size:
        raise SizeError(f"{config.n} points cannot host two disjoint hyperedges of size {size}")
    config = validated(config)
    pairs = hyperedge_pairs(config.n, size)
    crossing = crossing_pairs_among(config, pairs)
    return CrossingReport(
        config=config,
        hyperedge_size=size,
        total_pairs=len(pairs),
        crossing_count=len(crossing),
        witnesses=crossing if keep_witnesses else None,
    )


def extension_crossings(config: PointConfig, pair: Bipartition) -> List[Bipartition]:
    d = config.dim
    p, q = len(pair.left), len(pair.right)
    if not (2 <= p <= d and 2 <= q <= d):
        raise ContractError(f"both sides need 2..{d} vertices, got {p} and {q}")
    if p + q < d + 1:
        raise ContractError(f"the sides must hold at least d+1 = {d + 1} vertices together, got {p + q}")
    if config.n < 2 * d:
        raise ContractError(f"extending to hyperedges of size {d} needs {2 * d} points, got {config.n}")
    config = validated(config)
    if not simplices_cross(config, pair):
        raise ContractError(f"{pair.to_external()} is not a crossing pair")
    remaining = [i for i in range(config.n) if i not in pair.left and i not in pair.right]
    extended = []
    for extra_left in combinations(remaining, d - p):
        rest = [i for i in remaining if i not in extra_left]
        for extra_right in combinations(rest, d - q):
            extended.append(Bipartition.of(pair.left + extra_left, pair.right + extra_right))
    extended.sort(key=Bipartition.sort_key)
    return extended


def full_bipartitions(n: int, min_side: int, max_side: int) -> List[Bipartition]:
    """Every split of all n vertices into two sides with sizes in [min_side, max_side]."""
    pairs = []
    for size in range(max(min_side, 1), n):
        if not (min_side <= n - size <= max_side) or size > max_side:
            continue
        for rest in combinations(range(1, n), size - 1):
            left = (0,) + rest
            right = tuple(i for i in range(1, n) if i not in rest)
            pairs.append(Bipartition(left=left, right=right))
    pairs.sort(key=Bipartition.sort_key)
    return pairs


def crossing_split_counts(config: PointConfig) -> Counter:
    """Crossing partitions of all points keyed by (smaller side, larger side); sides in 2..d+1."""
    config = validated(config)
    counts = Counter()
    for pair in full_bipartitions(config.n, 2, config.dim + 1):
        if simplices_cross(config, pair):
            counts[tuple(sorted((len(pair.left), len(pair.right))))] += 1
    return counts
