from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict

from configs import PointConfig, validated
from crossing import Bipartition, extension_crossings
from exact_core import Rational, Vector
from exceptions import DegenerateDiagramError, ShapeError, SizeError
from gale import GaleDiagram, gale_transform


class Separation(BaseModel):
    """A split of the diagram by a line through the origin with direction `boundary`.

    `positive_side` holds the (0-based) vectors counter-clockwise of the boundary direction.
    """

    model_config = ConfigDict(frozen=True)

    positive_side: Tuple[int, ...]
    negative_side: Tuple[int, ...]
    boundary: Tuple[Rational, Rational]

    @property
    def sizes(self) -> Tuple[int, int]:
        return len(self.positive_side), len(self.negative_side)

    @property
    def min_side(self) -> int:
        return min(self.sizes)

    @property
    def is_proper(self) -> bool:
        m = len(self.positive_side) + len(self.negative_side)
        return self.min_side == m // 2

    def unordered(self) -> frozenset:
        return frozenset((self.positive_side, self.negative_side))

    def flipped(self) -> "Separation":
        return Separation(
            positive_side=self.negative_side,
            negative_side=self.positive_side,
            boundary=(-self.boundary[0], -self.boundary[1]),
        )

    def to_external(self) -> dict:
        return {
            "positive_side": [i + 1 for i in self.positive_side],
            "negative_side": [i + 1 for i in self.negative_side],
            "boundary": [str(x) for x in self.boundary],
        }


def _cross(a: Vector, b: Vector) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _upper(v: Vector) -> Vector:
    # representative of the line through v in the half-open upper half-plane
    if v[1] > 0 or (v[1] == 0 and v[0] > 0):
        return v
    return (-v[0], -v[1])


def _critical_directions(diagram: GaleDiagram) -> List[Vector]:
    if diagram.k != 2:
        raise ShapeError(f"the rotating-line sweep needs planar vectors, got k={diagram.k}")
    vectors = diagram.vectors
    for i, v in enumerate(vectors):
        if v[0] == 0 and v[1] == 0:
            raise DegenerateDiagramError(f"vector {i + 1} is zero")
    for i, j in combinations(range(len(vectors)), 2):
        if _cross(vectors[i], vectors[j]) == 0:
            raise DegenerateDiagramError(f"vectors {i + 1} and {j + 1} are collinear")

    def by_angle(a: Vector, b: Vector) -> int:
        c = _cross(a, b)
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted((_upper(v) for v in vectors), key=cmp_to_key(by_angle))


def _arc_directions(critical: List[Vector]) -> List[Vector]:
    """One direction strictly inside each arc between consecutive critical directions, by angle."""
    m = len(critical)
    if m == 1:
        c = critical[0]
        return [(-c[1], c[0])]
    arcs = []
    for r in range(m - 1):
        a, b = critical[r], critical[r + 1]
        arcs.append((a[0] + b[0], a[1] + b[1]))
    last, first = critical[-1], critical[0]
    arcs.append((last[0] - first[0], last[1] - first[1]))
    return arcs


def _split(diagram: GaleDiagram, direction: Vector) -> Separation:
    positive = tuple(i for i, v in enumerate(diagram.vectors) if _cross(direction, v) > 0)
    negative = tuple(i for i, v in enumerate(diagram.vectors) if _cross(direction, v) < 0)
    return Separation(positive_side=positive, negative_side=negative, boundary=direction)


def enumerate_separations(diagram: GaleDiagram) -> List[Separation]:
    seen = set()
    separations = []
    for direction in _arc_directions(_critical_directions(diagram)):
        sep = _split(diagram, direction)
        if not sep.positive_side or not sep.negative_side or sep.unordered() in seen:
            continue
        seen.add(sep.unordered())
        separations.append(sep)
    return separations


def count_proper_separations(diagram: GaleDiagram) -> int:
    return sum(1 for sep in enumerate_separations(diagram) if sep.is_proper)


def sweep_partition_sequence(diagram: GaleDiagram) -> List[Tuple[Separation, int]]:
    """Partitions met by a line rotating clockwise through a half-turn, starting at the first arc.

    Orientation is carried along the rotation, so consecutive entries (and the last entry
    against the first one flipped) differ by exactly one vector changing sides.
    """
    arcs = _arc_directions(_critical_directions(diagram))
    oriented = [arcs[0]] + [(-a[0], -a[1]) for a in reversed(arcs[1:])]
    sequence = []
    for direction in oriented:
        sep = _split(diagram, direction)
        if not sep.positive_side or not sep.negative_side:
            raise DegenerateDiagramError("all vectors lie in one open half-plane; the sweep has an empty side")
        sequence.append((sep, sep.min_side))
    return sequence


def count_balanced_entries(diagram: GaleDiagram, min_side: int) -> int:
    return sum(1 for _, smallest in sweep_partition_sequence(diagram) if smallest >= min_side)


def separation_crossing_pairs(diagram: GaleDiagram) -> List[Bipartition]:
    """The crossing pairs of the source points encoded by each separation of its Gale diagram."""
    pairs = [Bipartition.of(sep.positive_side, sep.negative_side) for sep in enumerate_separations(diagram)]
    return sorted(pairs, key=Bipartition.sort_key)


def sweep_lower_bound_witnesses(config: PointConfig) -> List[Bipartition]:
    """Crossing hyperedge pairs certified by sweeping the Gale diagram of the first d+3 points.

    Every sweep partition with at least 3 vectors per side is a crossing sub-pair on those
    points; extending it with the other d-3 points yields crossing hyperedge pairs.
    """
    d = config.dim
    if config.n != 2 * d:
        raise SizeError(f"the sweep certificate works on 2d = {2 * d} points, got {config.n}")
    if d < 3:
        return []
    config = validated(config)
    head = PointConfig(dim=d, points=config.points[: d + 3], general_position_validated=True)
    found = set()
    for sep, smallest in sweep_partition_sequence(gale_transform(head)):
        if smallest < 3:
            continue
        sub_pair = Bipartition.of(sep.positive_side, sep.negative_side)
        found.update(extension_crossings(config, sub_pair))
    return sorted(found, key=Bipartition.sort_key)


def separation_split_counts(diagram: GaleDiagram) -> Counter:
    """Separations keyed by (smaller side, larger side), leaving out single-vector sides."""
    counts = Counter()
    for sep in enumerate_separations(diagram):
        if sep.min_side >= 2:
            counts[tuple(sorted(sep.sizes))] += 1
    return counts
