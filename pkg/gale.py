from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import prod
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from configs import MomentParams, PointConfig, lifted_matrix, moment_config, require_increasing
from exact_core import Matrix, Rational, Vector, det, find_feasible_point, null_space_basis
from exceptions import DegenerateDiagramError, FlatConfigurationError, ShapeError, SizeError


class GaleDiagram(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int
    k: int = Field(ge=1)
    vectors: Tuple[Tuple[Rational, ...], ...]
    source: Optional[PointConfig] = Field(default=None, exclude=True)

    @model_validator(mode="after")
    def _shape(self):
        if len(self.vectors) != self.m:
            raise ValueError(f"expected {self.m} vectors, got {len(self.vectors)}")
        if any(len(v) != self.k for v in self.vectors):
            raise ValueError(f"every vector must live in R^{self.k}")
        if self.source is not None and self.k != self.m - self.source.dim - 1:
            raise ValueError("k must equal m - d - 1 for the source configuration")
        return self

    def basis_vectors(self) -> List[Vector]:
        """The k null-space vectors of M(P) the diagram was read from (one entry per point)."""
        return [tuple(v[r] for v in self.vectors) for r in range(self.k)]

    def to_json(self) -> str:
        return self.model_dump_json(include={"m", "k", "vectors"})


def gale_transform(config: PointConfig) -> GaleDiagram:
    m, d = config.n, config.dim
    if m < d + 2:
        raise SizeError(f"Gale transform of {m} points in R^{d} needs m >= {d + 2}")
    lifted = lifted_matrix(config.points)
    if lifted.rank() != d + 1:
        raise FlatConfigurationError(f"the {m} points do not affinely span R^{d}")
    basis = null_space_basis(lifted)
    vectors = tuple(tuple(b[i] for b in basis) for i in range(m))
    return GaleDiagram(m=m, k=m - d - 1, vectors=vectors, source=config)


def _moment_gale(params: MomentParams) -> GaleDiagram:
    require_increasing(params.ts)
    d, ts = params.dim, params.ts
    n = len(ts)
    sign = (-1) ** (d + 1)
    head = range(d + 1)
    vectors = []
    for i in head:
        denominator = prod((ts[k] - ts[i] for k in head if k != i), start=Fraction(1))
        coords = []
        for r in range(d + 1, n):
            numerator = prod((ts[r] - ts[j] for j in head if j != i), start=Fraction(1))
            coords.append(sign * numerator / denominator)
        vectors.append(tuple(coords))
    for r in range(d + 1, n):
        vectors.append(tuple(Fraction(int(c == r)) for c in range(d + 1, n)))
    return GaleDiagram(m=n, k=n - d - 1, vectors=tuple(vectors), source=moment_config(params))


def gale_moment_d3(params: MomentParams) -> GaleDiagram:
    if len(params.ts) != params.dim + 3:
        raise ShapeError(f"closed form needs d+3 = {params.dim + 3} parameters, got {len(params.ts)}")
    return _moment_gale(params)


def gale_moment_2d(params: MomentParams) -> GaleDiagram:
    if len(params.ts) != 2 * params.dim:
        raise ShapeError(f"closed form needs 2d = {2 * params.dim} parameters, got {len(params.ts)}")
    return _moment_gale(params)


def spans_check(diagram: GaleDiagram) -> bool:
    return all(det(Matrix.from_rows(subset)) != 0 for subset in combinations(diagram.vectors, diagram.k))


def isolatable(diagram: GaleDiagram, index: int) -> bool:
    """True iff some linear hyperplane leaves vector `index` alone strictly on one side.

    Variables: a = a_plus - a_minus (2k), then one slack per other vector.
    a.v_index = 1 and a.v_j + s_j = 0 keep every other vector on the closed far side.
    """
    k = diagram.k
    others = [j for j in range(diagram.m) if j != index]
    rows, rhs = [], []
    target = diagram.vectors[index]
    rows.append(list(target) + [-x for x in target] + [0] * len(others))
    rhs.append(1)
    for slot, j in enumerate(others):
        v = diagram.vectors[j]
        row = list(v) + [-x for x in v] + [0] * len(others)
        row[2 * k + slot] = 1
        rows.append(row)
        rhs.append(0)
    return find_feasible_point(Matrix.from_rows(rows), rhs) is not None


def gale_convexity_check(diagram: GaleDiagram) -> bool:
    if not spans_check(diagram):
        raise DegenerateDiagramError("some k of the vectors fail to span; convexity criterion needs general position")
    if diagram.k == 2:
        from separations import enumerate_separations

        return all(sep.min_side > 1 for sep in enumerate_separations(diagram))
    return not any(isolatable(diagram, i) for i in range(diagram.m))


def slope_sequence(diagram: GaleDiagram) -> List[Optional[Fraction]]:
    """Exact slopes b/a of planar vectors; None stands for the vertical (infinite) slope."""
    if diagram.k != 2:
        raise ShapeError(f"slopes are defined for planar diagrams, got k={diagram.k}")
    return [None if a == 0 else b / a for a, b in diagram.vectors]


def observation_holds(diagram: GaleDiagram, d: int) -> bool:
    """Quadrant alternation and slope ordering of the closed-form d+3 moment diagram."""
    if diagram.m != d + 3 or diagram.k != 2:
        raise ShapeError(f"expected d+3 = {d + 3} planar vectors")
    for i, (a, b) in enumerate(diagram.vectors[: d + 1], start=1):
        first_quadrant = (d + 1 + i) % 2 == 1
        if first_quadrant and not (a > 0 and b > 0):
            return False
        if not first_quadrant and not (a < 0 and b < 0):
            return False
    if diagram.vectors[d + 1] != (1, 0) or diagram.vectors[d + 2] != (0, 1):
        return False
    slopes = slope_sequence(diagram)[: d + 1] + [Fraction(0)]
    return all(s > t for s, t in zip(slopes, slopes[1:]))
