from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from exact_core import Matrix, Rational, Vector, det, find_feasible_point, to_vector
from exceptions import (
    DegenerateQueryError,
    GenerationError,
    GeneralPositionError,
    OrderingError,
    ParameterError,
    SizeError,
)
from settings import get_settings


class PointConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=2)
    points: Tuple[Tuple[Rational, ...], ...]
    general_position_validated: bool = Field(default=False, exclude=True)

    @model_validator(mode="after")
    def _coordinates_match_dim(self):
        for i, p in enumerate(self.points):
            if len(p) != self.dim:
                raise ValueError(f"point {i + 1} has {len(p)} coordinates, expected {self.dim}")
        return self

    @property
    def n(self) -> int:
        return len(self.points)

    def to_json(self) -> str:
        return self.model_dump_json(include={"dim", "points"})

    @classmethod
    def from_json(cls, text: str) -> "PointConfig":
        return cls.model_validate_json(text).untrusted()

    def untrusted(self) -> "PointConfig":
        # external input never carries the validation flag
        return self.model_copy(update={"general_position_validated": False})


class MomentParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=2)
    ts: Tuple[Rational, ...]

    @classmethod
    def integers(cls, dim: int, n: int, start: int = 1) -> "MomentParams":
        return cls(dim=dim, ts=tuple(range(start, start + n)))


def require_increasing(ts: Sequence[Fraction]) -> None:
    for a, b in zip(ts, ts[1:]):
        if not a < b:
            raise OrderingError(f"moment parameters must be strictly increasing, got {a} before {b}")


def lifted_matrix(points: Sequence[Sequence[Fraction]]) -> Matrix:
    """M(P): one column per point, coordinates on top and a row of ones below."""
    if not points:
        return Matrix(0, 0, ())
    dim = len(points[0])
    rows = [[p[r] for p in points] for r in range(dim)]
    rows.append([1] * len(points))
    return Matrix.from_rows(rows)


def affinely_independent(points: Sequence[Sequence[Fraction]]) -> bool:
    return lifted_matrix(points).rank() == len(points)


def moment_config(params: MomentParams) -> PointConfig:
    require_increasing(params.ts)
    points = tuple(tuple(t ** e for e in range(1, params.dim + 1)) for t in params.ts)
    # Vandermonde: distinct parameters never put d+1 moment points on a hyperplane
    return PointConfig(dim=params.dim, points=points, general_position_validated=True)


def is_general_position(config: PointConfig) -> bool:
    d = config.dim
    if config.n <= d:
        raise DegenerateQueryError(f"{config.n} points in R^{d}: general position is vacuous")
    for subset in combinations(config.points, d + 1):
        if det(lifted_matrix(subset)) == 0:
            return False
    return True


def validated(config: PointConfig) -> PointConfig:
    if config.general_position_validated:
        return config
    if not is_general_position(config):
        raise GeneralPositionError(f"some {config.dim + 1} of the {config.n} points lie on a common hyperplane")
    return config.model_copy(update={"general_position_validated": True})


def hull_interior_points(config: PointConfig) -> List[int]:
    """Indices of points that are convex combinations of the others (not hull vertices)."""
    config = validated(config)
    interior = []
    for i, p in enumerate(config.points):
        others = [q for j, q in enumerate(config.points) if j != i]
        if find_feasible_point(lifted_matrix(others), list(p) + [1]) is not None:
            interior.append(i)
    return interior


def is_convex_position(config: PointConfig) -> bool:
    return not hull_interior_points(config)


def apply_affine_map(config: PointConfig, linear: Matrix, offset: Sequence) -> PointConfig:
    shift = to_vector(offset)
    points = tuple(tuple(a + b for a, b in zip(linear.apply(p), shift)) for p in config.points)
    return PointConfig(dim=config.dim, points=points)


def _budget(retry_budget: Optional[int]) -> int:
    budget = get_settings().retry_budget if retry_budget is None else retry_budget
    if budget <= 0:
        raise ParameterError(f"retry budget must be positive, got {budget}")
    return budget


def random_general_config(
    dim: int,
    n: int,
    seed: int,
    coordinate_bound: Optional[int] = None,
    retry_budget: Optional[int] = None,
) -> PointConfig:
    if n < dim + 1:
        raise SizeError(f"need at least {dim + 1} points in R^{dim}, got {n}")
    bound = get_settings().box_factor * n * dim if coordinate_bound is None else coordinate_bound
    if bound < n:
        raise ParameterError(f"coordinate bound {bound} leaves no room for {n} points")
    rng = np.random.default_rng(seed)
    for _ in range(_budget(retry_budget)):
        raw = rng.integers(-bound, bound + 1, size=(n, dim))
        points = tuple(tuple(Fraction(int(x)) for x in row) for row in raw)
        config = PointConfig(dim=dim, points=points)
        if is_general_position(config):
            return config.model_copy(update={"general_position_validated": True})
    raise GenerationError(f"no general-position sample of {n} points in R^{dim} after {_budget(retry_budget)} tries")


def random_interior_config(
    dim: int,
    n: int,
    seed: int,
    coordinate_bound: Optional[int] = None,
    retry_budget: Optional[int] = None,
) -> PointConfig:
    """A random simplex on the first dim+1 points with every later point strictly inside it."""
    if n < dim + 1:
        raise SizeError(f"need at least {dim + 1} points in R^{dim}, got {n}")
    bound = get_settings().box_factor * n * dim if coordinate_bound is None else coordinate_bound
    rng = np.random.default_rng(seed)
    for _ in range(_budget(retry_budget)):
        corners = [tuple(Fraction(int(x)) for x in row) for row in rng.integers(-bound, bound + 1, size=(dim + 1, dim))]
        inner = []
        for weights in rng.integers(1, bound + 1, size=(n - dim - 1, dim + 1)):
            total = int(weights.sum())
            inner.append(tuple(sum(int(w) * c[r] for w, c in zip(weights, corners)) / total for r in range(dim)))
        config = PointConfig(dim=dim, points=tuple(corners + inner))
        if is_general_position(config):
            return config.model_copy(update={"general_position_validated": True})
    raise GenerationError(f"no general-position interior sample of {n} points in R^{dim} after {_budget(retry_budget)} tries")


def _sphere_point(u: Fraction, v: Fraction) -> Vector:
    # inverse stereographic projection keeps rational points exactly on the unit sphere
    s = u * u + v * v
    return (2 * u / (s + 1), 2 * v / (s + 1), (s - 1) / (s + 1))


def random_convex_config_3d(n: int, seed: int, retry_budget: Optional[int] = None) -> PointConfig:
    if n < 4:
        raise SizeError(f"need at least 4 points for a convex configuration in R^3, got {n}")
    rng = np.random.default_rng(seed)
    spread = 3 * n
    for _ in range(_budget(retry_budget)):
        nums = rng.integers(-spread, spread + 1, size=(n, 2))
        dens = rng.integers(1, 5, size=n)
        params = {(Fraction(int(a), int(q)), Fraction(int(b), int(q))) for (a, b), q in zip(nums, dens)}
        if len(params) < n:
            continue
        ordered = [(Fraction(int(a), int(q)), Fraction(int(b), int(q))) for (a, b), q in zip(nums, dens)]
        config = PointConfig(dim=3, points=tuple(_sphere_point(u, v) for u, v in ordered))
        if is_general_position(config) and is_convex_position(config):
            return config.model_copy(update={"general_position_validated": True})
    raise GenerationError(f"no convex general-position sample of {n} points after {_budget(retry_budget)} tries")
