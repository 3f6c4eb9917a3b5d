from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Annotated, Iterable, List, Optional, Sequence, Tuple

import sympy as sp
from pydantic import PlainSerializer, PlainValidator, WithJsonSchema

from exceptions import DimensionError


def parse_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            # decimal strings would silently pass through Fraction; only p/q is exact input here
            raise ValueError(f"not an exact rational string: {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in {value!r}") from None
    raise ValueError(f"cannot read {type(value).__name__} as an exact rational")


Rational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(str, return_type=str, when_used="json"),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+(/\d+)?$"}),
]

Vector = Tuple[Fraction, ...]


def to_vector(values: Iterable) -> Vector:
    return tuple(parse_rational(v) for v in values)


def sympy_to_fraction(x) -> Fraction:
    if isinstance(x, sp.Rational):
        return Fraction(int(x.p), int(x.q))
    return Fraction(str(sp.nsimplify(x)))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"dot product of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: Tuple[Vector, ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "Matrix":
        entries = tuple(to_vector(r) for r in rows)
        if not entries:
            return cls(0, 0, ())
        width = len(entries[0])
        if any(len(r) != width for r in entries):
            raise DimensionError("ragged matrix rows")
        return cls(len(entries), width, entries)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable]) -> "Matrix":
        return cls.from_rows(zip(*[to_vector(c) for c in columns]))

    @classmethod
    def identity(cls, size: int) -> "Matrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def from_sympy(cls, m: sp.Matrix) -> "Matrix":
        if m.rows == 0:
            return cls(0, m.cols, ())
        return cls(m.rows, m.cols, tuple(tuple(sympy_to_fraction(x) for x in m.row(i)) for i in range(m.rows)))

    def to_sympy(self) -> sp.Matrix:
        flat = [sp.Rational(x.numerator, x.denominator) for row in self.entries for x in row]
        return sp.Matrix(self.rows, self.cols, flat)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"{self.rows}x{self.cols} matrix applied to length-{len(v)} vector")
        return tuple(dot(row, v) for row in self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        return Matrix(self.rows, other.cols, tuple(tuple(dot(row, c) for c in cols) for row in self.entries))

    def rank(self) -> int:
        return len(rref(self)[1])


def rref(m: Matrix) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form and its pivot columns in increasing order."""
    if m.rows == 0 or m.cols == 0:
        return [list(row) for row in m.entries], []
    reduced, pivots = m.to_sympy().rref()
    return [list(row) for row in Matrix.from_sympy(reduced).entries], list(pivots)


def det(m: Matrix) -> Fraction:
    if m.rows != m.cols:
        raise DimensionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return Fraction(1)
    return sympy_to_fraction(m.to_sympy().det(method="bareiss"))


def null_space_basis(m: Matrix) -> List[Vector]:
    """Basis of {v : m v = 0}: one vector per free column in index order, that column set to 1."""
    if m.rows == 0:
        return [tuple(Fraction(int(i == j)) for j in range(m.cols)) for i in range(m.cols)]
    return [tuple(sympy_to_fraction(x) for x in v) for v in m.to_sympy().nullspace()]


def solve(m: Matrix, rhs: Sequence) -> Optional[Vector]:
    """One exact solution of m x = rhs (free variables zero), or None when inconsistent."""
    if len(rhs) != m.rows:
        raise DimensionError(f"right-hand side of length {len(rhs)} for {m.rows} rows")
    augmented = Matrix.from_rows(list(row) + [b] for row, b in zip(m.entries, rhs))
    reduced, pivots = rref(augmented)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for row, pc in enumerate(pivots):
        x[pc] = reduced[row][m.cols]
    return tuple(x)


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpProblem:
    """maximize x[objective_index] subject to a_eq x = b_eq, x >= 0."""

    a_eq: Matrix
    b_eq: Vector
    objective_index: int

    @property
    def variables(self) -> int:
        return self.a_eq.cols


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    optimum: Optional[Fraction] = None
    witness: Optional[Vector] = None


class _Tableau:
    # rows hold [coefficients..., rhs]; basis[i] is the variable basic in row i
    def __init__(self, rows: List[List[Fraction]], basis: List[int]):
        self.rows = rows
        self.basis = basis

    @property
    def width(self) -> int:
        return len(self.rows[0]) - 1 if self.rows else 0

    def pivot(self, r: int, c: int):
        p = self.rows[r][c]
        self.rows[r] = [x / p for x in self.rows[r]]
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                f = row[c]
                self.rows[i] = [x - f * y for x, y in zip(row, self.rows[r])]
        self.basis[r] = c

    def maximize(self, cost: Sequence[Fraction], allowed: Sequence[int]) -> LpStatus:
        # Bland's rule: lowest-index entering column, lowest-index leaving variable on ties
        while True:
            entering = None
            for j in allowed:
                if j in self.basis:
                    continue
                reduced = cost[j] - sum((cost[b] * row[j] for b, row in zip(self.basis, self.rows)), Fraction(0))
                if reduced > 0:
                    entering = j
                    break
            if entering is None:
                return LpStatus.OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    key = (row[-1] / row[entering], self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return LpStatus.UNBOUNDED
            self.pivot(best[1], entering)

    def solution(self, n: int) -> Vector:
        x = [Fraction(0)] * n
        for b, row in zip(self.basis, self.rows):
            if b < n:
                x[b] = row[-1]
        return tuple(x)


def _phase_one(a: Matrix, b: Sequence[Fraction]) -> Optional[_Tableau]:
    n, m = a.cols, a.rows
    rows = []
    for i, (coeffs, rhs) in enumerate(zip(a.entries, b)):
        sign = -1 if rhs < 0 else 1
        artificial = [Fraction(0)] * m
        artificial[i] = Fraction(1)
        rows.append([sign * x for x in coeffs] + artificial + [sign * Fraction(rhs)])
    tableau = _Tableau(rows, [n + i for i in range(m)])
    cost = [Fraction(0)] * n + [Fraction(-1)] * m
    tableau.maximize(cost, range(n + m))
    if any(basic >= n and row[-1] != 0 for basic, row in zip(tableau.basis, tableau.rows)):
        return None
    # drive zero-level artificials out of the basis; rows that cannot pivot are redundant
    i = 0
    while i < len(tableau.rows):
        if tableau.basis[i] >= n:
            col = next((j for j in range(n) if tableau.rows[i][j] != 0), None)
            if col is None:
                del tableau.rows[i]
                del tableau.basis[i]
                continue
            tableau.pivot(i, col)
        i += 1
    return tableau


def _check_shape(a: Matrix, b: Sequence) -> None:
    if a.cols < 1:
        raise DimensionError("linear program needs at least one variable")
    if len(b) != a.rows:
        raise DimensionError(f"{a.rows} constraint rows but {len(b)} right-hand sides")


def lp_max_slack(problem: LpProblem) -> LpResult:
    a, b = problem.a_eq, problem.b_eq
    _check_shape(a, b)
    if not 0 <= problem.objective_index < a.cols:
        raise DimensionError(f"objective index {problem.objective_index} outside {a.cols} variables")
    n = a.cols
    tableau = _phase_one(a, b)
    if tableau is None:
        return LpResult(LpStatus.INFEASIBLE)
    if not tableau.rows:
        # every constraint was redundant: the objective variable is free to grow
        return LpResult(LpStatus.UNBOUNDED, None, tuple([Fraction(0)] * n))
    cost = [Fraction(0)] * (tableau.width)
    cost[problem.objective_index] = Fraction(1)
    status = tableau.maximize(cost, range(n))
    witness = tableau.solution(n)
    if status is LpStatus.UNBOUNDED:
        return LpResult(status, None, witness)
    return LpResult(status, witness[problem.objective_index], witness)


def find_feasible_point(a: Matrix, b: Sequence) -> Optional[Vector]:
    """A point of {x >= 0 : a x = b}, or None when the system is infeasible."""
    _check_shape(a, b)
    tableau = _phase_one(a, to_vector(b))
    if tableau is None:
        return None
    return tableau.solution(a.cols)
