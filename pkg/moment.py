from __future__ import annotations

from enum import Enum
from fractions import Fraction
from itertools import combinations, groupby
from math import comb
from typing import Iterator, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from crossing import Bipartition
from exceptions import DisjointnessError, ParameterError, ShapeError, SizeError


class Color(str, Enum):
    RED = "R"
    BLUE = "B"


class ColoredSequence(BaseModel):
    """Colors of the 2d moment-curve vertices ordered by parameter; position 0 is RED."""

    model_config = ConfigDict(frozen=True)

    d: int
    colors: Tuple[Color, ...]

    @model_validator(mode="after")
    def _balanced(self):
        reds = sum(1 for c in self.colors if c is Color.RED)
        if len(self.colors) != 2 * self.d or reds != self.d:
            raise ShapeError(f"need exactly {self.d} RED and {self.d} BLUE, got {''.join(c.value for c in self.colors)}")
        if self.colors[0] is not Color.RED:
            raise ShapeError("canonical colorings start with RED")
        return self

    @classmethod
    def parse(cls, text: str) -> "ColoredSequence":
        return cls(d=len(text) // 2, colors=tuple(Color(c) for c in text.upper()))

    @classmethod
    def from_bipartition(cls, pair: Bipartition) -> "ColoredSequence":
        d = len(pair.left)
        if len(pair.right) != d or sorted(pair.left + pair.right) != list(range(2 * d)):
            raise ShapeError("a coloring needs two d-sets covering the 2d vertices")
        return cls(d=d, colors=tuple(Color.RED if i in pair.left else Color.BLUE for i in range(2 * d)))

    def to_bipartition(self) -> Bipartition:
        red = [i for i, c in enumerate(self.colors) if c is Color.RED]
        blue = [i for i, c in enumerate(self.colors) if c is Color.BLUE]
        return Bipartition.of(red, blue)

    def __str__(self) -> str:
        return "".join(c.value for c in self.colors)


def block_count(seq: ColoredSequence) -> int:
    return sum(1 for _ in groupby(seq.colors))


def alternation_crosses(seq: ColoredSequence) -> bool:
    # the longest alternating subsequence has one vertex per maximal block
    return block_count(seq) >= seq.d + 2


def canonical_colorings(d: int) -> Iterator[ColoredSequence]:
    for chosen in combinations(range(1, 2 * d), d - 1):
        red = {0, *chosen}
        yield ColoredSequence(d=d, colors=tuple(Color.RED if i in red else Color.BLUE for i in range(2 * d)))


def _require_dim(d: int) -> None:
    if d < 2:
        raise ParameterError(f"hyperedges need d >= 2, got {d}")


def count_moment_crossings_enum(d: int) -> int:
    _require_dim(d)
    return sum(1 for seq in canonical_colorings(d) if alternation_crosses(seq))


def noncrossing_distribution_count(d: int) -> int:
    """Colorings without an alternating run of d+2: blue vertices spread over few red gaps."""
    _require_dim(d)
    if d % 2 == 0:
        return sum(comb(d, i) * comb(d - 1, i - 1) for i in range(1, d // 2 + 1))
    return sum(comb(d - 1, i) * comb(d, i) for i in range(1, d // 2 + 1)) + 1


def noncrossing_distribution_proof_form(d: int) -> int:
    _require_dim(d)
    if d % 2 == 0:
        return noncrossing_distribution_count(d)
    return sum(comb(d - 1, i) * (comb(d - 1, i - 1) + comb(d - 1, i)) for i in range(1, d // 2 + 1)) + 1


def noncrossing_distribution_enum(d: int) -> int:
    _require_dim(d)
    return sum(1 for seq in canonical_colorings(d) if not alternation_crosses(seq))


def closed_form_cdm(d: int) -> int:
    _require_dim(d)
    return comb(2 * d - 1, d - 1) - noncrossing_distribution_count(d)


def trivial_upper(d: int) -> int:
    return comb(2 * d, d)


class BoundEvaluation(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: int
    degenerate: bool = False


def thm1_lower_bound(d: int) -> BoundEvaluation:
    """Crossings certified by extending the sweep partitions of a (d+3)-point Gale diagram."""
    if d < 4:
        return BoundEvaluation(value=0, degenerate=True)
    last_step = max((d - 3) // 2 - 1, 0)
    return BoundEvaluation(value=sum(comb(d - 3, (d - 2 * k - 3) // 2) for k in range(last_step + 1)))


def lemma8_lower_bound(d: int) -> BoundEvaluation:
    if d < 4:
        return BoundEvaluation(value=0, degenerate=True)
    # ceil((d-5)/2) == (d-4)//2
    return BoundEvaluation(value=2 * ((d + 3) // 2) * comb(d - 3, (d - 4) // 2))


def cr_lower_nd(d: int, n: int, c_value: int) -> int:
    if n < 2 * d:
        raise SizeError(f"K_n^d needs n >= 2d = {2 * d}, got n={n}")
    return c_value * comb(n, 2 * d)


def convex_corollary(n: int) -> int:
    """Crossing pairs forced in every convex drawing of K_n^3: three per 6-point subset."""
    if n < 6:
        raise SizeError(f"K_n^3 needs n >= 6, got n={n}")
    return 3 * comb(n, 6)


class BoundRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    cdm: int
    thm1: int
    thm1_degenerate: bool
    lemma8: int
    lemma8_degenerate: bool
    binom_2d_d: int

    def cr_lower(self, n: int) -> int:
        return cr_lower_nd(self.d, n, self.cdm)


def bound_row(d: int) -> BoundRow:
    thm1, lemma8 = thm1_lower_bound(d), lemma8_lower_bound(d)
    return BoundRow(
        d=d,
        cdm=closed_form_cdm(d),
        thm1=thm1.value,
        thm1_degenerate=thm1.degenerate,
        lemma8=lemma8.value,
        lemma8_degenerate=lemma8.degenerate,
        binom_2d_d=trivial_upper(d),
    )


def bound_table(d_max: int, d_min: int = 2) -> List[BoundRow]:
    if d_max > 64:
        raise ParameterError(f"bound tables stop at d = 64, got {d_max}")
    if d_min < 2 or d_max < d_min:
        raise ParameterError(f"empty dimension range {d_min}..{d_max}")
    return [bound_row(d) for d in range(d_min, d_max + 1)]


def _one_between(outer: Sequence[Fraction], inner: Sequence[Fraction]) -> bool:
    return all(sum(1 for x in inner if lo < x < hi) == 1 for lo, hi in zip(outer, outer[1:]))


def dey_pach_subsimplex_cross(p: Sequence, q: Sequence) -> bool:
    """Interleaving test for a floor(d/2)- and a ceil(d/2)-simplex on the moment curve."""
    p, q = sorted(Fraction(x) for x in p), sorted(Fraction(x) for x in q)
    if set(p) & set(q) or len(set(p)) != len(p) or len(set(q)) != len(q):
        raise DisjointnessError("the two parameter sequences must be distinct and disjoint")
    d = len(p) + len(q) - 2
    if sorted((len(p), len(q))) != [d // 2 + 1, (d + 1) // 2 + 1]:
        raise ShapeError(f"sizes {len(p)} and {len(q)} do not match floor(d/2)+1 and ceil(d/2)+1")
    return _one_between(q, p) and _one_between(p, q)
