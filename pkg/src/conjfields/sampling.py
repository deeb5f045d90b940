"""Deterministic exact sample points: SL(n,Q) elements, directions, Borel slices.

Every sample is a pure function of ``(seed, kind, n, index)`` so samples can
be drawn in any order, or in parallel, and still reproduce.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .matrix_ring import SquareMatrix


class DuplicateNode(ValueError):
    pass


@dataclass(frozen=True)
class SamplePlan:
    seed: int = 42
    count: int = 10
    height_bound: int = 5

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be positive")
        if self.height_bound < 1:
            raise ValueError("height_bound must be positive")


def _rng(plan: SamplePlan, kind: str, n: int, index: int) -> random.Random:
    return random.Random(f"{plan.seed}:{kind}:{n}:{index}")


def _nonzero_rational(rng: random.Random, height: int) -> Fraction:
    num = rng.randint(1, height) * rng.choice((-1, 1))
    return Fraction(num, rng.randint(1, height))


def transvection(n: int, i: int, j: int, c) -> SquareMatrix:
    """Elementary matrix ``1 + c*E_ij`` (i != j, zero-based)."""
    if i == j:
        raise ValueError("transvections need i != j")
    return SquareMatrix.identity(n) + SquareMatrix.unit(n, i, j, c)


def slg_element(plan: SamplePlan, n: int, index: int) -> SquareMatrix:
    rng = _rng(plan, "slg", n, index)
    g = SquareMatrix.identity(n)
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2)
        g = g * transvection(n, i, j, _nonzero_rational(rng, plan.height_bound))
    return g


def sample_slg(plan: SamplePlan, n: int) -> list[SquareMatrix]:
    """``plan.count`` elements of SL(n,Q), each a product of 2n transvections."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return [slg_element(plan, n, i) for i in range(plan.count)]


def direction_element(plan: SamplePlan, n: int, index: int) -> SquareMatrix:
    rng = _rng(plan, "dir", n, index)
    h = plan.height_bound
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                rows[i][j] = Fraction(rng.randint(-h, h), rng.randint(1, h))
    for i in range(n - 1):
        c = Fraction(rng.randint(-h, h), rng.randint(1, h))
        rows[i][i] += c
        rows[i + 1][i + 1] -= c
    return SquareMatrix(rows)


def sample_direction(plan: SamplePlan, n: int) -> list[SquareMatrix]:
    """Traceless rational matrices in the basis E_ij (i!=j), E_ii - E_{i+1,i+1}."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return [direction_element(plan, n, i) for i in range(plan.count)]


@dataclass(frozen=True)
class BorelPoint:
    x: Fraction
    b: Fraction

    def __post_init__(self):
        if self.x == 0:
            raise ValueError("torus coordinate must be nonzero")

    @property
    def matrix(self) -> SquareMatrix:
        return SquareMatrix([[self.x, self.b], [Fraction(0), 1 / self.x]])


def borel_grid(x_values: Sequence, b) -> list[BorelPoint]:
    xs = [Fraction(x) for x in x_values]
    if len(set(xs)) != len(xs):
        raise DuplicateNode("Borel grid nodes must be pairwise distinct")
    b = Fraction(b)
    return [BorelPoint(x, b) for x in xs]


def torus_point(x) -> SquareMatrix:
    x = Fraction(x)
    return SquareMatrix([[x, Fraction(0)], [Fraction(0), 1 / x]])


def interpolation_nodes(count: int) -> list[Fraction]:
    """Nodes 2, 3, 4, ...; all exceed 1, so no two are reciprocal."""
    return [Fraction(k) for k in range(2, count + 2)]
