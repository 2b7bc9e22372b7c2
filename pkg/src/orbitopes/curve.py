"""Orbits of planar rotations acting block-diagonally on R^(2r).

A frequency set ``{j1 < ... < jr}`` of positive integers defines the closed
curve

    theta -> (cos(j1*theta), sin(j1*theta), ..., cos(jr*theta), sin(jr*theta))

whose convex hull is the object of study everywhere else in this package.
This module provides the trigonometric and the exact rational (tan-half-angle)
parametrizations of the curve, its projective degree and smoothness data, and
an independent numeric probe that re-derives the degree by intersecting the
rational parametrization with a random affine hyperplane.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np

from .poly import chebyshev_angle


class DegenerateHyperplaneError(RuntimeError):
    """The random hyperplane was non-generic; retry with a new seed."""


@dataclass(frozen=True)
class Representation:
    """A multiplicity-free set of positive rotation frequencies."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(j) for j in self.indices)
        if not idx:
            raise ValueError("at least one frequency is required")
        if any(j < 1 for j in idx):
            raise ValueError(f"frequencies must be positive, got {idx}")
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicate frequencies in {idx}")
        object.__setattr__(self, "indices", tuple(sorted(idx)))

    @classmethod
    def parse(cls, text: str) -> "Representation":
        """Parse a comma-separated frequency list such as ``"1,3"``."""
        try:
            return cls(tuple(int(tok) for tok in text.split(",") if tok.strip()))
        except ValueError as exc:
            raise ValueError(f"bad frequency list {text!r}: {exc}") from None

    def __str__(self) -> str:
        return ",".join(map(str, self.indices))

    @property
    def r(self) -> int:
        return len(self.indices)

    @property
    def ambient_dim(self) -> int:
        return 2 * len(self.indices)

    @property
    def max_index(self) -> int:
        return self.indices[-1]

    @property
    def gcd(self) -> int:
        g = 0
        for j in self.indices:
            g = gcd(g, j)
        return g

    def is_reduced(self) -> bool:
        return self.gcd == 1

    def reduce(self) -> "Representation":
        """Divide all frequencies by their gcd; the orbit is unchanged."""
        g = self.gcd
        if g == 1:
            return self
        return Representation(tuple(j // g for j in self.indices))


@dataclass(frozen=True)
class CurveInfo:
    """Degree and singularity data of the projective closure of the orbit."""

    degree: int
    smooth: bool
    ambient_dim: int
    singular_points: tuple[tuple[complex, ...], tuple[complex, ...]] | None


def orbit_point(rep: Representation, theta: float) -> np.ndarray:
    """The curve point at angle ``theta``; lies on the sphere of radius sqrt(r)."""
    out = np.empty(rep.ambient_dim)
    for i, j in enumerate(rep.indices):
        out[2 * i] = math.cos(j * theta)
        out[2 * i + 1] = math.sin(j * theta)
    return out


def orbit_points(rep: Representation, thetas: np.ndarray) -> np.ndarray:
    """Matrix of curve points, one row per angle."""
    thetas = np.asarray(thetas, dtype=float)
    out = np.empty((thetas.size, rep.ambient_dim))
    for i, j in enumerate(rep.indices):
        out[:, 2 * i] = np.cos(j * thetas)
        out[:, 2 * i + 1] = np.sin(j * thetas)
    return out


@lru_cache(maxsize=None)
def _angle_polys(j: int):
    return chebyshev_angle(j)


def rational_point(rep: Representation, t) -> tuple[Fraction, ...]:
    """Exact curve point for the parameter ``t = tan(theta/2)``.

    Uses cos(theta) = (1-t^2)/(1+t^2), sin(theta) = 2t/(1+t^2) and the
    angle-multiplication polynomials for the higher frequencies.  As ``t``
    runs over the rationals this covers the orbit minus the single point at
    theta = pi.
    """
    t = Fraction(t)
    denom = 1 + t * t
    c = (1 - t * t) / denom
    s = 2 * t / denom
    coords: list[Fraction] = []
    for j in rep.indices:
        fj, gj = _angle_polys(j)
        coords.append(fj.evaluate((c, s)))
        coords.append(gj.evaluate((c, s)))
    return tuple(coords)


def antipodal_point(rep: Representation) -> tuple[Fraction, ...]:
    """The exact curve point at theta = pi (missed by ``rational_point``)."""
    coords: list[Fraction] = []
    for j in rep.indices:
        coords.append(Fraction((-1) ** j))
        coords.append(Fraction(0))
    return tuple(coords)


def curve_info(rep: Representation) -> CurveInfo:
    """Degree, smoothness and (if present) the conjugate singular point pair.

    The degree of the projective closure is twice the largest reduced
    frequency.  With at least two frequencies the curve is smooth exactly
    when the second-largest reduced frequency is one less than the largest;
    otherwise the two points at infinity are singular, a complex-conjugate
    pair supported on the last coordinate block.  A single frequency gives a
    smooth conic.
    """
    reduced = rep.reduce()
    degree = 2 * reduced.max_index
    if reduced.r == 1:
        smooth = True
    else:
        smooth = (reduced.max_index - 1) in reduced.indices
    singular = None
    if not smooth:
        n = rep.ambient_dim
        base = [0j] * (n + 1)
        plus = list(base)
        plus[n - 1] = 1 + 0j
        plus[n] = 1j
        minus = list(base)
        minus[n - 1] = 1 + 0j
        minus[n] = -1j
        singular = (tuple(plus), tuple(minus))
    return CurveInfo(degree=degree, smooth=smooth,
                     ambient_dim=rep.ambient_dim, singular_points=singular)


# -- numeric degree probe ----------------------------------------------------
#
# Substituting the rational parametrization into an affine hyperplane and
# clearing the (1+t^2) powers yields an integer polynomial whose degree, for
# a generic hyperplane, is the degree of the projective curve.


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _cleared_cos_sin(j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Integer coefficients of cos/sin(j*theta(t)) * (1+t^2)^j.

    These are the real and imaginary parts of (1+it)^(2j) as polynomials
    in t, computed by repeated multiplication with (1+it).
    """
    re, im = [1], [0]
    for _ in range(2 * j):
        shifted_re = [0] + re
        shifted_im = [0] + im
        re, im = ([a - b for a, b in zip(re + [0], shifted_im)],
                  [a + b for a, b in zip(im + [0], shifted_re)])
    return tuple(re), tuple(im)


def numeric_degree_probe(rep: Representation, seed: int) -> int:
    """Degree of the curve re-derived from a random hyperplane section.

    Requires a reduced frequency set.  Raises
    :class:`DegenerateHyperplaneError` when the drawn hyperplane kills the
    leading coefficient; callers retry with another seed.
    """
    if not rep.is_reduced():
        raise ValueError(f"frequency set {rep} is not reduced; call reduce() first")
    rng = random.Random(seed)
    big_j = rep.max_index

    def draw() -> int:
        value = 0
        while value == 0:
            value = rng.randint(-999, 999)
        return value

    one_plus_t2 = [1, 0, 1]
    acc = [0] * (2 * big_j + 1)

    def add_scaled(poly: Sequence[int], factor_pow: int, scalar: int) -> None:
        term = list(poly)
        for _ in range(factor_pow):
            term = _poly_mul(term, one_plus_t2)
        for i, x in enumerate(term):
            acc[i] += scalar * x

    add_scaled([1], big_j, draw())
    for j in rep.indices:
        re, im = _cleared_cos_sin(j)
        add_scaled(re, big_j - j, draw())
        add_scaled(im, big_j - j, draw())

    while acc and acc[-1] == 0:
        acc.pop()
    if len(acc) - 1 < 2 * big_j:
        raise DegenerateHyperplaneError(
            f"leading coefficient vanished for seed {seed}")
    return len(acc) - 1
