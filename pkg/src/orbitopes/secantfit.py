"""Recovering secant-variety equations by interpolation.

Points on the chord variety of a frequency curve are cheap to sample: pick
r curve parameters and convex weights and form the combination.  Every
polynomial of degree at most D vanishing on the variety is then a null
vector of the sample-by-monomial evaluation matrix.  The float path finds
the null space by singular values with an explicit rank-gap policy; the
exact path samples rational curve points, clears denominators, and computes
a certified integer kernel (:mod:`orbitopes.exactla`).  A continued-fraction
rounding step converts float fits to exact candidates for comparison.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .curve import Representation, orbit_points, rational_point
from .exactla import exact_rank, nullspace_exact
from .poly import CoeffMode, Exponent, SparsePoly, monomials_up_to_degree

SIGMA_NULL_FACTOR = 1e-9
GAP_RATIO_REQUIRED = 1e4
SAMPLE_FACTOR = 2.5
_SVD_DIRECT_LIMIT = 20_000_000


class FitError(RuntimeError):
    """Base class for interpolation failures."""


class InsufficientSamplesError(FitError):
    pass


class NoVanishingPolynomialError(FitError):
    """The sampled variety admits no equation of the requested degree."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


class AmbiguousRankError(FitError):
    """The singular-value gap policy could not separate the null space."""


@dataclass(frozen=True)
class MonomialBasis:
    """All exponent tuples of total degree <= max_degree, graded-lex order."""

    nvars: int
    max_degree: int
    exponents: tuple[Exponent, ...]

    @property
    def size(self) -> int:
        return len(self.exponents)


def monomial_basis(nvars: int, max_degree: int) -> MonomialBasis:
    exps = tuple(monomials_up_to_degree(nvars, max_degree))
    assert len(exps) == comb(nvars + max_degree, nvars)
    return MonomialBasis(nvars, max_degree, exps)


@dataclass(frozen=True)
class SecantSample:
    """r curve parameters, convex weights, and the resulting ambient point."""

    params: tuple
    weights: tuple
    point: tuple


def secant_point(rep: Representation, params: Sequence, weights: Sequence,
                 mode: CoeffMode = CoeffMode.FLOAT):
    """Convex combination of curve points; exact when mode is RATIONAL.

    Float parameters are angles; rational parameters are tan-half-angle
    values fed to the exact parametrization.
    """
    if len(params) != len(weights):
        raise ValueError("params and weights must have equal length")
    if mode is CoeffMode.RATIONAL:
        weights = [Fraction(w) for w in weights]
        if sum(weights) != 1:
            raise ValueError("weights must sum to 1 exactly in rational mode")
        pts = [rational_point(rep, t) for t in params]
        return tuple(sum(w * p[i] for w, p in zip(weights, pts))
                     for i in range(rep.ambient_dim))
    weights = [float(w) for w in weights]
    if abs(sum(weights) - 1.0) > 1e-15 * max(1.0, len(weights)):
        raise ValueError("weights must sum to 1")
    pts = orbit_points(rep, np.array([float(t) for t in params]))
    return tuple(float(v) for v in np.asarray(weights) @ pts)


def _affinely_dependent_floats(pts: np.ndarray) -> bool:
    if len(pts) < 2:
        return False
    diffs = pts[1:] - pts[0]
    sigma = np.linalg.svd(diffs, compute_uv=False)
    return sigma[-1] <= 1e-9 * max(sigma[0], 1.0)


def _affinely_dependent_exact(pts: list[tuple[Fraction, ...]]) -> bool:
    if len(pts) < 2:
        return False
    diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    return exact_rank(diffs) < len(pts) - 1


def sample_secants(rep: Representation, r: int, count: int, seed: int,
                   mode: CoeffMode = CoeffMode.FLOAT) -> list[SecantSample]:
    """Draw secant samples; tuples of affinely dependent curve points are
    rejected and redrawn so every sample spans a genuine (r-1)-plane."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if r < 1 or r > rep.ambient_dim:
        raise ValueError(f"r={r} out of range for ambient dim {rep.ambient_dim}")
    if not rep.is_reduced():
        raise ValueError("frequency set must be reduced")
    out: list[SecantSample] = []
    if mode is CoeffMode.FLOAT:
        rng = np.random.default_rng(seed)
        while len(out) < count:
            params = tuple(float(t) for t in rng.uniform(0.0, 2 * math.pi, size=r))
            pts = orbit_points(rep, np.array(params))
            if _affinely_dependent_floats(pts):
                continue
            weights = tuple(float(w) for w in rng.dirichlet(np.ones(r)))
            point = tuple(float(v) for v in np.asarray(weights) @ pts)
            out.append(SecantSample(params, weights, point))
        return out
    rng = random.Random(seed)
    seen: set[tuple] = set()
    while len(out) < count:
        params = tuple(Fraction(rng.randint(-4 * d, 4 * d), d)
                       for d in (rng.randint(1, 30) for _ in range(r)))
        if len(set(params)) != r or params in seen:
            continue
        pts = [rational_point(rep, t) for t in params]
        if _affinely_dependent_exact(pts):
            continue
        seen.add(params)
        raw = [rng.randint(1, 64) for _ in range(r)]
        total = sum(raw)
        weights = tuple(Fraction(w, total) for w in raw)
        point = tuple(sum(w * p[i] for w, p in zip(weights, pts))
                      for i in range(rep.ambient_dim))
        out.append(SecantSample(params, weights, point))
    return out


@dataclass(frozen=True)
class FitResult:
    basis: MonomialBasis
    polynomials: tuple[SparsePoly, ...]
    report: dict

    @property
    def nullity(self) -> int:
        return len(self.polynomials)


def default_sample_count(basis_size: int) -> int:
    return math.ceil(SAMPLE_FACTOR * basis_size)


def fit_hypersurface(rep: Representation, r: int, degree: int,
                     count: int | None = None, seed: int = 0,
                     mode: CoeffMode = CoeffMode.FLOAT) -> FitResult:
    """Basis of degree-<=D polynomials vanishing on sampled secant points.

    Float mode: singular-value null space of the (column-equilibrated)
    evaluation matrix; directions below SIGMA_NULL_FACTOR * sigma_max are
    null, and the cut must be witnessed by a singular-value gap of at least
    GAP_RATIO_REQUIRED, otherwise :class:`AmbiguousRankError` is raised.
    Exact mode: certified integer kernel of the cleared-denominator
    evaluation matrix.  Raises :class:`NoVanishingPolynomialError` when the
    kernel is zero-dimensional.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    basis = monomial_basis(rep.ambient_dim, degree)
    if count is None:
        count = default_sample_count(basis.size)
    if count < basis.size:
        raise InsufficientSamplesError(
            f"need at least {basis.size} samples for {basis.size} monomials, "
            f"got {count}")
    samples = sample_secants(rep, r, count, seed, mode)
    if mode is CoeffMode.FLOAT:
        return _fit_float(rep, basis, samples, count, seed)
    return _fit_exact(rep, basis, samples, count, seed)


def _monomial_block(points: np.ndarray, basis: MonomialBasis) -> np.ndarray:
    """Evaluate every basis monomial on a block of points."""
    n_pts = points.shape[0]
    powers = [np.vander(points[:, i], basis.max_degree + 1,
                        increasing=True) for i in range(basis.nvars)]
    out = np.empty((n_pts, basis.size))
    for j, expo in enumerate(basis.exponents):
        col = np.ones(n_pts)
        for i, e in enumerate(expo):
            if e:
                col = col * powers[i][:, e]
        out[:, j] = col
    return out


def _fit_float(rep: Representation, basis: MonomialBasis,
               samples: list[SecantSample], count: int, seed: int) -> FitResult:
    points = np.array([s.point for s in samples])
    block_size = max(1, _SVD_DIRECT_LIMIT // max(basis.size, 1))
    col_sumsq = np.zeros(basis.size)
    for start in range(0, count, block_size):
        block = _monomial_block(points[start:start + block_size], basis)
        col_sumsq += np.einsum("ij,ij->j", block, block)
    scale = np.sqrt(col_sumsq)
    scale[scale == 0] = 1.0

    if count * basis.size <= _SVD_DIRECT_LIMIT:
        matrix = _monomial_block(points, basis) / scale
        sigma, vh = _svd_sigma_vh(matrix)
    else:
        reduced = None
        for start in range(0, count, block_size):
            block = _monomial_block(points[start:start + block_size], basis) / scale
            stacked = block if reduced is None else np.vstack([reduced, block])
            reduced = np.linalg.qr(stacked, mode="r")
        sigma, vh = _svd_sigma_vh(reduced)

    threshold = SIGMA_NULL_FACTOR * sigma[0]
    nullity = int(np.sum(sigma < threshold))
    report = {
        "mode": "float",
        "basis_size": basis.size,
        "sample_count": count,
        "seed": seed,
        "sigma_max": float(sigma[0]),
        "sigma_tail": [float(s) for s in sigma[-min(5, len(sigma)):]],
        "null_threshold": float(threshold),
        "nullity": nullity,
    }
    if nullity == 0:
        raise NoVanishingPolynomialError(
            f"no degree-{basis.max_degree} equation vanishes on the samples "
            f"(smallest singular value {sigma[-1]:.3e} vs threshold "
            f"{threshold:.3e})", report)
    smallest_kept = float(sigma[len(sigma) - nullity - 1])
    largest_dropped = float(sigma[len(sigma) - nullity])
    gap_ratio = smallest_kept / max(largest_dropped, 1e-300)
    report["smallest_kept"] = smallest_kept
    report["largest_dropped"] = largest_dropped
    report["gap_ratio"] = gap_ratio
    if gap_ratio < GAP_RATIO_REQUIRED:
        raise AmbiguousRankError(
            f"singular-value gap ratio {gap_ratio:.2e} below required "
            f"{GAP_RATIO_REQUIRED:.0e}")
    polys = []
    for row in vh[len(sigma) - nullity:]:
        coeffs = row / scale
        polys.append(_float_poly(basis, coeffs))
    return FitResult(basis, tuple(polys), report)


def _svd_sigma_vh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    _, sigma, vh = np.linalg.svd(matrix, full_matrices=False)
    return sigma, vh


def _float_poly(basis: MonomialBasis, coeffs: np.ndarray) -> SparsePoly:
    # deterministic normalization: unit max coefficient, positive leading term
    top = float(np.max(np.abs(coeffs)))
    coeffs = coeffs / top
    lead = max(
        (expo for expo, c in zip(basis.exponents, coeffs) if abs(c) > 1e-12),
        key=lambda e: (sum(e), e))
    if coeffs[basis.exponents.index(lead)] < 0:
        coeffs = -coeffs
    terms = {expo: float(c) for expo, c in zip(basis.exponents, coeffs)
             if abs(c) > 0.0}
    return SparsePoly(basis.nvars, terms, CoeffMode.FLOAT)


def _integer_row(point: tuple[Fraction, ...], basis: MonomialBasis) -> list[int]:
    """Clear denominators and evaluate monomials as exact integers.

    With L the common denominator, the affine monomial row scaled by L^D
    equals the degree-D homogeneous monomials in (L, L*point), all integers.
    """
    denom = 1
    for v in point:
        denom = denom * v.denominator // math.gcd(denom, v.denominator)
    ints = [int(v * denom) for v in point]
    top = basis.max_degree
    pow_table = [[1] * (top + 1) for _ in range(len(ints) + 1)]
    for e in range(1, top + 1):
        pow_table[0][e] = pow_table[0][e - 1] * denom
        for i, v in enumerate(ints, start=1):
            pow_table[i][e] = pow_table[i][e - 1] * v
    row = []
    for expo in basis.exponents:
        val = pow_table[0][top - sum(expo)]
        for i, e in enumerate(expo, start=1):
            if e:
                val *= pow_table[i][e]
        row.append(val)
    return row


def _fit_exact(rep: Representation, basis: MonomialBasis,
               samples: list[SecantSample], count: int, seed: int) -> FitResult:
    rows = [_integer_row(s.point, basis) for s in samples]
    kernel, info = nullspace_exact(rows)
    report = {
        "mode": "exact",
        "basis_size": basis.size,
        "sample_count": count,
        "seed": seed,
        "nullity": len(kernel),
        **info,
    }
    if not kernel:
        raise NoVanishingPolynomialError(
            f"no degree-{basis.max_degree} equation vanishes on the exact "
            f"samples", report)
    polys = []
    for vec in kernel:
        terms = {expo: c for expo, c in zip(basis.exponents, vec) if c != 0}
        polys.append(SparsePoly(basis.nvars, terms, CoeffMode.RATIONAL))
    return FitResult(basis, tuple(polys), report)


def evaluate_on_points(p: SparsePoly, points: np.ndarray) -> np.ndarray:
    """Vectorized float evaluation of a polynomial on rows of points."""
    pts = np.asarray(points, dtype=float)
    exps = np.array(list(p.terms.keys()), dtype=int)
    coeffs = np.array([float(c) for c in p.terms.values()])
    if exps.size == 0:
        return np.zeros(pts.shape[0])
    values = np.ones((pts.shape[0], len(coeffs)))
    for i in range(p.nvars):
        e = exps[:, i]
        mask = e > 0
        if np.any(mask):
            values[:, mask] *= pts[:, i][:, None] ** e[mask]
    return values @ coeffs


def verify_vanishing(p: SparsePoly, rep: Representation, r: int, count: int,
                     seed: int, mode: CoeffMode = CoeffMode.FLOAT):
    """Max absolute value of p over fresh secant samples.

    Float mode returns a float; rational mode evaluates exactly and returns
    a Fraction.
    """
    if p.nvars != rep.ambient_dim:
        raise ValueError(f"polynomial has {p.nvars} variables, "
                         f"curve lives in R^{rep.ambient_dim}")
    samples = sample_secants(rep, r, count, seed, mode)
    if mode is CoeffMode.FLOAT:
        points = np.array([s.point for s in samples])
        values = evaluate_on_points(p, points)
        return float(np.max(np.abs(values)))
    worst = Fraction(0)
    for s in samples:
        worst = max(worst, abs(p.evaluate(s.point)))
    return worst


def rationalize(fit: SparsePoly, anchor: Sequence[int], anchor_value,
                max_denominator: int = 10 ** 6) -> tuple[SparsePoly, float]:
    """Rescale a float fit so the anchor monomial takes the anchor value,
    then round every coefficient to a small-denominator rational.

    Returns the rounded polynomial and the largest rounding distance.
    The anchor coefficient must not be tiny relative to the largest one.
    """
    anchor = tuple(int(e) for e in anchor)
    coeffs = {e: float(c) for e, c in fit.terms.items()}
    if not coeffs:
        raise ValueError("cannot rationalize the zero polynomial")
    a = coeffs.get(anchor, 0.0)
    top = max(abs(c) for c in coeffs.values())
    if abs(a) < 1e-6 * top:
        raise ValueError(
            f"anchor coefficient {a:.3e} is below 1e-6 of the maximum {top:.3e}")
    anchor_value = Fraction(anchor_value)
    ratio = float(anchor_value) / a
    terms: dict[Exponent, Fraction] = {}
    worst = 0.0
    for expo, c in coeffs.items():
        scaled = c * ratio
        rounded = Fraction(scaled).limit_denominator(max_denominator)
        worst = max(worst, abs(float(rounded) - scaled))
        if rounded != 0:
            terms[expo] = rounded
    result = SparsePoly(fit.nvars, terms, CoeffMode.RATIONAL)
    return result, worst
