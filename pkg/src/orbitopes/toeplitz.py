"""The universal orbitope as a spectrahedron of Hermitian Toeplitz matrices.

A point (x_1, y_1, ..., x_n, y_n) of R^(2n) embeds into the (n+1) x (n+1)
Hermitian Toeplitz matrix with unit diagonal and k-th superdiagonal entry
x_k + i y_k.  The convex hull of the frequency-(1..n) curve is exactly the
set of points whose matrix is positive semidefinite, so membership, face
dimension and secant-variety membership all reduce to eigenvalue and rank
computations on this matrix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .poly import SparsePoly

DEFAULT_TOL = 1e-9


class Verdict(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class HermitianToeplitz:
    """Unit-diagonal Hermitian Toeplitz matrix given by its first row tail."""

    n: int
    entries: tuple[complex, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order must be positive")
        if len(self.entries) != self.n:
            raise ValueError(f"expected {self.n} entries, got {len(self.entries)}")

    def matrix(self) -> np.ndarray:
        size = self.n + 1
        m = np.eye(size, dtype=complex)
        for k, c in enumerate(self.entries, start=1):
            for a in range(size - k):
                m[a, a + k] = c
                m[a + k, a] = np.conj(c)
        return m

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix())

    def rank(self, tol: float = DEFAULT_TOL) -> int:
        return numerical_rank(self.eigenvalues(), tol)


def numerical_rank(eigenvalues: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """Count of eigenvalues above the relative threshold.

    The cut is tol * max(largest eigenvalue, 1), so coordinates bounded by 1
    keep the policy meaningful near the origin.
    """
    scale = max(float(np.max(np.abs(eigenvalues))), 1.0)
    return int(np.sum(np.abs(eigenvalues) > tol * scale))


def embed(point: Sequence[float]) -> HermitianToeplitz:
    """Pack a point of R^(2n) into its Hermitian Toeplitz matrix."""
    point = list(point)
    if len(point) % 2 != 0 or not point:
        raise ValueError(f"point must have positive even length, got {len(point)}")
    n = len(point) // 2
    entries = tuple(complex(point[2 * k], point[2 * k + 1]) for k in range(n))
    return HermitianToeplitz(n, entries)


def is_member(point: Sequence[float], tol: float = DEFAULT_TOL) -> Verdict:
    """Membership of the point in the universal orbitope via the PSD test."""
    eigs = embed(point).eigenvalues()
    smallest = float(eigs[0])
    if smallest > tol:
        return Verdict.INTERIOR
    if smallest < -tol:
        return Verdict.OUTSIDE
    return Verdict.BOUNDARY


def face_dimension(point: Sequence[float], tol: float = DEFAULT_TOL) -> int | None:
    """Dimension of the face whose relative interior contains the point.

    Boundary points in the relative interior of a k-face have Toeplitz rank
    k+1, so this returns rank - 1; interior points have no proper face and
    give None.  Raises for outside points.
    """
    toeplitz = embed(point)
    eigs = toeplitz.eigenvalues()
    smallest = float(eigs[0])
    if smallest < -tol:
        raise ValueError("point is outside the orbitope")
    if smallest > tol:
        return None
    return numerical_rank(eigs, tol) - 1


def secant_membership_universal(point: Sequence[float], k: int,
                                tol: float = DEFAULT_TOL) -> bool:
    """Whether the point lies on the k-th secant variety of the moment curve.

    Equivalent to all (k+2)-minors of the Toeplitz matrix vanishing, i.e.
    numerical rank at most k+1.
    """
    toeplitz = embed(point)
    if not 0 <= k < toeplitz.n:
        raise ValueError(f"secant order k={k} out of range for n={toeplitz.n}")
    return toeplitz.rank(tol) <= k + 1


def membership_report(point: Sequence[float], tol: float = DEFAULT_TOL) -> dict:
    """JSON-ready report: verdict, smallest eigenvalue, rank, face dimension."""
    toeplitz = embed(point)
    eigs = toeplitz.eigenvalues()
    verdict = is_member(point, tol)
    face_dim: int | None
    if verdict is Verdict.OUTSIDE:
        face_dim = None
    else:
        face_dim = face_dimension(point, tol)
    return {
        "verdict": verdict.value,
        "min_eigenvalue": float(eigs[0]),
        "rank": numerical_rank(eigs, tol),
        "face_dimension": face_dim,
    }


# -- symbolic determinant ----------------------------------------------------


def det_polynomial(n: int) -> SparsePoly:
    """Exact determinant of the order-n Toeplitz matrix as a polynomial.

    Variables are ordered (x_1, y_1, ..., x_n, y_n).  Entries are expanded
    as pairs of real polynomials and the determinant computed by cofactor
    expansion; the imaginary part cancels identically, which is asserted.
    Intended for small n (the expansion is factorial).
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n > 5:
        raise ValueError("symbolic determinant supported for n <= 5")
    nvars = 2 * n
    one = SparsePoly.constant(nvars, 1)
    zero = SparsePoly.zero(nvars)

    def entry(a: int, b: int) -> tuple[SparsePoly, SparsePoly]:
        if a == b:
            return one, zero
        k = abs(b - a)
        re = SparsePoly.variable(nvars, 2 * (k - 1))
        im = SparsePoly.variable(nvars, 2 * (k - 1) + 1)
        if b < a:
            im = -im
        return re, im

    size = n + 1
    grid = [[entry(a, b) for b in range(size)] for a in range(size)]

    def det(rows: list[int], cols: list[int]) -> tuple[SparsePoly, SparsePoly]:
        if len(rows) == 1:
            return grid[rows[0]][cols[0]]
        re_acc, im_acc = SparsePoly.zero(nvars), SparsePoly.zero(nvars)
        row = rows[0]
        for pos, col in enumerate(cols):
            minor_re, minor_im = det(rows[1:], cols[:pos] + cols[pos + 1:])
            e_re, e_im = grid[row][col]
            term_re = e_re * minor_re - e_im * minor_im
            term_im = e_re * minor_im + e_im * minor_re
            if pos % 2:
                term_re, term_im = -term_re, -term_im
            re_acc = re_acc + term_re
            im_acc = im_acc + term_im
        return re_acc, im_acc

    re, im = det(list(range(size)), list(range(size)))
    assert im.is_zero(), "Hermitian determinant must be real"
    return re
