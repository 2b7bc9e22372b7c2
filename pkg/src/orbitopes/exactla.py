"""Exact nullspaces of integer/rational matrices.

Two solvers with the same contract (a certified basis of the right kernel):

* :func:`nullspace_bareiss` — single-pass fraction-free (Bareiss) elimination
  over the integers with exact rational back-substitution.  Entry growth is
  bounded by minors of the input, which is fine for matrices up to a couple
  hundred columns but prohibitive beyond that.
* :func:`nullspace_modular` — elimination over several word-size prime
  fields, Chinese remaindering and rational reconstruction of the kernel
  vectors, then exact re-verification over the integers.  The verified
  vectors give a lower bound on the nullity and the prime-field nullity an
  upper bound, so a matching pair certifies the kernel exactly.

:func:`nullspace_exact` picks between the two by column count.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

import numpy as np

# Primes just below 2**30 so that products of two residues stay well inside
# int64 during vectorized elimination.
PRIMES = (
    1073741789, 1073741783, 1073741741, 1073741723, 1073741719,
    1073741717, 1073741689, 1073741671, 1073741663, 1073741651,
)

_BAREISS_MAX_COLS = 160


def _to_integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Clear denominators row by row (row scaling preserves the kernel)."""
    out = []
    for row in rows:
        denom = 1
        for x in row:
            if isinstance(x, Fraction):
                denom = denom * x.denominator // gcd(denom, x.denominator)
        out.append([int(x * denom) if isinstance(x, Fraction) else int(x) * denom
                    for x in row])
    return out


def bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns the echelon matrix and the list of pivot column indices.  All
    intermediate entries are exact minors of the input (Bareiss one-step
    formula), so the arithmetic stays in the integers.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for col in range(ncols):
        if r >= nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][col]
        for i in range(r + 1, nrows):
            factor = m[i][col]
            row_i = m[i]
            row_r = m[r]
            for j in range(col, ncols):
                row_i[j] = (row_i[j] * pivot - factor * row_r[j]) // prev
        prev = pivot
        pivots.append(col)
        r += 1
    return m[:r], pivots


def nullspace_bareiss(rows: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Exact kernel basis via fraction-free elimination; small matrices only."""
    int_rows = _to_integer_rows(rows)
    if not int_rows:
        return []
    ncols = len(int_rows[0])
    echelon, pivots = bareiss_echelon(int_rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[tuple[Fraction, ...]] = []
    for fc in free:
        v: list[Fraction] = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            row = echelon[i]
            acc = Fraction(0)
            for j in range(pc + 1, ncols):
                if v[j]:
                    acc += row[j] * v[j]
            v[pc] = -acc / row[pc]
        basis.append(tuple(_clear_vector(v)))
    return basis


def _clear_vector(v: list[Fraction]) -> list[Fraction]:
    """Rescale so entries are coprime integers with positive leading entry."""
    denom = 1
    for x in v:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return [Fraction(x) for x in ints]


def rref_mod_p(matrix: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p); vectorized over rows."""
    a = np.mod(matrix, p).astype(np.int64)
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r >= nrows:
            break
        hits = np.nonzero(a[r:, col])[0]
        if hits.size == 0:
            continue
        i = r + int(hits[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, col]), -1, p)
        a[r] = (a[r] * inv) % p
        others = np.nonzero(a[:, col])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, col], a[r])) % p
        pivots.append(col)
        r += 1
    return a[:r], pivots


def rational_reconstruction(a: int, m: int) -> Fraction | None:
    """Recover n/d = a (mod m) with |n|, d <= sqrt(m/2); None if impossible."""
    a %= m
    if a == 0:
        return Fraction(0)
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r1 == 0 or abs(s1) > bound or gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


def _kernel_mod_p(matrix: np.ndarray, p: int) -> tuple[list[int], np.ndarray]:
    """Free columns and the RREF-rows of one prime-field elimination."""
    rref, pivots = rref_mod_p(matrix, p)
    ncols = matrix.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    return free, rref


def nullspace_modular(rows: Sequence[Sequence],
                      primes: Sequence[int] = PRIMES,
                      min_primes: int = 2) -> tuple[list[tuple[Fraction, ...]], dict]:
    """Certified kernel basis via multi-prime elimination and reconstruction.

    Returns ``(basis, info)`` where ``info`` records the primes used, the
    prime-field nullity (an upper bound on the true nullity) and whether the
    reconstructed vectors were re-verified exactly over the integers.
    Raises ``ArithmeticError`` if reconstruction or verification fails with
    all available primes.
    """
    int_rows = _to_integer_rows(rows)
    if not int_rows:
        return [], {"primes": [], "nullity_upper_bound": 0, "certified": True}
    ncols = len(int_rows[0])

    mods: list[tuple[int, list[int], np.ndarray]] = []
    best_nullity = ncols + 1
    used: list[int] = []
    for p in primes:
        reduced = np.array([[x % p for x in row] for row in int_rows], dtype=np.int64)
        free, rref = _kernel_mod_p(reduced, p)
        nullity = len(free)
        if nullity < best_nullity:
            best_nullity = nullity
            mods = [(p, free, rref)]
        elif nullity == best_nullity and mods and free == mods[0][1]:
            mods.append((p, free, rref))
        used.append(p)
        if len(mods) >= min_primes:
            basis = _try_finish(int_rows, ncols, mods)
            if basis is not None:
                return basis, {
                    "primes": [q for q, _, _ in mods],
                    "nullity_upper_bound": best_nullity,
                    "certified": len(basis) == best_nullity,
                }
    raise ArithmeticError(
        f"kernel reconstruction failed with primes {used}; matrix may be degenerate")


def _try_finish(int_rows, ncols, mods) -> list[tuple[Fraction, ...]] | None:
    """CRT-combine the prime kernels, reconstruct, and verify exactly."""
    _, free, _ = mods[0]
    modulus = 1
    combined = {fc: [0] * ncols for fc in free}
    for p, _, rref in mods:
        pivots = [c for c in range(ncols) if c not in free][: rref.shape[0]]
        for fc in free:
            vec = [0] * ncols
            vec[fc] = 1
            for i, pc in enumerate(pivots):
                vec[pc] = (-int(rref[i, fc])) % p
            old = combined[fc]
            if modulus == 1:
                combined[fc] = vec
            else:
                inv = pow(modulus % p, -1, p)
                combined[fc] = [
                    (o + modulus * (((v - o) * inv) % p)) % (modulus * p)
                    for o, v in zip(old, vec)
                ]
        modulus *= p

    basis: list[tuple[Fraction, ...]] = []
    for fc in free:
        vec: list[Fraction] = []
        for a in combined[fc]:
            frac = rational_reconstruction(a, modulus)
            if frac is None:
                return None
            vec.append(frac)
        cleared = _clear_vector(vec)
        if not _verify_kernel_vector(int_rows, cleared):
            return None
        basis.append(tuple(cleared))
    return basis


def _verify_kernel_vector(int_rows: list[list[int]], v: Sequence[Fraction]) -> bool:
    ints = [x.numerator for x in v]
    assert all(x.denominator == 1 for x in v)
    for row in int_rows:
        if sum(a * b for a, b in zip(row, ints) if b) != 0:
            return False
    return True


def nullspace_exact(rows: Sequence[Sequence]) -> tuple[list[tuple[Fraction, ...]], dict]:
    """Exact kernel basis; picks the solver by matrix width."""
    if not rows:
        return [], {"method": "trivial"}
    ncols = len(rows[0])
    if ncols <= _BAREISS_MAX_COLS:
        basis = nullspace_bareiss(rows)
        return basis, {"method": "bareiss", "certified": True,
                       "nullity_upper_bound": len(basis)}
    basis, info = nullspace_modular(rows)
    info["method"] = "modular"
    return basis, info


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals (small matrices; fraction-free elimination)."""
    int_rows = _to_integer_rows(rows)
    if not int_rows:
        return 0
    _, pivots = bareiss_echelon(int_rows)
    return len(pivots)
