"""Dense two-phase revised simplex for small-basis linear programs.

Everything this package asks of linear programming has a handful of rows and
up to a few tens of thousands of columns (one per grid point), so a revised
simplex that refactorizes the m x m basis every iteration is both simple and
fast.  Dantzig pricing with an automatic switch to Bland's rule after a run
of degenerate pivots keeps the method finite on the very degenerate,
symmetric grids that show up here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_STALL_LIMIT = 30


@dataclass
class SimplexResult:
    status: str                 # "optimal" | "infeasible" | "unbounded" | "stalled"
    x: np.ndarray | None
    objective: float
    basis: list[int]

    @property
    def ok(self) -> bool:
        return self.status == "optimal"


def simplex_minimize(A: np.ndarray, b: np.ndarray, c: np.ndarray,
                     tol: float = 1e-9, max_iter: int = 20000) -> SimplexResult:
    """Solve min c.x subject to A x = b, x >= 0."""
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    c = np.array(c, dtype=float)
    m, n = A.shape
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # Phase 1: artificial identity basis.
    art = list(range(n, n + m))
    A1 = np.hstack([A, np.eye(m)])
    c1 = np.concatenate([np.zeros(n), np.ones(m)])
    basis, x_b, status = _iterate(A1, b, c1, art, tol, max_iter)
    if status != "optimal":
        return SimplexResult(status, None, np.inf, basis)
    if float(x_b @ c1[basis]) > 1e-7:
        return SimplexResult("infeasible", None, np.inf, basis)

    # Drive leftover zero-level artificials out of the basis.
    keep_rows = list(range(m))
    for pos, col in enumerate(list(basis)):
        if col < n:
            continue
        B = A1[:, basis]
        row = np.linalg.solve(B, A1)[pos, :n]
        pivot = np.nonzero(np.abs(row) > 1e-7)[0]
        pivot = [j for j in pivot if j not in basis]
        if pivot:
            basis[pos] = int(pivot[0])
        else:
            keep_rows[pos] = -1  # redundant constraint
    rows = [i for i in keep_rows if i >= 0]
    if len(rows) < m:
        A = A[rows]
        b = b[rows]
        basis = [col for col in basis if col < n]
        if len(basis) != len(rows):
            return SimplexResult("stalled", None, np.inf, basis)
    else:
        basis = [col if col < n else -1 for col in basis]
        if -1 in basis:
            return SimplexResult("stalled", None, np.inf, basis)

    basis, x_b, status = _iterate(A, b, c, basis, tol, max_iter)
    x = None
    objective = np.inf
    if status == "optimal":
        x = np.zeros(n)
        x[basis] = x_b
        objective = float(c @ x)
    return SimplexResult(status, x, objective, basis)


def _iterate(A: np.ndarray, b: np.ndarray, c: np.ndarray, basis: list[int],
             tol: float, max_iter: int) -> tuple[list[int], np.ndarray, str]:
    m, n = A.shape
    basis = list(basis)
    bland = False
    degenerate_run = 0
    x_b = np.zeros(m)
    for _ in range(max_iter):
        B = A[:, basis]
        try:
            x_b = np.linalg.solve(B, b)
            y = np.linalg.solve(B.T, c[basis])
        except np.linalg.LinAlgError:
            return basis, x_b, "stalled"
        reduced = c - y @ A
        reduced[basis] = 0.0
        if bland:
            candidates = np.nonzero(reduced < -tol)[0]
            if candidates.size == 0:
                return basis, x_b, "optimal"
            entering = int(candidates[0])
        else:
            entering = int(np.argmin(reduced))
            if reduced[entering] >= -tol:
                return basis, x_b, "optimal"
        direction = np.linalg.solve(B, A[:, entering])
        positive = np.nonzero(direction > tol)[0]
        if positive.size == 0:
            return basis, x_b, "unbounded"
        ratios = x_b[positive] / direction[positive]
        best = float(np.min(ratios))
        ties = positive[np.nonzero(ratios <= best + tol)[0]]
        # leaving rule: among ties pick the smallest basis index (anti-cycling)
        leaving = int(min(ties, key=lambda i: basis[int(i)]))
        if best <= tol:
            degenerate_run += 1
            if degenerate_run >= _STALL_LIMIT:
                bland = True
        else:
            degenerate_run = 0
        basis[leaving] = entering
    return basis, x_b, "stalled"


def max_min_slack(equalities: np.ndarray, grid_rows: np.ndarray,
                  tol: float = 1e-9) -> tuple[float, np.ndarray | None, str]:
    """Maximize the minimal slack of ``grid_rows . w <= 1`` subject to
    ``equalities . w = 1``.

    Returns ``(delta, w, status)`` where ``delta`` is the optimum of

        max  delta   s.t.  G w + delta <= 1,  E w = 1.

    Solved through the dual, which has one basis column per ambient
    dimension; ``w`` is recovered from the active set and re-verified by the
    caller against the grid.
    """
    E = np.atleast_2d(np.asarray(equalities, dtype=float))
    G = np.asarray(grid_rows, dtype=float)
    n_grid, dim = G.shape
    m0 = E.shape[0]

    # dual: min 1.mu + 1.nu  s.t.  G^T mu + E^T nu = 0,  1.mu = 1,  mu >= 0
    top = np.hstack([G.T, E.T, -E.T])
    last = np.concatenate([np.ones(n_grid), np.zeros(2 * m0)])
    A = np.vstack([top, last])
    b = np.concatenate([np.zeros(dim), [1.0]])
    c = np.concatenate([np.ones(n_grid), np.ones(m0), -np.ones(m0)])
    result = simplex_minimize(A, b, c, tol=tol)
    if not result.ok:
        return -np.inf, None, result.status

    delta = result.objective
    active = [j for j in result.basis if j < n_grid and result.x[j] > tol]
    rows = [E[i] for i in range(m0)]
    rhs = [1.0] * m0
    for j in active:
        rows.append(G[j])
        rhs.append(1.0 - delta)
    w, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    if np.max(np.abs(E @ w - 1.0)) > 1e-7:
        return delta, None, "recovery-failed"
    return delta, w, "optimal"


def gauge(points: np.ndarray, target: np.ndarray,
          tol: float = 1e-9) -> float:
    """Minkowski gauge of ``target`` with respect to conv(points).

    Solves min sum(mu) over mu >= 0 with points^T mu = target; the optimum
    is < 1 strictly inside the hull, 1 on its boundary, > 1 outside (valid
    whenever the origin is interior to the hull).  Returns ``inf`` when the
    target is outside the conic span.
    """
    P = np.asarray(points, dtype=float)
    t = np.asarray(target, dtype=float)
    if np.allclose(t, 0.0):
        return 0.0
    result = simplex_minimize(P.T, t, np.ones(P.shape[0]), tol=tol)
    if not result.ok:
        return np.inf
    return result.objective
