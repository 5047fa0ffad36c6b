"""Inner loops: the O(N^2) min-plus envelope, pair scans and the grid audit.

Every kernel exists twice.  ``*_jit`` is plain-loop code handed to numba;
``*_np`` is the numpy fallback that vectorises the inner loop.  Both must
produce bitwise-identical results (same operations, same order, same
tie-breaking), which the test-suite checks.  The public names at the bottom
dispatch on :data:`subseq._backend.BACKEND`.

All arrays are 0-based float64 here; the 1-based index convention is
restored by the callers.
"""
import numpy as np

from ._backend import BACKEND, njit

# --------------------------------------------------------------------------
# subadditive envelope
# --------------------------------------------------------------------------


def _envelope_jit(u):
    n_total = u.shape[0]
    v = np.empty(n_total, dtype=np.float64)
    split = np.zeros(n_total, dtype=np.int64)
    if n_total == 0:
        return v, split
    v[0] = u[0]
    for m in range(2, n_total + 1):
        best = np.inf
        best_p = 0
        for p in range(1, m):
            cand = v[m - p - 1] + v[p - 1]
            if cand < best:
                best = cand
                best_p = p
        if u[m - 1] < best:
            best = u[m - 1]
            best_p = 0
        v[m - 1] = best
        split[m - 1] = best_p
    return v, split


def _envelope_np(u):
    n_total = u.shape[0]
    v = np.empty(n_total, dtype=np.float64)
    split = np.zeros(n_total, dtype=np.int64)
    if n_total == 0:
        return v, split
    v[0] = u[0]
    for m in range(2, n_total + 1):
        cand = v[m - 2::-1] + v[:m - 1]
        k = int(np.argmin(cand))
        if u[m - 1] < cand[k]:
            v[m - 1] = u[m - 1]
        else:
            v[m - 1] = cand[k]
            split[m - 1] = k + 1
    return v, split


# --------------------------------------------------------------------------
# pair scans
# --------------------------------------------------------------------------


def _first_subadditive_violation_jit(u, tol):
    n_total = u.shape[0]
    for m in range(1, n_total):
        for n in range(1, n_total - m + 1):
            if u[m + n - 1] > u[m - 1] + u[n - 1] + tol:
                return m, n
    return 0, 0


def _first_subadditive_violation_np(u, tol):
    n_total = u.shape[0]
    for m in range(1, n_total):
        rhs = u[m - 1] + u[:n_total - m] + tol
        bad = np.flatnonzero(u[m:] > rhs)
        if bad.size:
            return m, int(bad[0]) + 1
    return 0, 0


def _first_difference_violation_jit(u, tol):
    n_total = u.shape[0]
    for m in range(1, n_total):
        for n in range(m + 1, n_total + 1):
            if u[n - 1] - u[m - 1] > u[n - m - 1] + tol:
                return n, m
    return 0, 0


def _first_difference_violation_np(u, tol):
    n_total = u.shape[0]
    for m in range(1, n_total):
        lhs = u[m:] - u[m - 1]
        bad = np.flatnonzero(lhs > u[:n_total - m] + tol)
        if bad.size:
            return int(bad[0]) + m + 1, m
    return 0, 0


# --------------------------------------------------------------------------
# piecewise-linear interpolant and the grid audit
# --------------------------------------------------------------------------


def _interp_scalar_jit(u, x):
    n_total = u.shape[0]
    if n_total == 1:
        return u[0]
    n = int(np.floor(x))
    if n < 1:
        n = 1
    elif n > n_total - 1:
        n = n_total - 1
    t = (n + 1) - x
    return t * u[n - 1] + (1.0 - t) * u[n]


def _interp_np(u, x):
    """Vectorised twin of ``_interp_scalar_jit``; ``x`` is an array."""
    n_total = u.shape[0]
    x = np.asarray(x, dtype=np.float64)
    if n_total == 1:
        return np.full(x.shape, u[0])
    n = np.clip(np.floor(x).astype(np.int64), 1, n_total - 1)
    t = (n + 1) - x
    return t * u[n - 1] + (1.0 - t) * u[n]


def _audit_grid_jit(u, grid, fgrid, slack):
    top = float(u.shape[0])
    g = grid.shape[0]
    best = -np.inf
    bi = -1
    bj = -1
    for i in range(g):
        for j in range(i, g):
            s = grid[i] + grid[j]
            if s > top + slack:
                break
            if s > top:
                s = top
            d = _interp_scalar(u, s) - fgrid[i] - fgrid[j]
            if d > best:
                best = d
                bi = i
                bj = j
    return best, bi, bj


def _audit_grid_np(u, grid, fgrid, slack):
    top = float(u.shape[0])
    best = -np.inf
    bi = -1
    bj = -1
    for i in range(grid.shape[0]):
        s = grid[i] + grid[i:]
        stop = int(np.searchsorted(s, top + slack, side="right"))
        if stop == 0:
            break
        s = np.minimum(s[:stop], top)
        d = _interp_np(u, s) - fgrid[i] - fgrid[i:i + stop]
        k = int(np.argmax(d))
        if d[k] > best:
            best = d[k]
            bi = i
            bj = i + k
    return best, bi, bj


_interp_scalar = njit(_interp_scalar_jit)
envelope_jit = njit(_envelope_jit)
first_subadditive_violation_jit = njit(_first_subadditive_violation_jit)
first_difference_violation_jit = njit(_first_difference_violation_jit)
audit_grid_jit = njit(_audit_grid_jit)

envelope_np = _envelope_np
first_subadditive_violation_np = _first_subadditive_violation_np
first_difference_violation_np = _first_difference_violation_np
audit_grid_np = _audit_grid_np
interp_np = _interp_np

if BACKEND == "numba":
    envelope = envelope_jit
    first_subadditive_violation = first_subadditive_violation_jit
    first_difference_violation = first_difference_violation_jit
    audit_grid = audit_grid_jit
else:
    envelope = envelope_np
    first_subadditive_violation = first_subadditive_violation_np
    first_difference_violation = first_difference_violation_np
    audit_grid = audit_grid_np
