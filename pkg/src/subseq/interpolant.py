"""Piecewise-linear interpolation of a sequence and the Fekete estimator.

The interpolant joins ``(n, u[n])`` and ``(n + 1, u[n + 1])`` by a straight
line, so ``f(t*n + (1-t)*(n+1)) = t*u[n] + (1-t)*u[n+1]`` for ``t`` in
``[0, 1]``.  When ``u`` is subadditive so is ``f`` on ``[1, N]``;
:func:`audit_subadditivity` measures this on a grid.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels
from .core import DomainError, Sequence, SeqLike, TolLike, as_sequence, as_tolerance, is_subadditive

# x + y may overshoot N by rounding when both come from a decimal grid step
_GRID_SLACK = 1e-9


@dataclass(frozen=True)
class Interpolant:
    knots: Sequence

    @classmethod
    def from_values(cls, u: SeqLike) -> "Interpolant":
        return cls(as_sequence(u))

    @property
    def n(self) -> int:
        return len(self.knots)

    @property
    def domain(self):
        return (1.0, float(self.n))

    def __call__(self, x):
        return eval_interpolant(self, x)


def eval_interpolant(f: Interpolant, x):
    """Evaluate ``f`` at a scalar or array ``x`` inside ``[1, N]``."""
    xa = np.asarray(x, dtype=np.float64)
    if np.any(~np.isfinite(xa)) or np.any(xa < 1.0) or np.any(xa > f.n):
        raise DomainError(f"x must lie in [1, {f.n}]")
    out = _kernels.interp_np(f.knots.values, xa)
    return float(out) if out.ndim == 0 else out


class AuditResult(NamedTuple):
    holds: bool
    max_deficit: float
    x: Optional[float]
    y: Optional[float]
    grid_size: int


def audit_grid(n: int, grid_step: float) -> np.ndarray:
    """All knots ``1..N`` together with ``1, 1 + step, 1 + 2 step, ...``."""
    if not grid_step > 0:
        raise DomainError("grid_step must be positive")
    count = int(np.floor((n - 1) / grid_step + 1e-9)) + 1
    uniform = 1.0 + grid_step * np.arange(count, dtype=np.float64)
    uniform = uniform[uniform <= n]
    return np.unique(np.concatenate((uniform, np.arange(1, n + 1, dtype=np.float64))))


def audit_subadditivity(f: Interpolant, grid_step: float = 0.1, tol: TolLike = None) -> AuditResult:
    """Largest ``f(x + y) - f(x) - f(y)`` over grid pairs with ``x + y <= N``.

    Ties are resolved towards the lexicographically smallest ``(x, y)``,
    with ``x <= y``.
    """
    tol = as_tolerance(tol)
    u = f.knots.values
    grid = audit_grid(f.n, grid_step)
    if f.n < 2:
        return AuditResult(True, -np.inf, None, None, grid.size)
    fgrid = _kernels.interp_np(u, grid)
    best, i, j = _kernels.audit_grid(u, grid, fgrid, _GRID_SLACK)
    best = float(best)
    return AuditResult(best <= tol.abs_tol, best, float(grid[i]), float(grid[j]), grid.size)


class Mediant(NamedTuple):
    low: float
    mid: float
    high: float


def mediant_bounds(a1: float, b1: float, a2: float, b2: float) -> Mediant:
    """``min(a1/b1, a2/b2) <= (a1+a2)/(b1+b2) <= max(a1/b1, a2/b2)``."""
    if not (b1 > 0 and b2 > 0):
        raise DomainError("denominators must be positive")
    r1, r2 = a1 / b1, a2 / b2
    lo, hi = min(r1, r2), max(r1, r2)
    mid = (a1 + a2) / (b1 + b2)
    # rounding of the quotient can step one ulp outside an exact bracket
    return Mediant(lo, min(max(mid, lo), hi), hi)


class RatioInfimum(NamedTuple):
    value: float
    argmin: float


def knot_ratios(u: SeqLike) -> np.ndarray:
    a = as_sequence(u).values
    return a / np.arange(1, a.size + 1, dtype=np.float64)


def ratio_infimum(f: Interpolant) -> RatioInfimum:
    """``inf f(x)/x`` over ``[1, N]``.

    On each segment ``f(x)/x`` is a mediant of the two endpoint ratios, so
    the infimum sits on a knot; the smallest minimising knot is returned.
    """
    r = knot_ratios(f.knots)
    k = int(np.argmin(r))
    return RatioInfimum(float(r[k]), float(k + 1))


def dense_ratio_minimum(f: Interpolant, step: float = 1e-3) -> float:
    """Brute-force ``min f(x)/x`` on a uniform grid; used as a cross-check."""
    count = int(np.floor((f.n - 1) / step + 1e-9)) + 1
    x = np.minimum(1.0 + step * np.arange(count, dtype=np.float64), f.n)
    x = np.append(x, float(f.n))
    return float(np.min(_kernels.interp_np(f.knots.values, x) / x))


@dataclass(frozen=True)
class FeketeEstimate:
    ratios: np.ndarray
    prefix_inf: float
    argmin: int
    last_ratio: float
    subadditive: bool

    @property
    def gap(self) -> float:
        """``last_ratio - prefix_inf``; zero once the ratios have settled."""
        return self.last_ratio - self.prefix_inf


def fekete_estimate(u: SeqLike, tol: TolLike = None) -> FeketeEstimate:
    """Running ratios ``u[n]/n`` and their prefix infimum.

    For a subadditive sequence ``u[n]/n`` converges to ``inf_n u[n]/n``; on a
    finite prefix the infimum is an upper bound for the limit.
    """
    seq = as_sequence(u)
    r = knot_ratios(seq)
    r.flags.writeable = False
    k = int(np.argmin(r))
    return FeketeEstimate(
        ratios=r,
        prefix_inf=float(r[k]),
        argmin=k + 1,
        last_ratio=float(r[-1]),
        subadditive=is_subadditive(seq, tol).holds,
    )
