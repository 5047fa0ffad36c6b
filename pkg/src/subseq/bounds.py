"""Mean, height and the parity-dependent mean bounds for subadditive sequences.

For a subadditive ``u_1..u_N``:

* ``mean <= (N + 1)/2 * u_1``, since ``u_k <= k u_1``;
* ``mean >= (1/2)(1 + 2/N) u_N - u_{N/2} / N`` when ``N`` is even, from
  ``u_N <= u_k + u_{N-k}`` for ``k = 1..N/2``;
* ``mean >= (1/2)(1 + 1/N) u_N`` when ``N`` is odd.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .core import SeqLike, TolLike, as_sequence, as_tolerance, is_subadditive


class MeanHeight(NamedTuple):
    mean: float
    height: Optional[float]  # undefined (None) for a single term


def mean_and_height(u: SeqLike) -> MeanHeight:
    a = as_sequence(u).values
    mean = float(np.mean(a))
    height = float(a.max() - a.min()) if a.size >= 2 else None
    return MeanHeight(mean, height)


def ostrowski_check(u: SeqLike, tol: TolLike = None) -> bool:
    """``|mean - u_i| <= height`` for every term; true for every sequence."""
    tol = as_tolerance(tol)
    a = as_sequence(u).values
    mean, height = mean_and_height(a)
    if height is None:
        return True
    return bool(np.all(np.abs(mean - a) <= height + tol.abs_tol))


@dataclass(frozen=True)
class BoundsReport:
    n: int
    mean: float
    height: Optional[float]
    hh_lower: Optional[float]
    hh_upper: Optional[float]
    parity: Optional[str]
    subadditive: bool
    # only asserted for subadditive input; None otherwise
    bracketed: Optional[bool]


def hh_lower_bound(a: np.ndarray) -> float:
    n = a.size
    # (1/2)(1 + 2/n) u_n - u_{n/2}/n and (1/2)(1 + 1/n) u_n, arranged so that
    # integer data is evaluated without intermediate rounding
    if n % 2 == 0:
        return ((n + 2) * a[n - 1] - 2.0 * a[n // 2 - 1]) / (2.0 * n)
    return (n + 1) * a[n - 1] / (2.0 * n)


def hh_upper_bound(a: np.ndarray) -> float:
    return (a.size + 1) * a[0] / 2.0


def hermite_hadamard_bounds(u: SeqLike, tol: TolLike = None) -> BoundsReport:
    tol = as_tolerance(tol)
    a = as_sequence(u).values
    mean, height = mean_and_height(a)
    sub = is_subadditive(a, tol).holds
    if a.size < 2:
        return BoundsReport(1, mean, None, None, None, None, sub, None)
    lo = float(hh_lower_bound(a))
    hi = float(hh_upper_bound(a))
    bracketed = (tol.le(lo, mean) and tol.le(mean, hi)) if sub else None
    return BoundsReport(
        n=a.size,
        mean=mean,
        height=height,
        hh_lower=lo,
        hh_upper=hi,
        parity="even" if a.size % 2 == 0 else "odd",
        subadditive=sub,
        bracketed=bracketed,
    )
