"""Approximate periodicity and the two characterisations of exact periodicity.

A sequence is epsilon-periodic with period ``L`` when
``|u[i + kL] - u[i]| <= eps`` for every shift that stays inside ``1..N``.
Positive and negative shifts only ever compare terms of one residue class
``i, i + L, i + 2L, ...``, so the least such ``eps`` is the largest spread
(max - min) of a residue class.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from .core import (
    DomainError,
    PreconditionError,
    Sequence,
    SeqLike,
    TolLike,
    as_sequence,
    as_tolerance,
)
from .interpolant import Interpolant


def _check_period(n: int, L: int) -> int:
    if isinstance(L, bool) or int(L) != L:
        raise DomainError(f"period must be an integer, got {L!r}")
    L = int(L)
    if not 1 <= L <= n - 1:
        raise DomainError(f"period must lie in [1, {n - 1}], got {L}")
    return L


def _class_table(a: np.ndarray, L: int) -> np.ndarray:
    """``(ceil(N/L), L)`` table whose column ``i-1`` is residue class ``i``, NaN padded."""
    rows = -(-a.size // L)
    table = np.full(rows * L, np.nan)
    table[:a.size] = a
    return table.reshape(rows, L)


def class_spreads(u: SeqLike, L: int) -> np.ndarray:
    a = as_sequence(u).values
    L = _check_period(a.size, L)
    t = _class_table(a, L)
    return np.nanmax(t, axis=0) - np.nanmin(t, axis=0)


class EpsilonResult(NamedTuple):
    epsilon: float
    worst_class: int


def epsilon_for_period(u: SeqLike, L: int) -> EpsilonResult:
    spreads = class_spreads(u, L)
    k = int(np.argmax(spreads))
    return EpsilonResult(float(spreads[k]), k + 1)


def is_periodic(u: SeqLike, L: int, tol: TolLike = None) -> bool:
    return epsilon_for_period(u, L).epsilon <= as_tolerance(tol).abs_tol


# --------------------------------------------------------------------------
# residue classes and the sequence algebra
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidueClasses:
    """Class ``i`` (1-based) holds ``u[i], u[i + L], u[i + 2L], ...``."""

    L: int
    classes: Tuple[np.ndarray, ...]

    @property
    def n(self) -> int:
        return sum(c.size for c in self.classes)

    def __getitem__(self, i: int) -> np.ndarray:
        return self.classes[i - 1]

    def indices(self, i: int) -> np.ndarray:
        return np.arange(i, self.n + 1, self.L)


def split_classes(u: SeqLike, L: int) -> ResidueClasses:
    a = as_sequence(u).values
    L = _check_period(a.size, L)
    return ResidueClasses(L, tuple(a[i::L].copy() for i in range(L)))


def merge_classes(rc: ResidueClasses) -> Sequence:
    """Ordered merger: term ``k`` of class ``i`` goes to position ``i + kL``."""
    L = rc.L
    if len(rc.classes) != L:
        raise ValueError(f"expected {L} classes, got {len(rc.classes)}")
    n = rc.n
    for i, c in enumerate(rc.classes, start=1):
        expected = (n - i) // L + 1 if i <= n else 0
        if c.size != expected:
            raise ValueError(
                f"class {i} has {c.size} terms; a split of {n} terms gives {expected}"
            )
    out = np.empty(n)
    for i, c in enumerate(rc.classes):
        out[i::L] = c
    return Sequence(out)


def distinct(a, b, tol: TolLike = 0.0) -> bool:
    """True when the two sequences share no common element (by value)."""
    t = as_tolerance(tol).abs_tol
    x = np.unique(np.asarray(a, dtype=np.float64))
    y = np.unique(np.asarray(b, dtype=np.float64))
    if x.size == 0 or y.size == 0:
        return True
    return bool(np.all(np.abs(x[:, None] - y[None, :]) > t))


def contains(sub, seq, tol: TolLike = 0.0) -> bool:
    """True when every element of ``sub`` is also an element of ``seq``."""
    t = as_tolerance(tol).abs_tol
    x = np.unique(np.asarray(sub, dtype=np.float64))
    y = np.unique(np.asarray(seq, dtype=np.float64))
    if x.size == 0:
        return True
    if y.size == 0:
        return False
    return bool(np.all(np.min(np.abs(x[:, None] - y[None, :]), axis=1) <= t))


# --------------------------------------------------------------------------
# midrange decomposition
# --------------------------------------------------------------------------


def _midrange(lo: float, hi: float) -> float:
    """Centre of ``[lo, hi]`` whose float residuals stay within ``fl(hi - lo)/2``.

    Such a centre exists whenever the exact midpoint is representable.  When
    it is not (``lo = 1, hi = 1 + 2**-52``) no double qualifies and the
    residual exceeds half the spread by at most one ulp of the centre.
    """
    half = (hi - lo) / 2.0
    mid = lo + half
    for _ in range(64):
        if hi - mid > half:
            mid = math.nextafter(mid, math.inf)
        elif mid - lo > half:
            mid = math.nextafter(mid, -math.inf)
        else:
            return mid
    return lo + half


@dataclass(frozen=True)
class PeriodicityReport:
    L: int
    epsilon: float
    worst_class: int
    class_centres: np.ndarray
    periodic_part: Sequence
    residual: np.ndarray

    @property
    def residual_max(self) -> float:
        return float(np.max(np.abs(self.residual)))


def decompose(u: SeqLike, L: int) -> PeriodicityReport:
    """Split ``u`` into an exactly ``L``-periodic part plus a residual.

    The periodic part takes the midrange of each residue class, which is the
    choice minimising the largest residual; that residual is ``eps / 2`` up
    to the rounding described in :func:`_midrange`.
    """
    a = as_sequence(u).values
    L = _check_period(a.size, L)
    t = _class_table(a, L)
    hi = np.nanmax(t, axis=0)
    lo = np.nanmin(t, axis=0)
    spreads = hi - lo
    centres = np.array([_midrange(float(l), float(h)) for l, h in zip(lo, hi)])
    v = np.resize(centres, a.size)
    k = int(np.argmax(spreads))
    centres.flags.writeable = False
    r = a - v
    r.flags.writeable = False
    return PeriodicityReport(L, float(spreads[k]), k + 1, centres, Sequence(v), r)


class ConverseCheck(NamedTuple):
    holds: bool
    measured_epsilon: float
    epsilon: float


def verify_converse_stability(
    v: SeqLike, r: SeqLike, L: int, epsilon: Optional[float] = None, tol: TolLike = None
) -> ConverseCheck:
    """Periodic ``v`` plus ``|r| <= eps/2`` must be eps-periodic.

    ``epsilon`` defaults to ``2 * max|r|``.
    """
    tol = as_tolerance(tol)
    va, ra = as_sequence(v).values, as_sequence(r).values
    if va.shape != ra.shape:
        raise PreconditionError("v and r must have the same length")
    L = _check_period(va.size, L)
    spread = epsilon_for_period(va, L)
    if spread.epsilon > tol.abs_tol:
        raise PreconditionError(
            f"v is not {L}-periodic (class {spread.worst_class} spreads by {spread.epsilon!r})"
        )
    rmax = float(np.max(np.abs(ra)))
    if epsilon is None:
        epsilon = 2.0 * rmax
    elif rmax > epsilon / 2.0 + tol.abs_tol:
        raise PreconditionError(f"max|r| = {rmax!r} exceeds eps/2 = {epsilon / 2.0!r}")
    measured = epsilon_for_period(va + ra, L).epsilon
    return ConverseCheck(measured <= epsilon + tol.abs_tol, measured, float(epsilon))


def periodic_interpolant(u: SeqLike, L: int, tol: TolLike = None) -> Interpolant:
    """Piecewise-linear interpolant of an exactly ``L``-periodic sequence.

    It inherits the period: ``f(x + L) == f(x)`` wherever both are defined.
    """
    seq = as_sequence(u)
    eps = epsilon_for_period(seq, L)
    if eps.epsilon > as_tolerance(tol).abs_tol:
        raise PreconditionError(
            f"sequence is not {L}-periodic (class {eps.worst_class} spreads by {eps.epsilon!r})"
        )
    return Interpolant(seq)


# --------------------------------------------------------------------------
# period search (tooling: the analysis itself takes L as given)
# --------------------------------------------------------------------------


def period_scan(u: SeqLike, max_period: Optional[int] = None) -> List[EpsilonResult]:
    """``epsilon_for_period`` for ``L = 1 .. max_period`` (default ``N // 2``)."""
    seq = as_sequence(u)
    top = len(seq) // 2 if max_period is None else min(int(max_period), len(seq) - 1)
    return [epsilon_for_period(seq, L) for L in range(1, top + 1)]


def detect_period(u: SeqLike, max_eps: float, max_period: Optional[int] = None) -> Optional[int]:
    """Smallest ``L`` whose epsilon is at most ``max_eps``, or None."""
    for L, res in enumerate(period_scan(u, max_period), start=1):
        if res.epsilon <= max_eps:
            return L
    return None


# --------------------------------------------------------------------------
# characterisations of exact periodicity
# --------------------------------------------------------------------------


def partial_sums(u: SeqLike) -> np.ndarray:
    """``S_0 = 0, S_n = u_1 + ... + u_n``."""
    a = as_sequence(u).values
    s = np.empty(a.size + 1)
    s[0] = 0.0
    np.cumsum(a, out=s[1:])
    return s


@dataclass(frozen=True)
class PartialSumProfile:
    L: int
    profiles: Tuple[np.ndarray, ...]
    constant: Tuple[bool, ...]

    @property
    def all_constant(self) -> bool:
        return all(self.constant)


def partial_sum_profile(u: SeqLike, L: int, tol: TolLike = None) -> PartialSumProfile:
    """Block sums ``S[i + (n-1)L] - S[(n-1)L]`` for ``i = 1..L``.

    Every profile is constant iff ``u`` is ``L``-periodic.
    """
    tol = as_tolerance(tol)
    a = as_sequence(u).values
    L = _check_period(a.size, L)
    s = partial_sums(a)
    profiles = []
    flags = []
    for i in range(1, L + 1):
        ends = np.arange(i, a.size + 1, L)
        p = s[ends] - s[ends - i]
        profiles.append(p)
        flags.append(bool(p.max() - p.min() <= tol.abs_tol))
    return PartialSumProfile(L, tuple(profiles), tuple(flags))


@dataclass(frozen=True)
class Piece:
    """A constant sub-sequence tagged with its positions (1-based)."""

    value: float
    indices: Tuple[int, ...]
    classes: Tuple[int, ...]


@dataclass(frozen=True)
class ConstantPartition:
    L: int
    n: int
    pieces: Tuple[Piece, ...]

    @property
    def count(self) -> int:
        return len(self.pieces)

    def merge(self) -> Sequence:
        """Ordered merger of the pieces back into one sequence."""
        out = np.empty(self.n)
        for piece in self.pieces:
            out[np.asarray(piece.indices) - 1] = piece.value
        return Sequence(out)


class NotPeriodicError(ValueError):
    def __init__(self, class_index: int, spread: float):
        self.class_index = class_index
        self.spread = spread
        super().__init__(f"residue class {class_index} is not constant (spread {spread!r})")


def constant_partition(u: SeqLike, L: int, tol: TolLike = None) -> ConstantPartition:
    """Write an ``L``-periodic sequence as at most ``L`` distinct constant pieces.

    Residue classes with equal constants (within tolerance of the first such
    class) are merged; a merged piece takes the mean of the class constants.
    Raises :class:`NotPeriodicError` naming the first non-constant class.
    """
    tol = as_tolerance(tol)
    a = as_sequence(u).values
    L = _check_period(a.size, L)
    spreads = class_spreads(a, L)
    bad = np.flatnonzero(spreads > tol.abs_tol)
    if bad.size:
        raise NotPeriodicError(int(bad[0]) + 1, float(spreads[bad[0]]))

    groups: List[List[int]] = []
    anchors: List[float] = []
    consts = [float(np.mean(a[i::L])) for i in range(L)]
    for i, c in enumerate(consts, start=1):
        for g, anchor in enumerate(anchors):
            if abs(c - anchor) <= tol.abs_tol:
                groups[g].append(i)
                break
        else:
            groups.append([i])
            anchors.append(c)

    pieces = []
    for members in groups:
        idx = sorted(j for i in members for j in range(i, a.size + 1, L))
        value = float(np.mean([consts[i - 1] for i in members]))
        pieces.append(Piece(value, tuple(idx), tuple(members)))
    return ConstantPartition(L, a.size, tuple(pieces))
