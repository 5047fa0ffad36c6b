"""Largest subadditive sequence below a given one.

For every ``n`` the envelope is the minimum of ``u[n_1] + ... + u[n_k]`` over
all partitions ``n_1 + ... + n_k = n``.  It is computed by the min-plus
recurrence

    v[1] = u[1]
    v[n] = min(u[n], min_{1 <= p < n} v[n - p] + v[p])

which keeps ``v[a + b] <= v[a] + v[b]`` true in floating point as well, so
the envelope of an envelope is bitwise the same array.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from . import _kernels
from .core import (
    PreconditionError,
    Sequence,
    SeqLike,
    TolLike,
    as_sequence,
    as_tolerance,
    is_subadditive,
)


@dataclass(frozen=True)
class EnvelopeResult:
    """Envelope values plus the split table used to rebuild witnesses.

    ``split[n-1] == 0`` means the singleton partition ``{n}`` is optimal,
    otherwise ``v[n] = v[n - p] + v[p]`` with ``p = split[n-1]``.
    """

    u: Sequence
    v: Sequence
    split: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.v)

    def witness(self, n: int) -> Tuple[int, ...]:
        """Optimal partition of ``n`` (parts sorted ascending)."""
        if not 1 <= n <= len(self.v):
            raise IndexError(f"index {n} outside 1..{len(self.v)}")
        parts = []
        stack = [n]
        while stack:
            k = stack.pop()
            p = int(self.split[k - 1])
            if p == 0:
                parts.append(k)
            else:
                stack.append(k - p)
                stack.append(p)
        return tuple(sorted(parts))

    @property
    def witnesses(self) -> List[Tuple[int, ...]]:
        return [self.witness(n) for n in range(1, len(self.v) + 1)]

    def witness_sum(self, n: int) -> float:
        """Sum of ``u`` over the parts of ``witness(n)``, left to right."""
        u = self.u.values
        total = 0.0
        for part in self.witness(n):
            total += u[part - 1]
        return total


def subadditive_envelope(u: SeqLike) -> EnvelopeResult:
    seq = as_sequence(u)
    v, split = _kernels.envelope(seq.values)
    return EnvelopeResult(seq, Sequence(v), split)


class MaximalityCheck(NamedTuple):
    holds: bool
    index: Optional[int]  # first n with w[n] > v[n], if any


def verify_maximality(u: SeqLike, v: SeqLike, w: SeqLike, tol: TolLike = None) -> MaximalityCheck:
    """Check that the envelope ``v`` of ``u`` dominates a subadditive ``w <= u``.

    Raises :class:`PreconditionError` when ``w`` is not subadditive or not
    below ``u``; a genuine maximality failure is returned, not raised.
    """
    tol = as_tolerance(tol)
    ua, va, wa = (as_sequence(x).values for x in (u, v, w))
    if not (ua.shape == va.shape == wa.shape):
        raise PreconditionError("u, v and w must have the same length")
    check = is_subadditive(wa, tol)
    if not check:
        raise PreconditionError(f"w is not subadditive: violating pair {check.pair}")
    above = np.flatnonzero(wa > ua + tol.abs_tol)
    if above.size:
        raise PreconditionError(f"w exceeds u at index {int(above[0]) + 1}")
    bad = np.flatnonzero(wa > va + tol.abs_tol)
    if bad.size:
        return MaximalityCheck(False, int(bad[0]) + 1)
    return MaximalityCheck(True, None)


class SandwichError(ValueError):
    def __init__(self, index: int, lower: float, bound: float):
        self.index = index
        self.lower = lower
        self.bound = bound
        super().__init__(
            f"w[{index}] = {lower!r} exceeds the partition minimum {bound!r}"
        )


def sandwich(u: SeqLike, w: SeqLike, tol: TolLike = None) -> Sequence:
    """A subadditive ``v`` with ``w <= v <= u``, or :class:`SandwichError`.

    The hypothesis "``w[n]`` is below every partition sum of ``u``" is the same
    as ``w <= envelope(u)``; the smallest failing ``n`` is reported.
    """
    tol = as_tolerance(tol)
    useq, wseq = as_sequence(u), as_sequence(w)
    if len(useq) != len(wseq):
        raise PreconditionError("u and w must have the same length")
    v = subadditive_envelope(useq).v
    bad = np.flatnonzero(wseq.values > v.values + tol.abs_tol)
    if bad.size:
        n = int(bad[0]) + 1
        raise SandwichError(n, wseq[n], v[n])
    return v
