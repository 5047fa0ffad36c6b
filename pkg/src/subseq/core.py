"""Sequence data model, tolerance policy and the basic structural predicates.

Indices in the public API are 1-based: ``seq[1]`` is the first term.  The
backing array is an ordinary 0-based read-only ``numpy`` vector available as
``seq.values``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike

from . import _kernels


class SequenceError(ValueError):
    """Raised for inputs that cannot be represented as a :class:`Sequence`."""


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


class PreconditionError(ValueError):
    """Raised when the documented precondition of an operation is violated."""


@dataclass(frozen=True)
class Tolerance:
    """Absolute slack used by every inequality test.

    ``x <= y`` is accepted iff ``x <= y + abs_tol``.
    """

    abs_tol: float = 1e-9

    def __post_init__(self):
        if not np.isfinite(self.abs_tol) or self.abs_tol < 0:
            raise ValueError(f"abs_tol must be finite and >= 0, got {self.abs_tol!r}")

    def le(self, x, y) -> bool:
        return bool(x <= y + self.abs_tol)


DEFAULT_TOL = Tolerance()
EXACT = Tolerance(0.0)

TolLike = Union[Tolerance, float, None]


def as_tolerance(tol: TolLike) -> Tolerance:
    if tol is None:
        return DEFAULT_TOL
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(float(tol))


class Sequence:
    """A finite, 1-indexed sequence of finite reals ``u_1 .. u_N`` with ``N >= 1``."""

    __slots__ = ("_values",)

    def __init__(self, values: ArrayLike, *, prepend_zero: bool = False):
        try:
            arr = np.array(values, dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise SequenceError(f"not a numeric sequence: {exc}") from None
        if arr.ndim != 1:
            raise SequenceError("a sequence must be one-dimensional")
        if prepend_zero:
            # u_0 = 0 reading of the input; the zero becomes the first stored term
            arr = np.concatenate(([0.0], arr))
        if arr.size == 0:
            raise SequenceError("a sequence needs at least one term")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0]) + 1
            raise SequenceError(f"term {bad} is not finite")
        arr.flags.writeable = False
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return self._values.shape[0]

    def __getitem__(self, i: int) -> float:
        if not 1 <= i <= len(self):
            raise IndexError(f"index {i} outside 1..{len(self)}")
        return float(self._values[i - 1])

    def __iter__(self):
        return iter(self._values.tolist())

    def __eq__(self, other):
        if isinstance(other, Sequence):
            return np.array_equal(self._values, other._values)
        return NotImplemented

    def __hash__(self):
        return hash(self._values.tobytes())

    def __repr__(self):
        return f"Sequence({self._values.tolist()!r})"

    def tolist(self) -> list:
        return self._values.tolist()


SeqLike = Union[Sequence, ArrayLike]


def as_sequence(u: SeqLike) -> Sequence:
    return u if isinstance(u, Sequence) else Sequence(u)


def _arr(u: SeqLike) -> np.ndarray:
    return as_sequence(u).values


class SubadditivityCheck(NamedTuple):
    holds: bool
    pair: Optional[Tuple[int, int]]

    def __bool__(self):
        return self.holds


def is_subadditive(u: SeqLike, tol: TolLike = None) -> SubadditivityCheck:
    """Exhaustive O(N^2) test of ``u[m+n] <= u[m] + u[n]``.

    On failure ``pair`` is the lexicographically smallest violating ``(m, n)``.
    """
    tol = as_tolerance(tol)
    m, n = _kernels.first_subadditive_violation(_arr(u), tol.abs_tol)
    if m == 0:
        return SubadditivityCheck(True, None)
    return SubadditivityCheck(False, (int(m), int(n)))


def is_nonneg_decreasing(u: SeqLike) -> bool:
    a = _arr(u)
    return bool(np.all(a >= 0) and np.all(a[1:] <= a[:-1]))


def difference_bound_holds(u: SeqLike, tol: TolLike = None) -> bool:
    """``u[n] - u[m] <= u[n-m]`` for every ``n > m >= 1``."""
    tol = as_tolerance(tol)
    n, _ = _kernels.first_difference_violation(_arr(u), tol.abs_tol)
    return n == 0


def first_difference_violation(u: SeqLike, tol: TolLike = None) -> Optional[Tuple[int, int]]:
    """The first ``(n, m)`` (ordered by ``m``, then ``n``) breaking the difference bound."""
    tol = as_tolerance(tol)
    n, m = _kernels.first_difference_violation(_arr(u), tol.abs_tol)
    return None if n == 0 else (int(n), int(m))
