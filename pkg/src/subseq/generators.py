"""Seeded sequence families for tests, benchmarks and the ``generate`` command.

Randomness comes from SplitMix64 so that a ``(family, n, seed, params)``
tuple pins the output bit for bit on any platform:

    state_k = seed + k * 0x9E3779B97F4A7C15            (mod 2**64, k = 1, 2, ...)
    z = (state_k ^ (state_k >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out_k = z ^ (z >> 31)

and a uniform double in ``[0, 1)`` is ``(out_k >> 11) * 2**-53``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from typing import Optional, Tuple

import numpy as np

from .core import Sequence, TolLike, as_tolerance, is_nonneg_decreasing, is_subadditive
from .envelope import subadditive_envelope
from .periodicity import epsilon_for_period

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1

FAMILIES = (
    "uniform-random",
    "subadditive-via-envelope",
    "concave-sampled",
    "affine",
    "nonneg-decreasing",
    "exact-periodic",
    "periodic-plus-noise",
)

CONCAVE_FUNCS = {
    "sqrt": np.sqrt,
    "log1p": np.log1p,
}


class GeneratorError(ValueError):
    pass


class SplitMix64:
    """Counter-based SplitMix64 stream."""

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK64

    def next_u64(self, count: int) -> np.ndarray:
        k = np.arange(1, count + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + k * _GAMMA
            z = (z ^ (z >> np.uint64(30))) * _MIX1
            z = (z ^ (z >> np.uint64(27))) * _MIX2
        self.state = (self.state + count * int(_GAMMA)) & _MASK64
        return z ^ (z >> np.uint64(31))

    def random(self, count: int) -> np.ndarray:
        return (self.next_u64(count) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def uniform(self, low: float, high: float, count: int) -> np.ndarray:
        return low + (high - low) * self.random(count)

    def integers(self, low: int, high: int, count: int) -> np.ndarray:
        """Integers in ``[low, high]`` (inclusive); modulo bias is irrelevant here."""
        span = np.uint64(high - low + 1)
        return (self.next_u64(count) % span).astype(np.int64) + low


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    seed: int = 0
    a: float = 1.0
    b: float = 0.0
    L: Optional[int] = None
    delta: float = 0.0
    low: float = -1.0
    high: float = 1.0
    pattern: Optional[Tuple[float, ...]] = None
    func: Optional[str] = None

    def __post_init__(self):
        if self.pattern is not None:
            object.__setattr__(self, "pattern", tuple(float(x) for x in self.pattern))

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise GeneratorError(f"unknown generator fields: {sorted(unknown)}")
        if "family" not in d or "n" not in d:
            raise GeneratorError("generator spec needs 'family' and 'n'")
        return cls(**d)

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["pattern"] is not None:
            d["pattern"] = list(d["pattern"])
        return d


def _validate(spec: GeneratorSpec):
    if spec.family not in FAMILIES:
        raise GeneratorError(f"unknown family {spec.family!r}; expected one of {FAMILIES}")
    if isinstance(spec.n, bool) or int(spec.n) != spec.n or spec.n < 1:
        raise GeneratorError(f"n must be a positive integer, got {spec.n!r}")
    if spec.low > spec.high:
        raise GeneratorError("low must not exceed high")
    for name in ("a", "b", "delta", "low", "high"):
        if not np.isfinite(getattr(spec, name)):
            raise GeneratorError(f"{name} must be finite")
    if spec.family in ("exact-periodic", "periodic-plus-noise"):
        period = len(spec.pattern) if spec.pattern is not None else spec.L
        if period is None:
            raise GeneratorError(f"{spec.family} needs L or pattern")
        if spec.L is not None and spec.pattern is not None and spec.L != len(spec.pattern):
            raise GeneratorError("L disagrees with the pattern length")
        if not 1 <= period < spec.n:
            raise GeneratorError(f"period must satisfy 1 <= L < n, got L={period}, n={spec.n}")
    if spec.family == "periodic-plus-noise" and spec.delta < 0:
        raise GeneratorError("delta must be non-negative")
    if spec.family == "nonneg-decreasing" and spec.high < 0:
        raise GeneratorError("nonneg-decreasing needs high >= 0")
    if spec.family == "concave-sampled":
        if spec.b < 0:
            raise GeneratorError("concave-sampled needs b = f(0) >= 0")
        if spec.func is not None:
            if spec.func not in CONCAVE_FUNCS:
                raise GeneratorError(f"func must be one of {sorted(CONCAVE_FUNCS)}")
            if spec.a < 0:
                raise GeneratorError("concave-sampled needs a >= 0")


def generate(spec: GeneratorSpec) -> Sequence:
    _validate(spec)
    n = int(spec.n)
    rng = SplitMix64(spec.seed)
    idx = np.arange(1, n + 1, dtype=np.float64)
    fam = spec.family

    if fam == "uniform-random":
        values = rng.uniform(spec.low, spec.high, n)
    elif fam == "subadditive-via-envelope":
        values = subadditive_envelope(rng.uniform(spec.low, spec.high, n)).v.values
    elif fam == "concave-sampled":
        if spec.func is not None:
            values = spec.a * CONCAVE_FUNCS[spec.func](idx) + spec.b
        else:
            # non-increasing slopes give a concave polyline through (0, b)
            slopes = np.sort(rng.uniform(spec.low, spec.high, n))[::-1]
            values = spec.b + np.cumsum(slopes)
    elif fam == "affine":
        values = spec.a * idx + spec.b
    elif fam == "nonneg-decreasing":
        values = np.sort(rng.uniform(0.0, spec.high, n))[::-1]
    else:
        if spec.pattern is not None:
            pattern = np.asarray(spec.pattern)
        else:
            pattern = rng.uniform(spec.low, spec.high, int(spec.L))
        values = np.resize(pattern, n)
        if fam == "periodic-plus-noise":
            values = values + rng.uniform(-spec.delta, spec.delta, n)
    return Sequence(values)


def family_postcondition(spec: GeneratorSpec, seq: Sequence, tol: TolLike = None) -> bool:
    """The property each family promises about its output."""
    tol = as_tolerance(tol)
    fam = spec.family
    if fam in ("subadditive-via-envelope", "concave-sampled"):
        return is_subadditive(seq, tol).holds
    if fam == "affine":
        # u_{m+n} - u_m - u_n = -b
        return is_subadditive(seq, tol).holds == (spec.b >= -tol.abs_tol or len(seq) < 2)
    if fam == "nonneg-decreasing":
        return is_nonneg_decreasing(seq) and is_subadditive(seq, tol).holds
    if fam == "exact-periodic":
        period = len(spec.pattern) if spec.pattern is not None else spec.L
        return epsilon_for_period(seq, period).epsilon <= tol.abs_tol
    if fam == "periodic-plus-noise":
        period = len(spec.pattern) if spec.pattern is not None else spec.L
        return epsilon_for_period(seq, period).epsilon <= 2 * spec.delta + tol.abs_tol
    return bool(np.all(seq.values >= spec.low) and np.all(seq.values <= spec.high))
