"""Truncated power series with exact rational coefficients.

A series is a tuple of `fractions.Fraction` values, coefficient of z^k at
index k, truncated at a fixed order (inclusive).  Arithmetic on two series
first harmonizes them to the smaller order, and no operation ever claims a
coefficient beyond its truncation order.  Only the few operations the tree
counting needs are provided; this is not a general power-series toolkit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable

from .errors import EmptyFamilyError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _validated_degrees(degrees: Iterable[int]) -> frozenset[int]:
    out = list(degrees)
    if any(not isinstance(d, int) or d < 1 for d in out):
        raise ValueError(f"degrees must be integers >= 1, got {sorted(out)!r}")
    if len(set(out)) != len(out):
        raise ValueError(f"degrees must be pairwise distinct, got {sorted(out)!r}")
    return frozenset(out)


@dataclass(frozen=True)
class RationalSeries:
    """A power series truncated at ``order``; ``coeffs[k]`` is the z^k coefficient."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least its constant coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def series_one(order: int) -> RationalSeries:
    """The constant series 1 truncated at ``order``."""
    return RationalSeries((_ONE,) + (_ZERO,) * order)


def series_from_allowed(allowed: Iterable[int], order: int) -> RationalSeries:
    """Per-vertex factor of an allowed degree set: sum of z^(i-1)/(i-1)!.

    Degrees with i-1 > order cannot contribute to any coefficient that
    survives the truncation, so they are silently dropped.
    """
    degrees = _validated_degrees(allowed)
    if not degrees:
        raise EmptyFamilyError("allowed degree set must be nonempty")
    coeffs = [_ZERO] * (order + 1)
    for i in degrees:
        if i - 1 <= order:
            coeffs[i - 1] = Fraction(1, factorial(i - 1))
    return RationalSeries(tuple(coeffs))


def series_from_forbidden(forbidden: Iterable[int], order: int) -> RationalSeries:
    """Per-vertex factor of a forbidden degree set: e^z minus its z^(i-1)/(i-1)! terms.

    Coefficient at k is 1/k! unless degree k+1 is forbidden, in which
    case it is 0.  An empty set gives the plain truncation of e^z.
    """
    degrees = _validated_degrees(forbidden)
    coeffs = tuple(
        _ZERO if k + 1 in degrees else Fraction(1, factorial(k))
        for k in range(order + 1)
    )
    return RationalSeries(coeffs)


def mul_truncated(f: RationalSeries, g: RationalSeries) -> RationalSeries:
    """Cauchy product truncated to min(f.order, g.order)."""
    order = min(f.order, g.order)
    out = [_ZERO] * (order + 1)
    for i in range(order + 1):
        fi = f.coeffs[i]
        if not fi:
            continue
        gc = g.coeffs
        for j in range(order + 1 - i):
            gj = gc[j]
            if gj:
                out[i + j] += fi * gj
    return RationalSeries(tuple(out))


def pow_truncated(f: RationalSeries, n: int) -> RationalSeries:
    """f**n truncated to f.order, by binary exponentiation; f**0 is 1."""
    if n < 0:
        raise ValueError("negative powers are not defined for truncated series")
    result = series_one(f.order)
    base = f
    while n:
        if n & 1:
            result = mul_truncated(result, base)
        n >>= 1
        if n:
            base = mul_truncated(base, base)
    return result


def coeff(f: RationalSeries, k: int) -> Fraction:
    """Coefficient of z^k.

    Indices beyond the truncation order are unknown, not zero, so they
    raise instead of returning 0.
    """
    if not 0 <= k <= f.order:
        raise IndexError(f"coefficient {k} is outside the truncated range 0..{f.order}")
    return f.coeffs[k]
