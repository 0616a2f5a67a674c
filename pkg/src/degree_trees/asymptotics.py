"""Empirical growth constants and the exact limiting degree distribution.

Counting sequences here grow like c^n * n! * (subexponential factors); the
ratio a(n+1)/(n*a(n)) isolates the constant c and admits an asymptotic
expansion in 1/n, so polynomial extrapolation of the ratios at 1/n -> 0
(iterated Richardson) converges fast.  The extrapolation runs in exact
rational arithmetic -- the input terms are exact integers, so the only error
left is truncation of the expansion, not float noise.

For a zero-interleaved sequence supported on every step-th index the same
model applies to a(n+step)/(n^step * a(n)), whose limit is c^step.

The limiting fraction of vertices of each allowed degree comes from
exponential tilting of the per-vertex weights 1/(i-1)!: the tilt t solves
t f'(t)/f(t) = 1 (each tree has average degree-shift (2n-2)/n -> 2), after
which degree i carries probability t^(i-1)/((i-1)! f(t)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .errors import EmptyFamilyError
from .recurrence import detect_support
from .series import (
    _validated_degrees,
    coeff,
    mul_truncated,
    pow_truncated,
    series_from_allowed,
)

_MIN_RATIO_TERMS = 30


@dataclass(frozen=True)
class GrowthEstimate:
    """Extrapolated exponential growth constant of a counting sequence.

    ``c`` is the final extrapolation iterate; ``c_sequence_tail`` exposes the
    last few iterates so callers can judge convergence for themselves.  For
    a sequence supported on every ``step``-th index, c has already been
    reduced to per-index scale (the raw ratio limit is c**step).
    """

    c: float
    c_sequence_tail: tuple[float, ...]
    n_max_used: int
    step: int = 1


def _neville_at_zero(xs: list[Fraction], ys: list[Fraction], levels: int) -> list[Fraction]:
    """Columns of the Neville tableau for the interpolant evaluated at x=0."""
    col = list(ys)
    for ell in range(1, levels + 1):
        col = [
            (xs[i] * col[i + 1] - xs[i + ell] * col[i]) / (xs[i] - xs[i + ell])
            for i in range(len(col) - 1)
        ]
    return col


def estimate_growth(
    seq: Sequence[int],
    start_index: int,
    *,
    window: int = 40,
    levels: int = 8,
) -> GrowthEstimate:
    """Extrapolate the growth constant c with a(n) ~ c^n * n! * (subexponential).

    ``seq[i]`` is the count at index start_index + i.  Structural zeros are
    handled by restricting to the maximal nonzero suffix with constant index
    step (see detect_support); at least 30 such terms are required.
    """
    values = [int(x) for x in seq]
    n0, step, support = detect_support(values, start_index)
    if len(support) < _MIN_RATIO_TERMS:
        raise ValueError(
            f"growth estimation needs >= {_MIN_RATIO_TERMS} nonzero terms on a "
            f"constant-step support, found {len(support)}"
        )
    ns = [n0 + step * m for m in range(len(support))]
    ratios = [
        Fraction(support[m + 1], support[m] * ns[m] ** step)
        for m in range(len(support) - 1)
    ]
    w = min(window, len(ratios))
    xs = [Fraction(1, n) for n in ns[-w - 1 : -1]]
    ys = ratios[-w:]
    depth = min(levels, w - 1)
    col = _neville_at_zero(xs, ys, depth)
    c_step = col[-1]
    if c_step <= 0:
        raise ValueError("ratio extrapolation did not stabilize on a positive constant")

    def per_index(v: Fraction) -> float:
        return float(v) ** (1.0 / step) if step > 1 else float(v)

    tail = tuple(per_index(v) if v > 0 else float("nan") for v in col[-5:])
    return GrowthEstimate(
        c=per_index(c_step),
        c_sequence_tail=tail,
        n_max_used=ns[-1],
        step=step,
    )


@dataclass(frozen=True)
class DegreeDistribution:
    """Limiting fractions of vertices per allowed degree, with the tilt that produced them."""

    support: tuple[int, ...]
    probs: dict[int, float]
    tilt: float
    boundary: bool = False


def limiting_degree_distribution(allowed: Iterable[int], tol: float = 1e-12) -> DegreeDistribution:
    """Limiting degree mix of uniform random trees with all degrees in the set.

    Solves t f'(t)/f(t) = 1 by bisection on exact rationals (the map is
    strictly increasing from 0 towards max(i)-1).  When max(i) <= 2 the
    equation has no interior root: paths dominate and the distribution
    degenerates onto degree 2, flagged as a boundary case.
    """
    degrees = sorted(_validated_degrees(allowed))
    if 1 not in degrees:
        raise ValueError("the allowed set must contain 1: trees have leaves")
    if len(degrees) < 2:
        raise EmptyFamilyError(
            "allowed set {1} admits only the two-vertex tree; no limiting distribution"
        )
    if max(degrees) <= 2:
        probs = {d: (1.0 if d == 2 else 0.0) for d in degrees}
        return DegreeDistribution(tuple(degrees), probs, float("inf"), boundary=True)

    weights = {i: Fraction(1, factorial(i - 1)) for i in degrees}

    def mean_shift(t: Fraction) -> Fraction:
        num = Fraction(0)
        den = Fraction(0)
        for i in degrees:
            w = weights[i] * t ** (i - 1)
            den += w
            num += (i - 1) * w
        return num / den

    lo, hi = Fraction(0), Fraction(1)
    while mean_shift(hi) <= 1:
        hi *= 2
    width = Fraction(tol)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mean_shift(mid) < 1:
            lo = mid
        else:
            hi = mid
    t = (lo + hi) / 2
    f = sum(weights[i] * t ** (i - 1) for i in degrees)
    probs = {i: float(weights[i] * t ** (i - 1) / f) for i in degrees}
    return DegreeDistribution(tuple(degrees), probs, float(t), boundary=False)


def constrained_expected_degree_count(allowed: Iterable[int], d: int, n: int) -> Fraction:
    """Exact E[number of degree-d vertices] over uniform degree-constrained trees.

    Differentiating the weighted count in the weight of degree d gives
    n * (n-2)! [z^(n-2)] (z^(d-1)/(d-1)!) f^(n-1) over the plain count.
    """
    degrees = _validated_degrees(allowed)
    if d not in degrees:
        raise ValueError(f"degree {d} is not in the allowed set {sorted(degrees)}")
    if n < 3:
        raise ValueError("defined for n >= 3")
    f = series_from_allowed(degrees, n - 2)
    g = pow_truncated(f, n - 1)
    total = coeff(mul_truncated(g, f), n - 2)
    if total == 0:
        raise EmptyFamilyError(f"no trees on {n} vertices with all degrees in {sorted(degrees)}")
    k = n - 1 - d
    if k < 0:
        return Fraction(0)
    return Fraction(n) * coeff(g, k) / (factorial(d - 1) * total)
