"""Exact and asymptotic statistics of degree-count variables on random labeled trees.

X_d is the number of degree-d vertices of a tree drawn uniformly from all
n^(n-2) labeled trees on n vertices.  Every exact quantity here reduces to
the closed-form binomial (falling-factorial) moments

    E[C(X_d, j)] = (n-2)!/n^(n-2) * C(n,j)/(d-1)!^j * (n-j)^E / E!,
    E = n-2-(d-1)j,  (zero when E < 0; 0^0 = 1)

and their two-variable analogue: raw moments follow by Stirling numbers of
the second kind, central and mixed central moments by binomial expansion
about the mean.  No floating point enters an exact path; floats are produced
from finished rationals.

The linear-in-n asymptotic coefficients (slopes) of E[X_d], Var(X_d) and
Cov(X_{d1}, X_{d2}) have closed forms; the limiting correlation is computed
self-consistently as cov_slope/sqrt(var_slope*var_slope).  An alternative
closed form for the correlation with square-root-factorial factors in the
denominator circulates; it is NOT the ratio of those slopes (it can exceed 1
in magnitude) and is provided only so diagnostics can log the comparison.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, exp, factorial, sqrt
from typing import Iterable, Sequence

_NORMAL_STD_MOMENTS = {3: 0.0, 4: 3.0, 5: 0.0, 6: 15.0}


@lru_cache(maxsize=None)
def _stirling2(k: int, j: int) -> int:
    if k == j:
        return 1
    if j == 0 or j > k:
        return 0
    return j * _stirling2(k - 1, j) + _stirling2(k - 1, j - 1)


def _check_dn(d: int, n: int):
    if d < 1:
        raise ValueError("degrees are >= 1")
    if n < 2:
        raise ValueError("moments are defined for n >= 2")


def binomial_moment(d: int, j: int, n: int) -> Fraction:
    """E[C(X_d, j)], exact."""
    _check_dn(d, n)
    if j < 0:
        raise ValueError("j must be >= 0")
    e = n - 2 - (d - 1) * j
    if e < 0 or j > n:
        return Fraction(0)
    base = n - j
    power = 1 if e == 0 else base**e
    num = factorial(n - 2) * comb(n, j) * power
    den = n ** (n - 2) * factorial(d - 1) ** j * factorial(e)
    return Fraction(num, den)


def mixed_binomial_moment(d1: int, j1: int, d2: int, j2: int, n: int) -> Fraction:
    """E[C(X_{d1}, j1) * C(X_{d2}, j2)] for distinct degrees, exact."""
    if d1 == d2:
        raise ValueError("d1 == d2: use binomial_moment for a single variable")
    _check_dn(d1, n)
    _check_dn(d2, n)
    if j1 < 0 or j2 < 0:
        raise ValueError("j1, j2 must be >= 0")
    e = n - 2 - (d1 - 1) * j1 - (d2 - 1) * j2
    if e < 0 or j1 + j2 > n:
        return Fraction(0)
    base = n - j1 - j2
    power = 1 if e == 0 else base**e
    num = factorial(n - 2) * factorial(n) * power
    den = (
        n ** (n - 2)
        * factorial(j1)
        * factorial(j2)
        * factorial(n - j1 - j2)
        * factorial(d1 - 1) ** j1
        * factorial(d2 - 1) ** j2
        * factorial(e)
    )
    return Fraction(num, den)


def raw_moment(d: int, k: int, n: int) -> Fraction:
    """E[X_d^k] via x^k = sum_j S2(k,j) x^(j) falling factorials."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return sum(
        (_stirling2(k, j) * factorial(j)) * binomial_moment(d, j, n)
        for j in range(k + 1)
    )


def central_moment(d: int, k: int, n: int) -> Fraction:
    """E[(X_d - E[X_d])^k], exact."""
    m = raw_moment(d, 1, n)
    return sum(
        comb(k, i) * (-m) ** (k - i) * raw_moment(d, i, n) for i in range(k + 1)
    )


def _mixed_raw_moment(d1: int, k1: int, d2: int, k2: int, n: int) -> Fraction:
    total = Fraction(0)
    for j1 in range(k1 + 1):
        for j2 in range(k2 + 1):
            s = _stirling2(k1, j1) * _stirling2(k2, j2)
            if s:
                total += (s * factorial(j1) * factorial(j2)) * mixed_binomial_moment(
                    d1, j1, d2, j2, n
                )
    return total


def mixed_central_moment(d1: int, d2: int, k1: int, k2: int, n: int) -> Fraction:
    """E[(X_{d1} - E[X_{d1}])^{k1} (X_{d2} - E[X_{d2}])^{k2}], exact."""
    if k1 < 0 or k2 < 0:
        raise ValueError("moment orders must be >= 0")
    m1 = raw_moment(d1, 1, n)
    m2 = raw_moment(d2, 1, n)
    total = Fraction(0)
    for i in range(k1 + 1):
        ci = comb(k1, i) * (-m1) ** (k1 - i)
        for l in range(k2 + 1):
            total += ci * comb(k2, l) * (-m2) ** (k2 - l) * _mixed_raw_moment(d1, i, d2, l, n)
    return total


# --- asymptotic slopes -----------------------------------------------------

def asymptotic_expectation_coeff(d: int) -> float:
    """Slope of E[X_d] in n: e^-1/(d-1)!."""
    if d < 1:
        raise ValueError("degrees are >= 1")
    return exp(-1) / factorial(d - 1)


def asymptotic_variance_coeff(d: int) -> float:
    """Slope of Var(X_d) in n: e^-1/(d-1)! - (d^2-4d+5) e^-2/(d-1)!^2."""
    if d < 1:
        raise ValueError("degrees are >= 1")
    f = factorial(d - 1)
    return exp(-1) / f - (d * d - 4 * d + 5) * exp(-2) / (f * f)


def asymptotic_covariance_coeff(d1: int, d2: int) -> float:
    """Slope of Cov(X_{d1}, X_{d2}) in n: (2d1+2d2-d1d2-5)/((d1-1)!(d2-1)! e^2).

    Derived for 1 < d1 < d2; for degree 1 the same expression is an
    extrapolation beyond that range -- reports flag it and show the
    empirically measured slope next to it.
    """
    if d1 == d2:
        raise ValueError("d1 == d2: use asymptotic_variance_coeff")
    if d1 < 1 or d2 < 1:
        raise ValueError("degrees are >= 1")
    return (2 * d1 + 2 * d2 - d1 * d2 - 5) / (factorial(d1 - 1) * factorial(d2 - 1) * exp(2))


def limiting_correlation(d1: int, d2: int) -> float:
    """Limit of corr(X_{d1}, X_{d2}): covariance slope over the variance slopes' geometric mean."""
    v1 = asymptotic_variance_coeff(d1)
    v2 = asymptotic_variance_coeff(d2)
    if v1 <= 0 or v2 <= 0:
        raise ArithmeticError("variance slopes must be positive")
    return asymptotic_covariance_coeff(d1, d2) / sqrt(v1 * v2)


def correlation_sqrt_factorial_variant(d1: int, d2: int) -> float:
    """Alternative correlation closed form with sqrt((d-1)!) denominator factors.

    Dimensionally inconsistent with the slope-based definition (e.g. it
    gives magnitude > 1 for (2,3)); kept only so diagnostics can log the
    comparison against limiting_correlation.
    """
    if d1 == d2:
        raise ValueError("d1 and d2 must differ")
    num = 2 * d1 + 2 * d2 - d1 * d2 - 5
    den_sq = 1.0
    for d in (d1, d2):
        den_sq *= sqrt(factorial(d - 1)) - (d * d - 4 * d + 5) * exp(-1)
    if den_sq <= 0:
        return float("nan")
    return num / sqrt(den_sq)


@lru_cache(maxsize=None)
def bivariate_normal_mixed_moment(k1: int, k2: int, rho: float) -> float:
    """E[Z1^k1 Z2^k2] for standard bivariate normals with correlation rho (Stein recursion)."""
    if k1 < 0 or k2 < 0:
        return 0.0
    if k1 == 0 and k2 == 0:
        return 1.0
    if k1 == 0:
        return (k2 - 1) * bivariate_normal_mixed_moment(0, k2 - 2, rho) if k2 >= 2 else 0.0
    return (k1 - 1) * bivariate_normal_mixed_moment(k1 - 2, k2, rho) + rho * k2 * (
        bivariate_normal_mixed_moment(k1 - 1, k2 - 1, rho)
    )


# --- extrapolation and diagnostics -----------------------------------------

def extrapolate_in_inv_sqrt_n(n_list: Sequence[int], values: Sequence[float]) -> float:
    """Polynomial extrapolation to n = infinity in the variable n^(-1/2).

    Standardized central moments of total order k differ from their limits
    by expansions in n^(-1/2) (the scale sigma ~ sqrt(n) introduces half
    powers), so this is the right extrapolation variable.
    """
    if len(n_list) != len(values) or len(n_list) < 2:
        raise ValueError("need matching lists with at least two entries")
    xs = [n**-0.5 for n in n_list]
    col = [float(v) for v in values]
    for ell in range(1, len(col)):
        col = [
            (xs[i] * col[i + 1] - xs[i + ell] * col[i]) / (xs[i] - xs[i + ell])
            for i in range(len(col) - 1)
        ]
    return col[0]


@dataclass(frozen=True)
class NormalityReport:
    """Standardized central moments at each n and their extrapolated limits."""

    d: int
    n_list: tuple[int, ...]
    rows: tuple[dict, ...]
    extrapolated: dict[int, float]
    normal_targets: dict[int, float]
    skipped: tuple[int, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "n_list": list(self.n_list),
            "rows": [
                {
                    "n": row["n"],
                    "sigma": row["sigma"],
                    "standardized": {str(k): v for k, v in row["standardized"].items()},
                }
                for row in self.rows
            ],
            "extrapolated": {str(k): v for k, v in self.extrapolated.items()},
            "normal_targets": {str(k): v for k, v in self.normal_targets.items()},
            "skipped": list(self.skipped),
        }


def normality_diagnostics(d: int, n_list: Iterable[int], orders: Sequence[int] = (3, 4, 5, 6)) -> NormalityReport:
    """Standardized central moments mu_k/sigma^k of X_d along n_list, extrapolated.

    Asymptotic normality predicts the standard normal moments (0, 3, 0, 15
    for k = 3..6) in the limit.  Degenerate n with sigma = 0 are skipped and
    recorded.
    """
    ns = sorted(set(int(n) for n in n_list))
    if not ns or ns[0] < 4:
        raise ValueError("n_list must be nonempty with every n >= 4")
    rows = []
    skipped = []
    for n in ns:
        var = central_moment(d, 2, n)
        if var == 0:
            skipped.append(n)
            continue
        sigma = sqrt(float(var))
        standardized = {
            k: float(central_moment(d, k, n)) / sigma**k for k in orders
        }
        rows.append({"n": n, "sigma": sigma, "standardized": standardized})
    extrapolated = {}
    if len(rows) >= 2:
        kept_ns = [row["n"] for row in rows]
        for k in orders:
            extrapolated[k] = extrapolate_in_inv_sqrt_n(
                kept_ns, [row["standardized"][k] for row in rows]
            )
    return NormalityReport(
        d=d,
        n_list=tuple(ns),
        rows=tuple(rows),
        extrapolated=extrapolated,
        normal_targets={k: _NORMAL_STD_MOMENTS[k] for k in orders if k in _NORMAL_STD_MOMENTS},
        skipped=tuple(skipped),
    )


@dataclass(frozen=True)
class JointNormalityReport:
    """Scaled mixed central moments against bivariate-normal targets."""

    d1: int
    d2: int
    n_list: tuple[int, ...]
    orders: tuple[tuple[int, int], ...]
    rows: tuple[dict, ...]
    extrapolated: dict[tuple[int, int], float]
    targets: dict[tuple[int, int], float]
    correlation: float
    correlation_variant: float
    skipped: tuple[int, ...] = ()

    def to_json_dict(self) -> dict:
        key = lambda kk: f"{kk[0]},{kk[1]}"
        return {
            "d1": self.d1,
            "d2": self.d2,
            "n_list": list(self.n_list),
            "orders": [list(kk) for kk in self.orders],
            "rows": [
                {
                    "n": row["n"],
                    "scaled": {key(kk): v for kk, v in row["scaled"].items()},
                }
                for row in self.rows
            ],
            "extrapolated": {key(kk): v for kk, v in self.extrapolated.items()},
            "targets": {key(kk): v for kk, v in self.targets.items()},
            "correlation": self.correlation,
            "correlation_variant": self.correlation_variant,
            "skipped": list(self.skipped),
        }


def joint_normality_diagnostics(
    d1: int,
    d2: int,
    n_list: Iterable[int],
    orders: Iterable[tuple[int, int]] = ((1, 1), (2, 2)),
) -> JointNormalityReport:
    """Scaled mixed central moments mu_{k1,k2}/(sigma1^k1 sigma2^k2) along n_list.

    Joint asymptotic normality predicts the standard bivariate-normal mixed
    moments with the limiting correlation; both the self-consistent
    correlation and the sqrt-factorial variant are reported so their
    disagreement stays visible.
    """
    ns = sorted(set(int(n) for n in n_list))
    if not ns or ns[0] < 4:
        raise ValueError("n_list must be nonempty with every n >= 4")
    order_list = tuple((int(k1), int(k2)) for k1, k2 in orders)
    rho = limiting_correlation(d1, d2)
    rows = []
    skipped = []
    for n in ns:
        v1 = central_moment(d1, 2, n)
        v2 = central_moment(d2, 2, n)
        if v1 == 0 or v2 == 0:
            skipped.append(n)
            continue
        s1 = sqrt(float(v1))
        s2 = sqrt(float(v2))
        scaled = {
            (k1, k2): float(mixed_central_moment(d1, d2, k1, k2, n)) / (s1**k1 * s2**k2)
            for k1, k2 in order_list
        }
        rows.append({"n": n, "scaled": scaled})
    extrapolated = {}
    if len(rows) >= 2:
        kept_ns = [row["n"] for row in rows]
        for kk in order_list:
            extrapolated[kk] = extrapolate_in_inv_sqrt_n(
                kept_ns, [row["scaled"][kk] for row in rows]
            )
    targets = {kk: bivariate_normal_mixed_moment(kk[0], kk[1], rho) for kk in order_list}
    return JointNormalityReport(
        d1=d1,
        d2=d2,
        n_list=tuple(ns),
        orders=order_list,
        rows=tuple(rows),
        extrapolated=extrapolated,
        targets=targets,
        correlation=rho,
        correlation_variant=correlation_sqrt_factorial_variant(d1, d2),
        skipped=tuple(skipped),
    )


# --- reports ----------------------------------------------------------------

@dataclass(frozen=True)
class MomentReport:
    """Exact moments of one or two degree-count variables plus asymptotic slopes.

    ``exact`` maps descriptors like "raw_2", "central_3", "binomial_1" or
    "mixed_central_1_1" to exact rationals; ``floats`` carries their float
    renditions; ``asymptotic_slopes`` the relevant linear coefficients.
    """

    n: int
    d: int | None = None
    d1: int | None = None
    d2: int | None = None
    exact: dict[str, Fraction] = field(default_factory=dict)
    floats: dict[str, float] = field(default_factory=dict)
    asymptotic_slopes: dict[str, float] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        head: dict = {"n": self.n}
        if self.d is not None:
            head["d"] = self.d
        if self.d1 is not None:
            head["d1"] = self.d1
            head["d2"] = self.d2
        head["exact"] = {
            k: f"{v.numerator}/{v.denominator}" for k, v in sorted(self.exact.items())
        }
        head["floats"] = dict(sorted(self.floats.items()))
        head["asymptotic_slopes"] = dict(sorted(self.asymptotic_slopes.items()))
        head["notes"] = list(self.notes)
        return head


def moment_report(d: int, n: int, upto: int = 4) -> MomentReport:
    """Raw, central and binomial moments of X_d up to order ``upto`` at one n."""
    if upto < 1:
        raise ValueError("upto must be >= 1")
    exact: dict[str, Fraction] = {}
    for j in range(upto + 1):
        exact[f"binomial_{j}"] = binomial_moment(d, j, n)
    for k in range(1, upto + 1):
        exact[f"raw_{k}"] = raw_moment(d, k, n)
        exact[f"central_{k}"] = central_moment(d, k, n)
    floats = {k: float(v) for k, v in exact.items()}
    slopes = {
        "expectation": asymptotic_expectation_coeff(d),
        "variance": asymptotic_variance_coeff(d),
    }
    return MomentReport(n=n, d=d, exact=exact, floats=floats, asymptotic_slopes=slopes)


def mixed_moment_report(d1: int, d2: int, n: int, k1: int, k2: int) -> MomentReport:
    """Mixed central moment of (X_{d1}, X_{d2}) plus covariance/correlation slopes."""
    exact = {
        f"mixed_central_{k1}_{k2}": mixed_central_moment(d1, d2, k1, k2, n),
        "covariance": mixed_central_moment(d1, d2, 1, 1, n),
        f"variance_d{d1}": central_moment(d1, 2, n),
        f"variance_d{d2}": central_moment(d2, 2, n),
    }
    floats = {k: float(v) for k, v in exact.items()}
    slopes = {
        "covariance": asymptotic_covariance_coeff(d1, d2),
        "correlation": limiting_correlation(d1, d2),
    }
    notes: tuple[str, ...] = ()
    if min(d1, d2) == 1:
        empirical = float(
            mixed_central_moment(d1, d2, 1, 1, n + 1) - mixed_central_moment(d1, d2, 1, 1, n)
        )
        slopes["covariance_empirical_at_n"] = empirical
        notes = (
            "covariance slope closed form extrapolated beyond its derived range "
            "(needs 1 < d1 < d2); compare with covariance_empirical_at_n",
        )
    return MomentReport(
        n=n, d1=d1, d2=d2, exact=exact, floats=floats, asymptotic_slopes=slopes, notes=notes
    )
