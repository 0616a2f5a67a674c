"""Guess-and-verify fitting of linear recurrences with polynomial coefficients.

Candidate recurrences sum_{j=0}^{r} p_j(n) a(n+j) = 0 are searched in
increasing order r, then increasing polynomial degree.  For each candidate
shape the terms give a homogeneous linear system for the polynomial
coefficients; a candidate survives only if its exact nullspace is nontrivial,
the relation reproduces every fitted term, and it also holds on held-out
terms it never saw.  All linear algebra is exact: a fast elimination modulo
a 61-bit prime discards hopeless candidate shapes (full column rank mod p
implies full rank over the rationals), and survivors get a fraction-free
integer elimination to extract the true rational nullspace.

A found recurrence is evidence, not proof: the overdetermination margin and
held-out verification make coincidences implausible, nothing more.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import InexactDivisionError, InsufficientDataError, SingularPointError

_FILTER_PRIME = (1 << 61) - 1  # Mersenne prime

# Equations beyond unknowns required before a candidate is even solved.
_OVERDETERMINATION_MARGIN = 10


def _poly_eval(coeffs: Sequence[int], x: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = out * x + c
    return out


def _poly_text(coeffs: Sequence[int]) -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        mon = "" if e == 0 else ("n" if e == 1 else f"n^{e}")
        if mon and abs(c) == 1:
            cs = "-" if c < 0 else ""
        else:
            cs = str(c)
        parts.append(cs + ("*" if mon and cs not in ("", "-") else "") + mon)
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class PRecurrence:
    """An order-r relation sum_j p_j(n) a(n+j) = 0 asserted for n >= offset.

    ``coeff_polys[j]`` holds the integer coefficients of p_j, constant term
    first.  ``terms_used``/``terms_verified`` count the relation windows the
    coefficients were fitted on and the held-out windows they were checked
    on afterwards.  ``support`` records an index re-mapping (n0, step) when
    the recurrence was fitted to the nonzero subsequence of a zero-interleaved
    sequence: term m of the fitted sequence is the original count at
    n0 + step*m, and the recurrence variable is m.
    """

    coeff_polys: tuple[tuple[int, ...], ...]
    offset: int
    terms_used: int
    terms_verified: int
    support: tuple[int, int] | None = None

    def __post_init__(self):
        if len(self.coeff_polys) < 2:
            raise ValueError("a recurrence needs order >= 1")
        if not any(self.coeff_polys[-1]):
            raise ValueError("leading polynomial must not be identically zero")

    @property
    def order(self) -> int:
        return len(self.coeff_polys) - 1

    def holds_on(self, seq: Sequence[int], offset: int | None = None) -> bool:
        """Whether the relation annihilates every window of ``seq``."""
        off = self.offset if offset is None else offset
        r = self.order
        for t in range(len(seq) - r):
            n = off + t
            if sum(_poly_eval(p, n) * seq[t + j] for j, p in enumerate(self.coeff_polys)):
                return False
        return True

    def __str__(self) -> str:
        var = "m" if self.support else "n"
        terms = []
        for j, p in enumerate(self.coeff_polys):
            txt = _poly_text(p).replace("n", var)
            arg = var if j == 0 else f"{var}+{j}"
            terms.append(f"({txt})*a({arg})")
        rel = " + ".join(terms) + " = 0"
        if self.support:
            n0, step = self.support
            rel += f"   [a(m) = count at n = {n0} + {step}*m]"
        return rel

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "coeff_polys": [[str(c) for c in p] for p in self.coeff_polys],
            "offset": self.offset,
            "terms_used": self.terms_used,
            "terms_verified": self.terms_verified,
            "support": list(self.support) if self.support else None,
            "text": str(self),
        }


def _modp_has_nullspace(rows: list[list[int]], ncols: int) -> bool:
    """True unless the matrix provably has full column rank (checked mod p)."""
    p = _FILTER_PRIME
    mat = [[x % p for x in row] for row in rows]
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        prow = [(x * inv) % p for x in mat[rank]]
        mat[rank] = prow
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], prow)]
        rank += 1
        if rank == ncols:
            return False
    return True


def _nullspace_basis(rows: list[list[int]], ncols: int) -> list[tuple[int, ...]]:
    """Exact rational nullspace of an integer matrix, as primitive integer vectors.

    Fraction-free (Bareiss) forward elimination keeps the work in integers;
    back-substitution for each free column then runs over exact rationals.
    """
    mat = [row[:] for row in rows]
    nrows = len(mat)
    piv_cols: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, nrows):
            mic = mat[i][c]
            mrc = mat[r][c]
            row_i = mat[i]
            row_r = mat[r]
            for j in range(c + 1, ncols):
                row_i[j] = (mrc * row_i[j] - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = mat[r][c]
        piv_cols.append(c)
        r += 1
        if r == ncols or r == nrows:
            break
    free_cols = [c for c in range(ncols) if c not in piv_cols]
    basis = []
    for fc in free_cols:
        v: list[Fraction] = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i in range(len(piv_cols) - 1, -1, -1):
            pc = piv_cols[i]
            s = sum(mat[i][j] * v[j] for j in range(pc + 1, ncols) if v[j])
            v[pc] = Fraction(-s, mat[i][pc])
        den = lcm(*(x.denominator for x in v))
        iv = [int(x * den) for x in v]
        g = 0
        for x in iv:
            g = gcd(g, x)
        iv = [x // g for x in iv]
        lead = next(x for x in iv if x)
        if lead < 0:
            iv = [-x for x in iv]
        basis.append(tuple(iv))
    return basis


def _trim(poly: Sequence[int]) -> tuple[int, ...]:
    out = list(poly)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def guess_recurrence(
    seq: Sequence[int],
    offset: int,
    max_order: int,
    max_degree: int,
    verify_count: int = 10,
) -> PRecurrence | None:
    """Smallest (order, then degree) polynomial recurrence annihilating ``seq``.

    ``seq[t]`` is the term at index offset+t.  The last ``verify_count``
    relation windows are held out of the fit and checked afterwards; a fit
    must also be overdetermined by at least 10 equations.  Returns None when
    the whole (order, degree) grid was searched with enough data and nothing
    survived; raises InsufficientDataError if parts of the grid could not be
    searched at all, since "none found" would then be unearned.
    """
    seq = [int(x) for x in seq]
    if max_order < 1 or max_degree < 0 or verify_count < 0:
        raise ValueError("bounds must satisfy max_order >= 1, max_degree >= 0, verify_count >= 0")
    skipped_cells = False
    for r in range(1, max_order + 1):
        windows = len(seq) - r
        for deg in range(max_degree + 1):
            unknowns = (r + 1) * (deg + 1)
            fit_windows = windows - verify_count
            if fit_windows < unknowns + _OVERDETERMINATION_MARGIN:
                skipped_cells = True
                continue
            rows = []
            for t in range(fit_windows):
                n = offset + t
                npow = [n**e for e in range(deg + 1)]
                row = []
                for j in range(r + 1):
                    a = seq[t + j]
                    row.extend(a * pw for pw in npow)
                rows.append(row)
            if not _modp_has_nullspace(rows, unknowns):
                continue
            for vec in _nullspace_basis(rows, unknowns):
                polys = tuple(
                    _trim(vec[j * (deg + 1) : (j + 1) * (deg + 1)]) for j in range(r + 1)
                )
                if not any(polys[-1]):
                    continue
                if polys[-1][-1] < 0:
                    polys = tuple(tuple(-c for c in p) for p in polys)
                cand = PRecurrence(
                    coeff_polys=polys,
                    offset=offset,
                    terms_used=fit_windows,
                    terms_verified=windows - fit_windows,
                )
                if cand.holds_on(seq):
                    return cand
    if skipped_cells:
        raise InsufficientDataError(
            f"{len(seq)} terms cannot cover the search up to order {max_order}, "
            f"degree {max_degree} with {verify_count} held-out terms"
        )
    return None


def extend_with_recurrence(rec: PRecurrence, seq_prefix: Sequence[int], N: int) -> list[int]:
    """First N terms (from rec.offset on) obtained by stepping the recurrence.

    The prefix must cover at least the first ``rec.order`` terms; given
    prefix terms are kept as-is.  Each step divides by the leading
    polynomial, which must be nonzero at the step index and divide exactly.
    """
    r = rec.order
    prefix = [int(x) for x in seq_prefix]
    if len(prefix) < r:
        raise ValueError(f"prefix must cover at least {r} terms")
    out = prefix[: min(len(prefix), N)]
    while len(out) < N:
        t = len(out)
        n = rec.offset + t - r
        lead = _poly_eval(rec.coeff_polys[r], n)
        if lead == 0:
            raise SingularPointError(n)
        acc = 0
        for j in range(r):
            acc += _poly_eval(rec.coeff_polys[j], n) * out[t - r + j]
        q, rem = divmod(-acc, lead)
        if rem:
            raise InexactDivisionError(
                f"stepping at index {n} required dividing {-acc} by {lead}; "
                "the recurrence does not fit this sequence"
            )
        out.append(q)
    return out


def detect_support(seq: Sequence[int], start_index: int) -> tuple[int, int, list[int]]:
    """Maximal suffix of nonzero terms whose positions form an arithmetic progression.

    Returns (first index n0, step, values).  Families whose counts vanish on
    a periodic pattern (e.g. odd n for an all-odd allowed set) yield their
    nonzero subsequence; a fully nonzero sequence comes back whole with step 1.
    """
    positions = [i for i, v in enumerate(seq) if v != 0]
    if not positions:
        raise ValueError("sequence is identically zero")
    if len(positions) == 1:
        i = positions[0]
        return start_index + i, 1, [seq[i]]
    step = positions[-1] - positions[-2]
    j = len(positions) - 2
    while j > 0 and positions[j] - positions[j - 1] == step:
        j -= 1
    chosen = positions[j:]
    return start_index + chosen[0], step, [seq[i] for i in chosen]


def guess_with_support(
    seq: Sequence[int],
    start_index: int,
    max_order: int,
    max_degree: int,
    verify_count: int = 10,
) -> PRecurrence | None:
    """guess_recurrence on the nonzero-support subsequence, recording the re-indexing.

    Interleaved structural zeros inflate the order of any recurrence and
    hide the real one, so the guess runs on the re-indexed nonzero terms;
    the (n0, step) map lands in the result's ``support`` field.
    """
    n0, step, values = detect_support(seq, start_index)
    rec = guess_recurrence(values, 0, max_order, max_degree, verify_count)
    if rec is None:
        return None
    return PRecurrence(
        coeff_polys=rec.coeff_polys,
        offset=rec.offset,
        terms_used=rec.terms_used,
        terms_verified=rec.terms_verified,
        support=(n0, step),
    )
