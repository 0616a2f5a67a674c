"""Brute-force ground truth: Prüfer codes, exhaustive enumeration, sampling.

Everything here is independent of the generating-function machinery, so it
can serve as an oracle for the counting and moment formulas.  The key fact
is the bijection between labeled trees on 1..n and codes of length n-2 over
1..n, under which degree(v) = 1 + multiplicity of v in the code.  Exhaustive
enumeration therefore never builds trees at all: it walks the code space and
reads degrees straight off the multiplicities.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .counting import DegreeRule
from .errors import GuardLimitError

# 9^7 ~ 4.8M codes keeps a full enumeration run near a minute; joint
# statistics store per-code work so they stop one size earlier.
ORACLE_MAX_N = 9
STATS_MAX_N = 8


@dataclass(frozen=True)
class LabeledTree:
    """A tree on vertices 1..n, stored as a sorted tuple of sorted edge pairs."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise ValueError("a tree needs at least one vertex")
        canon = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", canon)
        if len(canon) != n - 1:
            raise ValueError(f"a tree on {n} vertices has {n - 1} edges, got {len(canon)}")
        parent = list(range(n + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in canon:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) out of label range 1..{n}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError(f"edge ({u},{v}) closes a cycle")
            parent[ru] = rv

    def degrees(self) -> list[int]:
        """Degree of vertex v at index v-1."""
        out = [0] * self.n
        for u, v in self.edges:
            out[u - 1] += 1
            out[v - 1] += 1
        return out


@dataclass(frozen=True)
class PruferSequence:
    """A length-(n-2) code over labels 1..n."""

    n: int
    code: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("codes are defined for n >= 2")
        object.__setattr__(self, "code", tuple(self.code))
        if len(self.code) != self.n - 2:
            raise ValueError(f"code for n={self.n} must have length {self.n - 2}")
        if any(not 1 <= x <= self.n for x in self.code):
            raise ValueError("code labels out of range")


def decode(s: PruferSequence) -> LabeledTree:
    """Standard decode: repeatedly attach the smallest unused leaf to the next code symbol."""
    n = s.n
    degree = [1] * (n + 1)
    for x in s.code:
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in s.code:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return LabeledTree(n, tuple(edges))


def encode(t: LabeledTree) -> PruferSequence:
    """Inverse of decode: strip the smallest leaf and record its neighbor, n-2 times."""
    n = t.n
    if n < 2:
        raise ValueError("codes are defined for n >= 2")
    adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for u, v in t.edges:
        adj[u].add(v)
        adj[v].add(u)
    leaves = [v for v in range(1, n + 1) if len(adj[v]) == 1]
    heapq.heapify(leaves)
    code = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        (nbr,) = adj[leaf]
        code.append(nbr)
        adj[nbr].discard(leaf)
        adj[leaf].clear()
        if len(adj[nbr]) == 1:
            heapq.heappush(leaves, nbr)
    return PruferSequence(n, tuple(code))


@lru_cache(maxsize=None)
def _degree_tally(n: int) -> dict[tuple[int, ...], int]:
    """Walk all n^(n-2) codes; tally degree-count vectors.

    Key: (number of vertices of degree 1, ..., of degree n-1); value: how
    many codes produce it.  Cached because several oracle calls at the same
    n would otherwise repeat the full enumeration.
    """
    tally: dict[tuple[int, ...], int] = {}
    for code in product(range(n), repeat=n - 2):
        mult = [0] * n
        for x in code:
            mult[x] += 1
        key = [0] * (n - 1)
        for m in mult:
            key[m] += 1
        k = tuple(key)
        tally[k] = tally.get(k, 0) + 1
    return tally


def oracle_count(rule: DegreeRule, n: int) -> int:
    """Count trees satisfying the rule by exhausting every Prüfer code."""
    if not 2 <= n <= ORACLE_MAX_N:
        raise GuardLimitError(f"exhaustive enumeration is guarded to 2 <= n <= {ORACLE_MAX_N}")
    total = 0
    for key, cnt in _degree_tally(n).items():
        if all(cnt_d == 0 or rule.admits(d) for d, cnt_d in enumerate(key, start=1)):
            total += cnt
    return total


def oracle_degree_statistics(n: int, d_list: list[int]) -> dict[tuple[int, ...], int]:
    """Exact joint law of the degree-count variables (X_d for d in d_list).

    Returns a map from value tuples (x_{d_1}, ..., x_{d_k}) to the number of
    trees attaining them; the counts sum to n^(n-2).
    """
    if not 2 <= n <= STATS_MAX_N:
        raise GuardLimitError(f"joint statistics are guarded to 2 <= n <= {STATS_MAX_N}")
    if not d_list or any(d < 1 for d in d_list):
        raise ValueError("d_list must be nonempty positive degrees")
    out: dict[tuple[int, ...], int] = {}
    for key, cnt in _degree_tally(n).items():
        val = tuple(key[d - 1] if d - 1 < len(key) else 0 for d in d_list)
        out[val] = out.get(val, 0) + cnt
    return out


def sample_tree(n: int, seed: int) -> LabeledTree:
    """Uniform random labeled tree: decode a uniform random code.

    Uses the stdlib Mersenne Twister with explicit seeding, so a given
    (n, seed) pair produces the same tree on every platform.
    """
    if n < 2:
        raise ValueError("sampling needs n >= 2")
    rng = random.Random(seed)
    code = tuple(rng.randint(1, n) for _ in range(n - 2))
    return decode(PruferSequence(n, code))
