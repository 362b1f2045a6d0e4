"""The induced action of a degree-n permutation on k-element subsets.

Two independent orbit-length engines: capped iterated tracing, and an exact
engine combining per-cycle rotation periods by lcm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .perms import DegreeMismatchError, Permutation


class ExceedsCap:
    """Sentinel: the traced orbit is longer than the cap."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ExceedsCap"


EXCEEDS_CAP = ExceedsCap()


class EnumerationBudgetError(ValueError):
    """Raised when an exhaustive count would exceed the configured budget;
    use a Monte Carlo mode instead."""


DEFAULT_ENUMERATION_BUDGET = 10**7


@dataclass(frozen=True)
class KSubset:
    """A sorted k-element subset of {0..n-1}."""

    n: int
    points: tuple[int, ...]

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not 1 <= len(pts) <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={len(pts)}, n={self.n}")
        if any(not 0 <= x < self.n for x in pts):
            raise ValueError(f"points {pts!r} out of range for n={self.n}")
        if any(a >= b for a, b in zip(pts, pts[1:])):
            raise ValueError(f"points {pts!r} not strictly increasing")

    @property
    def k(self) -> int:
        return len(self.points)

    @classmethod
    def of(cls, n: int, points: Iterable[int]) -> "KSubset":
        return cls(n, tuple(sorted(points)))

    @classmethod
    def parse(cls, text: str, n: int) -> "KSubset":
        """Parse 1-based text form ``{1,4,7}``."""
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ValueError(f"malformed subset {text!r}")
        try:
            vals = [int(tok) for tok in text[1:-1].split(",")]
        except ValueError as exc:
            raise ValueError(f"malformed subset {text!r}") from exc
        return cls.of(n, (v - 1 for v in vals))

    def __str__(self) -> str:
        return "{" + ",".join(str(x + 1) for x in self.points) + "}"


def image(gamma: KSubset, g: Permutation) -> KSubset:
    """Pointwise image of the subset, re-sorted."""
    if gamma.n != g.n:
        raise DegreeMismatchError(
            f"subset degree {gamma.n} does not match permutation degree {g.n}"
        )
    return KSubset(gamma.n, tuple(sorted(g.images[x] for x in gamma.points)))


def cycle_length_trace(gamma: KSubset, g: Permutation, cap: int):
    """Smallest t >= 1 with g^t fixing the subset, if t <= cap; else EXCEEDS_CAP.

    Costs O(n) image work per step, at most cap steps.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    imgs = g.images
    start = gamma.points
    cur = start
    for t in range(1, cap + 1):
        cur = tuple(sorted(imgs[x] for x in cur))
        if cur == start:
            return t
    return EXCEEDS_CAP


def rotation_period(cycle_length: int, positions) -> int:
    """Smallest divisor d of cycle_length with positions + d == positions mod t.

    Checks divisors in increasing order; empty and full sets give 1.
    """
    t = cycle_length
    pos = frozenset(positions)
    if any(not 0 <= x < t for x in pos):
        raise ValueError("positions must be residues mod cycle_length")
    kc = len(pos)
    for d in sorted(_divisors(t)):
        # a d-periodic set must distribute evenly over the t//d shift-classes
        if kc * d % t != 0:
            continue
        if all((x + d) % t in pos for x in pos):
            return d
    return t


def cycle_length_exact(gamma: KSubset, g: Permutation) -> int:
    """Orbit length of the subset under <g>: lcm of per-cycle rotation periods."""
    if gamma.n != g.n:
        raise DegreeMismatchError(
            f"subset degree {gamma.n} does not match permutation degree {g.n}"
        )
    pts = set(gamma.points)
    result = 1
    for cyc in g.cycles():
        hits = pts.intersection(cyc)
        if not hits:
            continue
        index = {pt: i for i, pt in enumerate(cyc)}
        period = rotation_period(len(cyc), {index[p] for p in hits})
        result = math.lcm(result, period)
    return result


def random_ksubset(n: int, k: int, rng) -> KSubset:
    """Uniform k-subset of {0..n-1} via partial shuffle."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return KSubset(n, tuple(sorted(rng.sample(range(n), k))))


def all_ksubsets(n: int, k: int) -> Iterable[KSubset]:
    for pts in combinations(range(n), k):
        yield KSubset(n, pts)


def count_bad_ksubsets(
    g: Permutation,
    params,
    k: int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    good: bool = False,
) -> tuple[int, int]:
    """Exact count of k-subsets whose orbit length is not r0*m for any r0 | r.

    Returns (bad, total) with total = C(n, k); with good=True the first
    component counts the complement instead.
    """
    n, m, r = params.n, params.m, params.r
    if g.n != n:
        raise DegreeMismatchError(f"degree {g.n} does not match line degree {n}")
    total = math.comb(n, k)
    if total > budget:
        raise EnumerationBudgetError(
            f"C({n},{k}) = {total} exceeds budget {budget}; use Monte Carlo mode"
        )
    lengths = _orbit_length_counts(g, k)
    good_count = sum(
        cnt for length, cnt in lengths.items() if length % m == 0 and r % (length // m) == 0
    )
    bad = total - good_count
    return (good_count if good else bad), total


def good_ksubset_fraction(g: Permutation, k: int, m: int, r: int):
    """Exact fraction of k-subsets with orbit length r0*m, r0 | r (Fraction)."""
    from fractions import Fraction

    total = math.comb(g.n, k)
    lengths = _orbit_length_counts(g, k)
    good_count = sum(
        cnt for length, cnt in lengths.items() if length % m == 0 and r % (length // m) == 0
    )
    return Fraction(good_count, total)


def _orbit_length_counts(g: Permutation, k: int) -> dict[int, int]:
    """Multiset {orbit length: number of k-subsets}, by per-cycle periods.

    For each g-cycle of length t, the number of j-subsets of the cycle with
    rotation period exactly d (d | t) follows from inclusion over divisors:
    a j-subset has period dividing d iff d | t, j*d % t == 0, giving
    C(d, j*d//t) choices.  Combine cycles by convolving on (size used is
    implicit) the lcm of periods, tracking counts per lcm value.
    """
    per_cycle: list[dict[int, dict[int, int]]] = []
    for cyc in g.cycles():
        t = len(cyc)
        divs = sorted(_divisors(t))
        # at_most[d][j] = number of j-subsets with period dividing d
        at_most = {d: {} for d in divs}
        for d in divs:
            for j in range(0, t + 1):
                if j * d % t == 0:
                    at_most[d][j] = math.comb(d, j * d // t)
        exact: dict[int, dict[int, int]] = {d: {} for d in divs}
        for d in divs:
            for j, cnt in at_most[d].items():
                sub = sum(
                    exact[e].get(j, 0) for e in divs if e < d and d % e == 0
                )
                val = cnt - sub
                if val:
                    exact[d][j] = val
        per_cycle.append(exact)

    # state: {(points used, running lcm): count}
    state: dict[tuple[int, int], int] = {(0, 1): 1}
    for exact in per_cycle:
        nxt: dict[tuple[int, int], int] = {}
        for (used, cur_lcm), cnt in state.items():
            for d, by_j in exact.items():
                for j, ways in by_j.items():
                    if used + j > k:
                        continue
                    key = (used + j, math.lcm(cur_lcm, d) if j else cur_lcm)
                    nxt[key] = nxt.get(key, 0) + cnt * ways
        state = nxt
    out: dict[int, int] = {}
    for (used, length), cnt in state.items():
        if used == k:
            out[length] = out.get(length, 0) + cnt
    return out


def _divisors(x: int) -> list[int]:
    out = []
    i = 1
    while i * i <= x:
        if x % i == 0:
            out.append(i)
            if i != x // i:
                out.append(x // i)
        i += 1
    return out
