"""Exact counters and checkable inequalities for the cycle-structure analysis:
a binomial product inequality, counts of subset-unions of partition parts,
rotation-defective subset counts on cycles, and assorted numeric lemmas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import mpmath

mpmath.mp.dps = 60


@dataclass(frozen=True)
class SetPartition:
    """A partition of a u-set into anonymous parts, all of size >= 2."""

    part_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(sorted(self.part_sizes))
        object.__setattr__(self, "part_sizes", sizes)
        if not sizes or any(p < 2 for p in sizes):
            raise ValueError("every part must have size at least 2")

    @property
    def u(self) -> int:
        return sum(self.part_sizes)


@dataclass(frozen=True)
class Verdict:
    """One checked inequality instance."""

    lemma_id: str
    lhs: object
    rhs: object
    holds: bool


def check_binom_lemma(a: int, c: int, ell: int) -> Verdict:
    """C(ca-1, a-1) * C(c, ell) <= C(ca, ell*a), exactly in big integers."""
    if a <= 1 or not 1 <= ell < c:
        raise ValueError(f"need a > 1 and 1 <= ell < c, got a={a}, c={c}, ell={ell}")
    lhs = math.comb(c * a - 1, a - 1) * math.comb(c, ell)
    rhs = math.comb(c * a, ell * a)
    return Verdict("binom", lhs, rhs, lhs <= rhs)


def npk_count(P: SetPartition, k0: int) -> int:
    """Number of k0-subsets of the u-set that are unions of whole parts.

    Parts are distinguishable subsets, so this is the coefficient of x^k0
    in prod(1 + x^size); computed by DP over parts.
    """
    if not 2 <= k0 <= P.u:
        raise ValueError(f"need 2 <= k0 <= u, got k0={k0}, u={P.u}")
    coeffs = [0] * (k0 + 1)
    coeffs[0] = 1
    for size in P.part_sizes:
        for j in range(k0, size - 1, -1):
            coeffs[j] += coeffs[j - size]
    return coeffs[k0]


def npk_bounds(u: int, k0: int) -> tuple[int, int | None, Fraction]:
    """The three ceilings on npk_count: C(floor(u/2), floor(k0/2)); the
    refinement C((u-2)/2, (k0-1)/2) when k0 odd and u even; and 1 if k0 = u
    else C(u, k0)/(u-1) as an exact rational."""
    if not 2 <= k0 <= u:
        raise ValueError(f"need 2 <= k0 <= u, got k0={k0}, u={u}")
    b1 = math.comb(u // 2, k0 // 2)
    b2 = math.comb((u - 2) // 2, (k0 - 1) // 2) if (k0 % 2 == 1 and u % 2 == 0) else None
    b3 = Fraction(1) if k0 == u else Fraction(math.comb(u, k0), u - 1)
    return b1, b2, b3


def sigma_cycle(t: int, k0: int, p: int) -> int:
    """Number of k0-subsets of a t-cycle whose rotation period misses the
    p-part of t: C(t/p, k0/p) if p | k0, else 0.

    The qualifying subsets are exactly the unions of orbits of the
    order-p rotation subgroup.
    """
    if t % p != 0:
        raise ValueError(f"p={p} must divide t={t}")
    if not 0 < k0 <= t:
        raise ValueError(f"need 1 <= k0 <= t, got k0={k0}")
    if k0 % p != 0:
        return 0
    return math.comb(t // p, k0 // p)


def sigma_cycle_brute(t: int, k0: int, p: int) -> int:
    """Enumeration cross-check for sigma_cycle (t <= 20): count k0-subsets of
    Z_t fixed by rotation by t/p, i.e. with period dividing t/p."""
    if t > 20:
        raise ValueError("brute force limited to t <= 20")
    shift = t // p
    count = 0
    for pts in combinations(range(t), k0):
        sset = set(pts)
        if all((x + shift) % t in sset for x in pts):
            count += 1
    return count


def _t_part(t: int, p: int) -> int:
    tp = 1
    while t % p == 0:
        t //= p
        tp *= p
    return tp


def sigma_Sigma(
    cycle_lengths: Sequence[int],
    rm: int,
    k0: int,
    budget: int = 10**7,
) -> int:
    """Exact count of k0-subsets of the union of the given cycles whose
    orbit length under the underlying permutation divides rm.

    Every listed cycle length must NOT divide rm (these are the cycles
    outside Delta).  Counted by enumerating subsets distributed across
    cycles and testing the lcm of per-cycle rotation periods.
    """
    from .ksets import rotation_period

    u = sum(cycle_lengths)
    if any(rm % t == 0 for t in cycle_lengths):
        raise ValueError("every cycle length must fail to divide rm")
    if not 1 <= k0 <= u:
        raise ValueError(f"need 1 <= k0 <= u, got k0={k0}, u={u}")
    if math.comb(u, k0) > budget:
        raise ValueError(f"C({u},{k0}) exceeds budget {budget}")

    # per cycle: {points taken j: {period d: count}} restricted to d | rm paths
    per_cycle = []
    for t in cycle_lengths:
        table: dict[int, dict[int, int]] = {}
        for j in range(0, min(t, k0) + 1):
            for pts in combinations(range(t), j):
                d = rotation_period(t, pts)
                table.setdefault(j, {}).setdefault(d, 0)
                table[j][d] += 1
        per_cycle.append(table)

    state: dict[tuple[int, int], int] = {(0, 1): 1}
    for table in per_cycle:
        nxt: dict[tuple[int, int], int] = {}
        for (used, cur), cnt in state.items():
            for j, by_d in table.items():
                if used + j > k0:
                    continue
                for d, ways in by_d.items():
                    length = math.lcm(cur, d)
                    if rm % length != 0:
                        continue
                    key = (used + j, length)
                    nxt[key] = nxt.get(key, 0) + cnt * ways
        state = nxt
    return sum(cnt for (used, _), cnt in state.items() if used == k0)


def _mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)
    return mpmath.mpf(x)


def check_inequality(lemma_id: str, **args) -> Verdict:
    """Dispatch for the numeric lemmas.  Exact rationals where possible,
    interval arithmetic (directed rounding) where exponents are irrational,
    so a True verdict is never a float coincidence."""
    checker = _CHECKERS.get(lemma_id)
    if checker is None:
        raise ValueError(f"unknown lemma id {lemma_id!r}")
    return checker(**args)


def _check_z_a(d: int, n: int, k: int) -> Verdict:
    # C(d,k) <= (d/n)^k C(n,k) for 2 <= k <= d < n
    if not 2 <= k <= d < n:
        raise ValueError("need 2 <= k <= d < n")
    lhs = Fraction(math.comb(d, k))
    rhs = Fraction(d, n) ** k * math.comb(n, k)
    return Verdict("lem:Z-a", lhs, rhs, lhs <= rhs)


def _check_z_b(n: int, k: int) -> Verdict:
    # C(floor(n/2), floor(k/2)) < 2 C(n,k) (3k/4n)^ceil(k/2) for 2 <= k <= 2n/3
    if not (2 <= k and 3 * k <= 2 * n):
        raise ValueError("need 2 <= k <= 2n/3")
    lhs = Fraction(math.comb(n // 2, k // 2))
    rhs = 2 * math.comb(n, k) * Fraction(3 * k, 4 * n) ** ((k + 1) // 2)
    return Verdict("lem:Z-b", lhs, rhs, lhs < rhs)


def _check_zz(d: int, k: int, t: int, a: Fraction) -> Verdict:
    # (d+t)(d+t-1)...(d+t-k+1) < d(d-1)...(d-k+1) (1 + (1+a)^k t / (a(d-k+1)))
    # for positive integers d, k, t with k <= d and t/(d-k+1) <= a
    a = Fraction(a)
    if not (d >= 1 and k >= 1 and t >= 1 and k <= d and a > 0):
        raise ValueError("need positive d, k, t with k <= d and a > 0")
    if Fraction(t, d - k + 1) > a:
        raise ValueError("need t/(d-k+1) <= a")
    lhs = Fraction(math.prod(range(d + t - k + 1, d + t + 1)))
    falling = math.prod(range(d - k + 1, d + 1))
    rhs = falling * (1 + (1 + a) ** k * t / (a * (d - k + 1)))
    return Verdict("lem:ZZ", lhs, rhs, lhs < rhs)


def _check_simple(n: int, r: int, s: Fraction, t: int = 1) -> Verdict:
    # hypothesis: 1/2 < s < 1 and 12 (rn)^s + 6 <= n (exact cross-power test);
    # conclusions checked: (rn)^s/n < 1/12; n >= 156; the t-shift comparison
    # 2(rn)^s - t > ((24-t)/12)(rn)^s; and n >= 1746 when s = 2/3
    s = Fraction(s)
    if not Fraction(1, 2) < s < 1:
        raise ValueError("need 1/2 < s < 1")
    if t < 1:
        raise ValueError("need t >= 1")
    p, q = s.numerator, s.denominator
    rn = r * n
    if n < 6 or 12**q * rn**p > (n - 6) ** q:
        raise ValueError(f"hypothesis 12(rn)^s + 6 <= n fails at n={n}, r={r}, s={s}")
    lhs = 12**q * rn**p
    rhs = n**q
    holds = lhs < rhs and n >= 156
    # 2(rn)^s - t > ((24-t)/12)(rn)^s  <=>  (t/12)(rn)^s > t  <=>  (rn)^p > 12^q
    holds = holds and rn**p > 12**q
    if s == Fraction(2, 3):
        holds = holds and n >= 1746
    return Verdict("lem:simple", lhs, rhs, holds)


def _check_ns_a(x: Fraction) -> Verdict:
    # x 2^{-x} < 1/(4x) for x > 12; interval arithmetic for irrational powers
    x = Fraction(x)
    if x <= 12:
        raise ValueError("need x > 12")
    xi = mpmath.iv.mpf(_mpf(x))
    lhs = xi * (mpmath.iv.mpf(2) ** (-xi))
    rhs = 1 / (4 * xi)
    return Verdict("lem:ns-a", lhs, rhs, lhs.b < rhs.a)


def _check_ns_b(x: Fraction) -> Verdict:
    # (11/12)^x < 5/x for x > 12
    x = Fraction(x)
    if x <= 12:
        raise ValueError("need x > 12")
    xi = mpmath.iv.mpf(_mpf(x))
    lhs = (mpmath.iv.mpf(11) / 12) ** xi
    rhs = 5 / xi
    return Verdict("lem:ns-b", lhs, rhs, lhs.b < rhs.a)


def _check_eps(eps: Fraction, p: Fraction) -> Verdict:
    # with N = ceil(ln(1/eps)/p): (1-p)^N <= eps
    eps, p = Fraction(eps), Fraction(p)
    if not (0 < eps < 1 and 0 < p < 1):
        raise ValueError("need 0 < eps < 1 and 0 < p < 1")
    N = trial_count(eps, p)
    lhs = (1 - _to_iv(p)) ** N
    rhs = _to_iv(eps)
    return Verdict("lem:eps", lhs, rhs, lhs.b <= rhs.a or (1 - p) ** N <= eps)


def trial_count(eps: Fraction, p: Fraction) -> int:
    """ceil(ln(1/eps)/p), certified by interval arithmetic at the boundary."""
    eps, p = Fraction(eps), Fraction(p)
    val = mpmath.iv.log(1 / _to_iv(eps)) / _to_iv(p)
    lo, hi = mpmath.ceil(val.a), mpmath.ceil(val.b)
    if lo != hi:
        raise ArithmeticError("interval too wide to certify the ceiling")
    return int(lo)


def _to_iv(x: Fraction):
    return mpmath.iv.mpf(x.numerator) / mpmath.iv.mpf(x.denominator)


_CHECKERS = {
    "lem:Z-a": _check_z_a,
    "lem:Z-b": _check_z_b,
    "lem:ZZ": _check_zz,
    "lem:simple": _check_simple,
    "lem:ns-a": _check_ns_a,
    "lem:ns-b": _check_ns_b,
    "lem:eps": _check_eps,
}

LEMMA_IDS = tuple(_CHECKERS)


def partitions_with_min_part(u: int, min_part: int = 2) -> list[tuple[int, ...]]:
    """All partitions of u into parts >= min_part, non-decreasing order."""
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, smallest: int, acc: list[int]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(smallest, remaining + 1):
            if remaining - part != 0 and remaining - part < smallest:
                continue
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(u, min_part, [])
    return out
