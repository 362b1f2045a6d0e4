"""Explicit-constant machinery: admissibility of (M, s, delta), the divisor
constant c_delta, the derived constants a_delta, ell, b_M, the n-threshold
predicate, and the per-family probability bound functions.

All real evaluation is done in mpmath at >= 50 significant digits; rational
quantities stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .combinatorics import trial_count  # re-exported; ceil(ln(1/eps)/p)
from .families import LineParams, d_count

mpmath.mp.dps = 60

__all__ = [
    "BoundParams",
    "FamilyBoundReport",
    "validate_params",
    "c_delta_search",
    "a_delta_eval",
    "b_M_eval",
    "n_threshold",
    "n_satisfies",
    "family_bounds",
    "trial_count",
]


def _mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)
    return mpmath.mpf(x)


@dataclass(frozen=True)
class BoundParams:
    """An admissible parameter tuple with its derived constants."""

    M: int
    s: Fraction
    delta: Fraction
    c_delta: float
    a_delta: float
    ell: Fraction
    b_M: float
    eps: float
    r: int


@dataclass(frozen=True)
class FamilyBoundReport:
    """Per-family probability ceilings at a concrete n, with flags saying
    which of the three n-threshold hypotheses hold there."""

    n: int
    bounds: dict
    success_floor: float
    mcyc_ceiling: float
    hypothesis_flags: dict


def ell_value(M: int, s: Fraction, delta: Fraction) -> Fraction:
    """ell = min{M(1-s), 3-2s-2delta, 1+s-3delta, 2s-2delta}, exact."""
    s, delta = Fraction(s), Fraction(delta)
    return min(
        M * (1 - s),
        3 - 2 * s - 2 * delta,
        1 + s - 3 * delta,
        2 * s - 2 * delta,
    )


def validate_params(M: int, s: Fraction, delta: Fraction) -> dict:
    """Check M >= 4, the (s, delta) window 0 < delta < min{1-s, s/3, s-1/2}
    with 1/2 < s < (M-1)/M, and ell > 1.  Violations are returned as data."""
    s, delta = Fraction(s), Fraction(delta)
    violations = []
    if M < 4:
        violations.append(f"M = {M} < 4")
    if not Fraction(1, 2) < s:
        violations.append(f"s = {s} <= 1/2")
    if not s < Fraction(M - 1, M):
        violations.append(f"s = {s} >= (M-1)/M = {Fraction(M - 1, M)}")
    dmax = min(1 - s, s / 3, s - Fraction(1, 2))
    if not 0 < delta < dmax:
        violations.append(f"delta = {delta} outside (0, {dmax})")
    ell = ell_value(M, s, delta)
    if not ell > 1:
        violations.append(f"ell = {ell} <= 1")
    return {"ok": not violations, "violations": violations, "ell": ell}


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def c_delta_search(delta: Fraction, x_limit: int = 10**9) -> tuple[float, int]:
    """Certified lower bound on sup d(x)/x^delta: the max of the ratio over
    integers up to x_limit with non-increasing prime-exponent signature
    (any x shares its divisor count with such a witness of equal or smaller
    size).  Returns (bound, argmax x); never claimed to be the supremum."""
    delta = Fraction(delta)
    if not 0 < delta <= 1:
        raise ValueError("need 0 < delta <= 1")
    if x_limit > 10**9:
        raise ValueError("x_limit capped at 1e9")
    d = _mpf(delta)
    best = (mpmath.mpf(1), 1)  # x = 1: d(1)/1 = 1

    def rec(i: int, x: int, dx: int, max_exp: int):
        nonlocal best
        ratio = dx / mpmath.mpf(x) ** d
        if ratio > best[0]:
            best = (ratio, x)
        if i >= len(_PRIMES):
            return
        p = _PRIMES[i]
        val = x
        for e in range(1, max_exp + 1):
            if val > x_limit // p:
                break
            val *= p
            rec(i + 1, val, dx * (e + 1), e)

    rec(0, 1, 1, 64)
    return float(best[0]), best[1]


def a_delta_eval(
    c_delta: float,
    s: Fraction,
    delta: Fraction,
    variant: str = "eq5-at-150",
    rm: int | None = None,
) -> dict:
    """a_delta = (5/4)(1 + 3 c/q + (c/q)^2) with q = 150^(s-delta) or
    rm^(s-delta); variant 'fixed-25/4' returns 25/4 together with the truth
    value of its validity condition rm >= c_delta^(1/(s-delta))."""
    s, delta = Fraction(s), Fraction(delta)
    if not s > delta:
        raise ValueError("need s > delta")
    exp = _mpf(s - delta)
    if variant == "eq5-at-150":
        q = mpmath.mpf(150) ** exp
    elif variant == "custom-rm":
        if rm is None:
            raise ValueError("variant 'custom-rm' needs rm")
        q = mpmath.mpf(rm) ** exp
    elif variant == "fixed-25/4":
        cond = None
        if rm is not None:
            cond = mpmath.mpf(rm) >= mpmath.mpf(c_delta) ** (1 / exp)
        return {"value": 6.25, "variant": variant, "condition_rm_large_enough": cond}
    else:
        raise ValueError(f"unknown variant {variant!r}")
    ratio = mpmath.mpf(c_delta) / q
    val = mpmath.mpf(5) / 4 * (1 + 3 * ratio + ratio**2)
    return {"value": float(val), "variant": variant, "condition_rm_large_enough": None}


def b_M_eval(
    M: int,
    s: Fraction,
    delta: Fraction,
    r: int,
    c_delta: float,
    a_delta: float,
) -> float:
    """b_M = (33/8)^M + 72 a c^2 r^(2s+2d) + 6.24 a c^3 r^(3d)
    + c^2 / r^(2s-2d) + (31 / r^(1-s))^M, in high precision."""
    s, delta = Fraction(s), Fraction(delta)
    sm, dm = _mpf(s), _mpf(delta)
    rr = mpmath.mpf(r)
    c = mpmath.mpf(c_delta)
    a = mpmath.mpf(a_delta)
    val = (
        (mpmath.mpf(33) / 8) ** M
        + 72 * a * c**2 * rr ** (2 * sm + 2 * dm)
        + mpmath.mpf("6.24") * a * c**3 * rr ** (3 * dm)
        + c**2 / rr ** (2 * sm - 2 * dm)
        + (31 / rr ** (1 - sm)) ** M
    )
    return float(val)


def n_satisfies(n: int, s: Fraction, r: int, ell: Fraction, b_M: float, eps: float) -> dict:
    """Truth values of the three n-constraints: 12(rn)^s + 6 <= n,
    (rn)^s log n <= n, and n >= (10 b_M / eps)^(1/(ell-1)).

    The first is exact (integer cross-powers); the others use interval
    arithmetic so a True flag is certified.
    """
    s = Fraction(s)
    p, q = s.numerator, s.denominator
    rn = r * n
    first = n >= 6 and 12**q * rn**p <= (n - 6) ** q
    ni = mpmath.iv.mpf(n)
    rni = mpmath.iv.mpf(rn)
    second_iv = rni ** _mpf(s) * mpmath.iv.log(ni)
    second = second_iv.b <= n
    thr = _threshold_iv(ell, b_M, eps)
    third = mpmath.iv.mpf(n).a >= thr.b
    return {"size": first, "log": second, "threshold": third}


def _threshold_iv(ell: Fraction, b_M: float, eps: float):
    base = 10 * mpmath.iv.mpf(mpmath.mpf(b_M)) / mpmath.iv.mpf(mpmath.mpf(eps))
    expo = 1 / _mpf(Fraction(ell) - 1)
    return base ** mpmath.iv.mpf(expo)


def n_threshold(ell: Fraction, b_M: float, eps: float) -> float:
    """log10 of (10 b_M / eps)^(1/(ell-1)), the third constraint's cutoff."""
    val = (10 * mpmath.mpf(b_M) / mpmath.mpf(eps)) ** (1 / _mpf(Fraction(ell) - 1))
    return float(mpmath.log10(val))


def family_bounds(
    n: int,
    k: int,
    M: int,
    s: Fraction,
    delta: Fraction,
    a_delta: float,
    line: LineParams,
) -> FamilyBoundReport:
    """The five per-family probability ceilings at degree n, plus the
    acceptance floor ((n-2)/n)^M and the bad-k-subset-proportion ceiling
    sqrt(8k) (3k/4m)^ceil(k/2)."""
    s = Fraction(s)
    r, m = line.r, line.m
    rm = r * m
    drm = d_count(rm)
    sm = _mpf(s)
    nn = mpmath.mpf(n)
    rn = mpmath.mpf(r * n)
    a = mpmath.mpf(a_delta)
    bounds_ = {
        "R": float((mpmath.mpf(33) / (8 * nn ** (1 - sm))) ** M),
        "S0": float(72 * a * drm**2 * mpmath.mpf(r) ** (2 * sm) / nn ** (3 - 2 * sm)),
        "S1plus": float(mpmath.mpf("6.24") * a * drm**3 / nn ** (1 + sm)),
        "Sge2": float(drm**2 / rn ** (2 * sm)),
        "S1minus": float((31 / rn ** (1 - sm)) ** M),
    }
    success_floor = float(((nn - 2) / nn) ** M)
    mcyc_ceiling = float(
        mpmath.sqrt(8 * k) * (mpmath.mpf(3 * k) / (4 * m)) ** ((k + 1) // 2)
    )
    ell = ell_value(M, s, delta)
    flags = n_satisfies(n, s, r, ell, 1.0, 1.0)
    # the third flag needs b_M; callers wanting it should use n_satisfies directly
    flags.pop("threshold")
    return FamilyBoundReport(n, bounds_, success_floor, mcyc_ceiling, flags)
