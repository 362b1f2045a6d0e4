"""Parameter lines, element families, and exact small-n oracles.

For a group G in {Sym(n), Alt(n)} and a target cycle length m with parameter
r, elements split into: N (contains an m-cycle), the five families R, S0,
S1+, S1-, S>=2 partitioning {g outside N : m | o(g)}, and Other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations as _itertools_permutations

from .perms import ALT, SYM, Permutation, enumerate_group

LONG_CYCLE = "long-cycle"
TRANSPOSITION = "transposition"
THREE_CYCLE = "three-cycle"

FAMILY_N = "N"
FAMILY_R = "R"
FAMILY_S0 = "S0"
FAMILY_S1PLUS = "S1plus"
FAMILY_S1MINUS = "S1minus"
FAMILY_SGE2 = "Sge2"
FAMILY_OTHER = "Other"

ALL_FAMILIES = (
    FAMILY_N,
    FAMILY_R,
    FAMILY_S0,
    FAMILY_S1PLUS,
    FAMILY_S1MINUS,
    FAMILY_SGE2,
    FAMILY_OTHER,
)


@dataclass(frozen=True)
class LineParams:
    """One parameter line: group, degree, target cycle length m, multiplier r,
    the exact rational rho with |N_good|/|G| = rho/m, and the element type
    obtained by powering."""

    line: int
    group: str
    n: int
    m: int
    r: int
    rho: Fraction
    target: str

    def record(self) -> dict:
        """Flat serializable record."""
        return {
            "line": self.line,
            "group": self.group,
            "n": self.n,
            "m": self.m,
            "r": self.r,
            "rho_num": self.rho.numerator,
            "rho_den": self.rho.denominator,
            "target": self.target,
        }


@dataclass(frozen=True)
class DeltaSigma:
    """Delta: union of g-cycles of length dividing rm; Sigma: the rest."""

    delta: frozenset[int]
    sigma: frozenset[int]

    @property
    def v(self) -> int:
        return len(self.delta)

    @property
    def u(self) -> int:
        return len(self.sigma)


def line_params(group: str, n: int, goal: str) -> LineParams:
    """The unique applicable parameter line for (group, n, goal).

    Requires n >= 7 (lines stay distinct and m >= 2 on every reachable row;
    the exact-oracle worked cases use n = 7).
    """
    if n < 7:
        raise ValueError(f"need n >= 7, got {n}")
    if group == SYM and goal == LONG_CYCLE:
        return LineParams(1, SYM, n, n, 1, Fraction(1), "n-cycle")
    if group == SYM and goal == TRANSPOSITION:
        if n % 2 == 1:
            return LineParams(2, SYM, n, n - 2, 2, Fraction(1), "2-cycle")
        return LineParams(3, SYM, n, n - 3, 2, Fraction(2, 3), "2-cycle")
    if group == ALT and goal == LONG_CYCLE:
        if n % 2 == 1:
            return LineParams(4, ALT, n, n, 1, Fraction(1), "n-cycle")
        return LineParams(5, ALT, n, n - 1, 1, Fraction(1), "(n-1)-cycle")
    if group == ALT and goal == THREE_CYCLE:
        mod = n % 6
        if mod in (2, 4):
            return LineParams(6, ALT, n, n - 3, 3, Fraction(1), "3-cycle")
        if mod in (3, 5):
            return LineParams(7, ALT, n, n - 4, 3, Fraction(3, 4), "3-cycle")
        if mod == 0:
            return LineParams(8, ALT, n, n - 5, 3, Fraction(7, 20), "3-cycle")
        return LineParams(9, ALT, n, n - 6, 3, Fraction(9, 40), "3-cycle")
    raise ValueError(f"incompatible group/goal pair ({group!r}, {goal!r})")


def line_params_by_line(line: int, n: int) -> LineParams:
    """Line number -> params, validating the line's n condition."""
    table = {
        1: (SYM, LONG_CYCLE, lambda n: True),
        2: (SYM, TRANSPOSITION, lambda n: n % 2 == 1),
        3: (SYM, TRANSPOSITION, lambda n: n % 2 == 0),
        4: (ALT, LONG_CYCLE, lambda n: n % 2 == 1),
        5: (ALT, LONG_CYCLE, lambda n: n % 2 == 0),
        6: (ALT, THREE_CYCLE, lambda n: n % 6 in (2, 4)),
        7: (ALT, THREE_CYCLE, lambda n: n % 6 in (3, 5)),
        8: (ALT, THREE_CYCLE, lambda n: n % 6 == 0),
        9: (ALT, THREE_CYCLE, lambda n: n % 6 == 1),
    }
    if line not in table:
        raise ValueError(f"line must be 1..9, got {line}")
    group, goal, cond = table[line]
    if not cond(n):
        raise ValueError(f"n={n} does not satisfy line {line}'s congruence condition")
    return line_params(group, n, goal)


def in_group(g: Permutation, group: str) -> bool:
    return group == SYM or g.is_even()


def delta_sigma(g: Permutation, params: LineParams) -> DeltaSigma:
    """Split the points by whether their g-cycle length divides rm."""
    if g.n != params.n:
        raise ValueError(f"degree {g.n} does not match line degree {params.n}")
    rm = params.r * params.m
    delta: set[int] = set()
    sigma: set[int] = set()
    for cyc in g.cycles():
        (delta if rm % len(cyc) == 0 else sigma).update(cyc)
    return DeltaSigma(frozenset(delta), frozenset(sigma))


def in_N(g: Permutation, params: LineParams) -> bool:
    """g lies in the group and contains an m-cycle."""
    if g.n != params.n:
        raise ValueError(f"degree {g.n} does not match line degree {params.n}")
    if not in_group(g, params.group):
        return False
    return any(len(c) == params.m for c in g.cycles())


def in_Ngood(g: Permutation, params: LineParams) -> bool:
    """in_N and o(g) divides rm."""
    return in_N(g, params) and g.order_divides(params.r * params.m)


def classify(g: Permutation, params: LineParams, s: Fraction) -> str:
    """Family of g (Table of families), with the s-large threshold (rn)^s
    compared exactly via integer cross-powers."""
    if not Fraction(1, 2) < s < 1:
        raise ValueError(f"s must lie in (1/2, 1), got {s}")
    if g.n != params.n:
        raise ValueError(f"degree {g.n} does not match line degree {params.n}")
    if not in_group(g, params.group):
        raise ValueError("element lies outside the line's group")
    if in_N(g, params):
        return FAMILY_N
    if g.order() % params.m != 0:
        return FAMILY_OTHER
    p, q = s.numerator, s.denominator
    rn = params.r * params.n
    ds = delta_sigma(g, params)
    v = ds.v
    # v <= 4 (rn)^s, exactly: v^q <= 4^q rn^p
    if v**q <= (4**q) * (rn**p):
        return FAMILY_R
    # s-large: cycle length d with d >= (rn)^s, i.e. d^q >= rn^p
    large = [
        len(c)
        for c in g.cycles()
        if set(c) <= ds.delta and len(c) ** q >= rn**p
    ]
    if not large:
        return FAMILY_S0
    if len(large) >= 2:
        return FAMILY_SGE2
    # v - |C| > 3 (rn)^s, exactly: (v - |C|)^q > 3^q rn^p
    if (v - large[0]) ** q > (3**q) * (rn**p):
        return FAMILY_S1PLUS
    return FAMILY_S1MINUS


def divisor_profile(params: LineParams) -> dict:
    """Divisors d of rm with d <= n, split into {m}, large (2m/7 < d, d != m),
    and small (d <= 2m/7).

    Checks that the large part matches the closed list for the line's r
    and that every large divisor is at most 2m/3.
    """
    m, r, n = params.m, params.r, params.n
    rm = r * m
    divs = [d for d in _divisors(rm) if d <= n]
    large = sorted(d for d in divs if 7 * d > 2 * m and d != m)
    small = sorted(d for d in divs if 7 * d <= 2 * m)
    allowed = {
        1: {Fraction(m, 3), Fraction(m, 2)},
        2: {Fraction(m, 3), Fraction(2 * m, 5), Fraction(2 * m, 3)},
        3: {Fraction(3 * m, 7), Fraction(3 * m, 5)},
    }[r]
    for d in large:
        if Fraction(d) not in allowed:
            raise AssertionError(f"unexpected large divisor {d} for r={r}, m={m}")
        if 3 * d > 2 * m:
            raise AssertionError(f"large divisor {d} exceeds 2m/3 for m={m}")
    if len(large) > 3:
        raise AssertionError("more than three large divisors")
    return {"m": m, "large": set(large), "small": set(small)}


def _iter_group_images(group: str, n: int):
    """Raw image tuples of the group, skipping Permutation construction."""
    for images in _itertools_permutations(range(n)):
        if group == ALT:
            # count parity via cycle walk
            seen = [False] * n
            transpositions = 0
            for i in range(n):
                if seen[i]:
                    continue
                length = 0
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = images[j]
                    length += 1
                transpositions += length - 1
            if transpositions % 2 == 1:
                continue
        yield images


def rho_oracle(params: LineParams) -> Fraction:
    """Exact rho from full enumeration: m * |N_good| / |G|.  Needs n <= 9."""
    n, m, rm = params.n, params.m, params.r * params.m
    if n > 9:
        raise ValueError(f"rho_oracle limited to n <= 9, got {n}")
    group_size = 0
    good = 0
    for images in _iter_group_images(params.group, n):
        group_size += 1
        seen = [False] * n
        has_m = False
        ok = True
        for i in range(n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = images[j]
                length += 1
            if length == m:
                has_m = True
            if rm % length != 0:
                ok = False
                break
        if has_m and ok:
            good += 1
    return Fraction(m * good, group_size)


def extract_target(g: Permutation, params: LineParams) -> tuple[Permutation, str]:
    """x = g^m, tagged with its kind: identity / 2-cycle / 3-cycle / other."""
    x = g ** params.m
    ct = [t for t in x.cycle_type() if t > 1]
    if not ct:
        kind = "identity"
    elif ct == [2]:
        kind = "2-cycle"
    elif ct == [3]:
        kind = "3-cycle"
    else:
        kind = "other"
    return x, kind


def divisors(x: int) -> set[int]:
    if x < 1:
        raise ValueError("x must be positive")
    return set(_divisors(x))


def d_count(x: int) -> int:
    """Number of positive divisors of x."""
    return len(divisors(x))


def omega(x: int) -> int:
    """Number of distinct prime divisors of x."""
    if x < 1:
        raise ValueError("x must be positive")
    count = 0
    d = 2
    while d * d <= x:
        if x % d == 0:
            count += 1
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        count += 1
    return count


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
