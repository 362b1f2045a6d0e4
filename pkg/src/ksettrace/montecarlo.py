"""Experiment harness: Monte Carlo estimation of the acceptance/rejection
probabilities, an exact small-n conditional oracle over conjugacy classes,
exact small-v cycle-structure proportions, and CSV report emission.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import algorithms, families, ksets, perms
from .families import LineParams

WILSON_Z = 1.959963984540054  # two-sided 95%


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment cell."""

    group: str
    n: int
    goal: str
    k: int
    M: int = 4
    s: Fraction = Fraction(5, 8)
    delta: Fraction = Fraction(1, 24)
    eps: float = 0.1
    mode: str = "conditional"  # conditional | findmcycle | family-census | exact-oracle
    trials: int = 10**4
    seed: int = 0
    workers: int = 1
    budget: int = ksets.DEFAULT_ENUMERATION_BUDGET
    condition: str = "none"  # none | ngood

    def line(self) -> LineParams:
        return families.line_params(self.group, self.n, self.goal)

    def config_hash(self) -> str:
        text = repr(
            (
                self.group, self.n, self.goal, self.k, self.M,
                str(self.s), str(self.delta), self.eps, self.mode,
                self.trials, self.seed, self.workers, self.condition,
            )
        )
        return hashlib.sha256(text.encode()).hexdigest()[:12]

    def validate(self) -> None:
        if not 2 <= self.k <= self.n // 2:
            raise ValueError(f"need 2 <= k <= n/2, got k={self.k}, n={self.n}")
        if self.M < 1:
            raise ValueError("M must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z) -> tuple[float, float]:
    """Wilson score 95% interval for a binomial proportion."""
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    z2 = z * z
    denom = 1 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials**2))
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return (lo, hi)


@dataclass
class Estimate:
    successes: int
    trials: int

    @property
    def value(self) -> float:
        return self.successes / self.trials if self.trials else float("nan")

    @property
    def ci(self) -> tuple[float, float]:
        return wilson_interval(self.successes, self.trials)

    @property
    def half_width(self) -> float:
        lo, hi = self.ci
        return (hi - lo) / 2


@dataclass
class SummaryStats:
    """Tallies and derived estimates for one experiment cell."""

    config: ExperimentConfig
    contingency: dict = field(default_factory=dict)  # (family, accepted) -> count
    ngood_accepted: int = 0
    ngood_trials: int = 0
    good: int = 0
    bad: int = 0
    ugly: int = 0

    @property
    def trials(self) -> int:
        return sum(self.contingency.values()) or (self.good + self.bad + self.ugly)

    def _count(self, fams: Iterable[str], accepted: bool | None = None) -> int:
        fams = set(fams)
        return sum(
            c
            for (fam, acc), c in self.contingency.items()
            if fam in fams and (accepted is None or acc == accepted)
        )

    def accept_given(self, fams: Iterable[str]) -> Estimate:
        return Estimate(self._count(fams, True), self._count(fams))

    def accept_overall(self) -> Estimate:
        return Estimate(self._count(families.ALL_FAMILIES, True), self.trials)

    def n_given_accept(self) -> Estimate:
        return Estimate(
            self._count([families.FAMILY_N], True),
            self._count(families.ALL_FAMILIES, True),
        )

    def accept_given_ngood(self) -> Estimate:
        return Estimate(self.ngood_accepted, self.ngood_trials)

    def accept_given_not_ngood(self) -> Estimate:
        return Estimate(
            self._count(families.ALL_FAMILIES, True) - self.ngood_accepted,
            self.trials - self.ngood_trials,
        )

    def q_estimates(self) -> dict:
        """Per-family Prob(g in family and accepted)."""
        t = self.trials
        return {
            fam: Estimate(self._count([fam], True), t)
            for fam in families.ALL_FAMILIES
            if fam != families.FAMILY_N
        }


def _worker_rng(seed: int, worker: int) -> random.Random:
    # derived stream per logical worker; stable across processes and runs
    digest = hashlib.sha256(f"{seed}:{worker}".encode()).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))


def _split_trials(trials: int, workers: int) -> list[int]:
    base, extra = divmod(trials, workers)
    return [base + (1 if w < extra else 0) for w in range(workers)]


def sample_ngood(params: LineParams, rng) -> perms.Permutation:
    """Uniform element of N_good: a uniform m-cycle on a uniform m-subset,
    with the remaining <= 6 points filled by rejection until every leftover
    cycle length divides rm and the parity matches the group."""
    n, m, rm = params.n, params.m, params.r * params.m
    while True:
        pts = list(range(n))
        rng.shuffle(pts)
        cycle_pts = pts[:m]  # random m-subset in random cyclic order
        rest = pts[m:]
        images = list(range(n))
        for a, b in zip(cycle_pts, cycle_pts[1:] + cycle_pts[:1]):
            images[a] = b
        # uniform permutation of the leftover points
        shuffled = rest[:]
        rng.shuffle(shuffled)
        for a, b in zip(rest, shuffled):
            images[a] = b
        g = perms.Permutation(images)
        if not g.order_divides(rm):
            continue
        if params.group == perms.ALT and not g.is_even():
            continue
        if families.in_Ngood(g, params):
            return g


def run_conditional(config: ExperimentConfig) -> SummaryStats:
    """Draw elements (uniform in G, or uniform in N_good when
    config.condition == 'ngood'), classify each, run the point-tracing test
    through the black-box oracle, and tally family-by-outcome counts.

    Deterministic given (seed, workers): each logical worker owns a derived
    stream and the reduction is commutative counting.
    """
    config.validate()
    params = config.line()
    m, r = params.m, params.r
    stats = SummaryStats(config)
    for worker, wtrials in enumerate(_split_trials(config.trials, config.workers)):
        rng = _worker_rng(config.seed, worker)
        for _ in range(wtrials):
            if config.condition == "ngood":
                g = sample_ngood(params, rng)
            else:
                g = perms.random_element(params.group, params.n, rng)
            fam = families.classify(g, params, config.s)
            # same accept set as capped tracing: any orbit longer than rm
            # cannot equal r0*m, and the exact engine is far cheaper here
            accepted = True
            for _ in range(config.M):
                gamma = ksets.random_ksubset(params.n, config.k, rng)
                length = ksets.cycle_length_exact(gamma, g)
                if length % m != 0 or r % (length // m) != 0:
                    accepted = False
                    break
            key = (fam, accepted)
            stats.contingency[key] = stats.contingency.get(key, 0) + 1
            if fam == families.FAMILY_N and g.order_divides(params.r * m):
                stats.ngood_trials += 1
                if accepted:
                    stats.ngood_accepted += 1
    return stats


def run_findmcycle(config: ExperimentConfig) -> SummaryStats:
    """Repeat the full detection loop config.trials times; label each run
    good (returned element has an m-cycle), bad (it does not), or ugly
    (no element returned)."""
    config.validate()
    params = config.line()
    oracle = algorithms.make_testbed_oracle(params, config.k)

    def label(g):
        return (
            algorithms.OUTCOME_GOOD
            if families.in_N(oracle.natural(g), params)
            else algorithms.OUTCOME_BAD
        )

    stats = SummaryStats(config)
    for worker, wtrials in enumerate(_split_trials(config.trials, config.workers)):
        rng = _worker_rng(config.seed, worker)
        for _ in range(wtrials):
            result, transcript = algorithms.find_m_cycle(
                params, config.eps, config.M, oracle, rng, label=label
            )
            if result is algorithms.FAIL:
                stats.ugly += 1
            elif transcript.entries[-1]["outcome"] == algorithms.OUTCOME_GOOD:
                stats.good += 1
            else:
                stats.bad += 1
    return stats


def _partitions(v: int):
    """All partitions of v, parts non-increasing."""
    if v == 0:
        yield ()
        return

    def rec(remaining, largest, acc):
        if remaining == 0:
            yield tuple(acc)
            return
        for part in range(min(remaining, largest), 0, -1):
            acc.append(part)
            yield from rec(remaining - part, part, acc)
            acc.pop()

    yield from rec(v, v, [])


def _class_size(n: int, parts: tuple[int, ...]) -> int:
    """Number of permutations of S_n with the given cycle type."""
    z = 1
    mult: dict[int, int] = {}
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
    for length, count in mult.items():
        z *= length**count * math.factorial(count)
    return math.factorial(n) // z


def _canonical_of_type(n: int, parts: tuple[int, ...]) -> perms.Permutation:
    images = list(range(n))
    start = 0
    for p in parts:
        block = list(range(start, start + p))
        for a, b in zip(block, block[1:] + block[:1]):
            images[a] = b
        start += p
    return perms.Permutation(images)


@dataclass(frozen=True)
class ExactConditional:
    """Exact rationals for one (n, k, line, M) cell."""

    accept: Fraction
    n_given_accept: Fraction
    p: Fraction
    p1: Fraction
    p2: Fraction
    q: Fraction
    q_by_family: dict


def exact_conditional(
    params: LineParams,
    k: int,
    M: int,
    s: Fraction = Fraction(5, 8),
    budget: int = ksets.DEFAULT_ENUMERATION_BUDGET,
) -> ExactConditional:
    """Exact acceptance probabilities by summing over conjugacy classes:
    for an element g, the per-point pass chance pi_g is the fraction of
    k-subsets with orbit length r0*m (r0 | r), and Prob(accept) = pi_g^M;
    both are class functions."""
    n, m, r = params.n, params.m, params.r
    if math.comb(n, k) * math.factorial(n) > budget * 10**3:
        raise ValueError("cell too large for the exact oracle budget")
    parity_even = lambda parts: (n - len(parts)) % 2 == 0
    group_order = math.factorial(n) // (1 if params.group == perms.SYM else 2)

    total_accept = Fraction(0)
    accept_in_N = Fraction(0)
    reject_in_Ngood = Fraction(0)
    reject_not_Ngood = Fraction(0)
    ngood_size = 0
    accept_by_family: dict[str, Fraction] = {}

    for parts in _partitions(n):
        if params.group == perms.ALT and not parity_even(parts):
            continue
        size = _class_size(n, parts)
        g = _canonical_of_type(n, parts)
        pi = ksets.good_ksubset_fraction(g, k, m, r)
        acc = pi**M
        total_accept += size * acc
        fam = families.classify(g, params, s)
        accept_by_family[fam] = accept_by_family.get(fam, Fraction(0)) + size * acc
        if fam == families.FAMILY_N:
            accept_in_N += size * acc
            if families.in_Ngood(g, params):
                ngood_size += size
                reject_in_Ngood += size * (1 - acc)
            else:
                reject_not_Ngood += size * (1 - acc)
        else:
            reject_not_Ngood += size * (1 - acc)

    accept = total_accept / group_order
    p = 1 - accept
    p1 = reject_in_Ngood / ngood_size
    p2 = reject_not_Ngood / (group_order - ngood_size)
    q = (total_accept - accept_in_N) / group_order
    q_by_family = {
        fam: val / group_order
        for fam, val in accept_by_family.items()
        if fam != families.FAMILY_N
    }
    n_given_accept = accept_in_N / total_accept if total_accept else Fraction(0)
    return ExactConditional(accept, n_given_accept, p, p1, p2, q, q_by_family)


def _partitions_with_parts_dividing(v: int, rm: int):
    for parts in _partitions(v):
        if all(rm % p == 0 for p in parts):
            yield parts


def small_v_proportions(
    v: int,
    rm: int,
    s: Fraction,
    r: int = 1,
    n: int | None = None,
) -> tuple[Fraction, Fraction, Fraction]:
    """(P, P0, P1plus) for S_v: proportions of elements of order dividing rm
    (P), with additionally every cycle s-small (P0), or with exactly one
    s-large cycle whose length d satisfies (rn)^s <= d < v - 3(rn)^s
    (P1plus).

    The s-large threshold is (rn)^s with n defaulting to v; comparisons are
    exact integer cross-powers.  Computed by summing 1/z over cycle types.
    """
    if v < 0:
        raise ValueError("v must be >= 0")
    if v == 0:
        # the empty permutation has order 1 and no cycles at all, so it
        # counts for P and P0 but has no s-large cycle
        return Fraction(1), Fraction(1), Fraction(0)
    if v > 12:
        raise ValueError("limited to v <= 12")
    s = Fraction(s)
    p_, q_ = s.numerator, s.denominator
    amb = (n if n is not None else v) * r
    thr = amb**p_  # d is s-large iff d^q >= (rn)^p

    def is_large(d: int) -> bool:
        return d**q_ >= thr

    fact = math.factorial(v)
    P = Fraction(0)
    P0 = Fraction(0)
    P1 = Fraction(0)
    for parts in _partitions_with_parts_dividing(v, rm):
        weight = Fraction(_class_size(v, parts), fact)
        P += weight
        large = [d for d in parts if is_large(d)]
        if not large:
            P0 += weight
        elif len(large) == 1:
            d = large[0]
            # d in the window [(rn)^s, v - 3(rn)^s): exact cross-power tests
            if d**q_ >= thr and (v - d) ** q_ > (3**q_) * thr:
                P1 += weight
    return P, P0, P1


def p1plus_recursion(
    v: int,
    rm: int,
    s: Fraction,
    r: int = 1,
    n: int | None = None,
) -> Fraction:
    """P1plus via the divisor recursion sum_{d in D1+(v)} (1/d) P0(v-d, rm)."""
    s = Fraction(s)
    p_, q_ = s.numerator, s.denominator
    amb = (n if n is not None else v) * r
    thr = amb**p_
    total = Fraction(0)
    for d in sorted(families.divisors(rm)):
        if d < v and d**q_ >= thr and (v - d) ** q_ > (3**q_) * thr:
            _, p0, _ = small_v_proportions(v - d, rm, s, r=r, n=n if n is not None else v)
            total += Fraction(1, d) * p0
    return total


CSV_COLUMNS = [
    "config_hash",
    "line",
    "n",
    "k",
    "M",
    "s",
    "delta",
    "family",
    "accepted_count",
    "trial_count",
    "estimate",
    "ci_lo",
    "ci_hi",
    "bound_value",
    "bound_asserted",
]


def emit_report(stats: SummaryStats, bound_values: dict | None = None) -> str:
    """CSV text: one row per family with its acceptance tally, Wilson CI,
    and the matching analytic ceiling (if supplied) with its asserted flag."""
    config = stats.config
    params = config.line()
    bound_values = bound_values or {}
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    trials = stats.trials
    for fam in families.ALL_FAMILIES:
        acc = stats._count([fam], True)
        tot = stats._count([fam])
        if tot == 0 and fam not in bound_values:
            continue
        est = Estimate(acc, trials)  # q(fam)-style: joint with accept
        lo, hi = est.ci
        bound = bound_values.get(fam, {})
        writer.writerow(
            {
                "config_hash": config.config_hash(),
                "line": params.line,
                "n": config.n,
                "k": config.k,
                "M": config.M,
                "s": str(config.s),
                "delta": str(config.delta),
                "family": fam,
                "accepted_count": acc,
                "trial_count": trials,
                "estimate": f"{est.value:.8f}" if trials else "",
                "ci_lo": f"{lo:.8f}",
                "ci_hi": f"{hi:.8f}",
                "bound_value": bound.get("value", ""),
                "bound_asserted": bound.get("asserted", ""),
            }
        )
    return out.getvalue()


def parse_report(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))
