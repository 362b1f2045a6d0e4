"""Black-box m-cycle detection: trace a few random points of an implicit
permutation domain and test their orbit lengths.

The group is reached only through an oracle (random elements, random points,
an action map); the testbed instantiation uses the k-subset action of
Sym(n)/Alt(n) and carries an inspection backdoor for experiment labelling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

from . import ksets, perms
from .families import LineParams


class GroupOracle:
    """Abstract black-box group action: opaque elements, opaque points.

    Elements support no arithmetic; the only capabilities are drawing
    uniform random elements and points, and applying an element to a point.
    """

    def random_element(self, rng) -> Any:
        raise NotImplementedError

    def random_point(self, rng) -> Any:
        raise NotImplementedError

    def act(self, point: Any, element: Any) -> Any:
        raise NotImplementedError


class TestbedOracle(GroupOracle):
    """Oracle realized by Sym(n) or Alt(n) acting on k-subsets.

    ``natural(element)`` exposes the underlying degree-n permutation; it is
    for experiment labelling only and is never read by the algorithms here.
    """

    def __init__(self, params: LineParams, k: int):
        n = params.n
        if not 2 <= k <= n // 2:
            raise ValueError(f"need 2 <= k <= n/2, got k={k}, n={n}")
        self.params = params
        self.k = k

    def random_element(self, rng) -> perms.Permutation:
        return perms.random_element(self.params.group, self.params.n, rng)

    def random_point(self, rng) -> ksets.KSubset:
        return ksets.random_ksubset(self.params.n, self.k, rng)

    def act(self, point: ksets.KSubset, element: perms.Permutation) -> ksets.KSubset:
        return ksets.image(point, element)

    def natural(self, element: perms.Permutation) -> perms.Permutation:
        return element


class TrivialOracle(GroupOracle):
    """The trivial group acting on a one-point domain (degenerate testbed)."""

    def random_element(self, rng):
        return None

    def random_point(self, rng):
        return 0

    def act(self, point, element):
        return point


@dataclass(frozen=True)
class TraceOutcome:
    """Result of tracing M random points under one element."""

    accepted: bool
    per_point: tuple[tuple[Any, object, int | None], ...]


FAIL = "Fail"

OUTCOME_GOOD = "good"
OUTCOME_BAD = "bad"
OUTCOME_UGLY_STEP = "ugly-step"


@dataclass
class Transcript:
    """Per-trial record of a detection run."""

    entries: list[dict] = field(default_factory=list)

    def add(self, trial_index: int, outcome: str, lengths: list) -> None:
        self.entries.append(
            {"trial_index": trial_index, "outcome": outcome, "lengths": lengths}
        )

    def lines(self) -> list[str]:
        """Line-record form: trial_index, outcome, per-point orbit lengths."""
        return [
            "{}, {}, {}".format(
                e["trial_index"],
                e["outcome"],
                " ".join(str(x) for x in e["lengths"]),
            )
            for e in self.entries
        ]


def _orbit_length(oracle: GroupOracle, point, element, cap: int):
    cur = oracle.act(point, element)
    t = 1
    while cur != point:
        if t >= cap:
            return ksets.EXCEEDS_CAP
        cur = oracle.act(cur, element)
        t += 1
    return t


def trace_cycle(
    element,
    params: LineParams,
    M: int,
    oracle: GroupOracle,
    rng,
) -> TraceOutcome:
    """Sample M independent uniform points; accept iff every orbit length
    under the element equals r0*m for some divisor r0 of r.

    Orbits are traced with cap rm: any longer orbit cannot equal r0*m,
    so exceeding the cap already forces rejection.
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    m, r = params.m, params.r
    cap = r * m
    points = [oracle.random_point(rng) for _ in range(M)]
    per_point = []
    accepted = True
    for pt in points:
        if not accepted:
            per_point.append((pt, None, None))
            continue
        length = _orbit_length(oracle, pt, element, cap)
        matched = None
        if length is not ksets.EXCEEDS_CAP and length % m == 0 and r % (length // m) == 0:
            matched = length // m
        per_point.append((pt, length, matched))
        if matched is None:
            accepted = False
    return TraceOutcome(accepted, tuple(per_point))


def trial_budget(n: int, eps: float) -> int:
    """N = ceil(5 n ln(2/eps)), the maximum number of elements inspected."""
    return math.ceil(5 * n * math.log(2 / eps))


def find_m_cycle(
    params: LineParams,
    eps: float,
    M: int,
    oracle: GroupOracle,
    rng,
    label: Callable[[Any], str] | None = None,
):
    """Draw up to N = ceil(5 n ln(2/eps)) random elements, returning the first
    accepted by trace_cycle, else FAIL.

    ``label`` optionally maps an element to "good"/"bad" for the transcript
    (testbed ground truth); without it accepted trials are recorded "good".
    Returns (element or FAIL, Transcript).
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if M < 4:
        raise ValueError("M must be at least 4")
    N = trial_budget(params.n, eps)
    transcript = Transcript()
    for i in range(1, N + 1):
        g = oracle.random_element(rng)
        outcome = trace_cycle(g, params, M, oracle, rng)
        lengths = [
            length if length is not None else "-" for _, length, _ in outcome.per_point
        ]
        if outcome.accepted:
            tag = label(g) if label is not None else OUTCOME_GOOD
            transcript.add(i, tag, lengths)
            return g, transcript
        transcript.add(i, OUTCOME_UGLY_STEP, lengths)
    return FAIL, transcript


def make_testbed_oracle(params: LineParams, k: int) -> TestbedOracle:
    """Oracle whose elements are natural permutations and points are k-subsets."""
    return TestbedOracle(params, k)
