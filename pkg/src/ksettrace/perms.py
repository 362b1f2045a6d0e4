"""Exact permutation arithmetic on n points.

Points are 0-based internally; all text I/O is 1-based.
"""

from __future__ import annotations

import math
import re
from itertools import permutations as _itertools_permutations
from typing import Iterator, Sequence


class DegreeMismatchError(ValueError):
    """Raised when two permutations of different degrees are combined."""


class Permutation:
    """A permutation of {0..n-1}, stored as a tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        imgs = tuple(images)
        n = len(imgs)
        if n < 1:
            raise ValueError("degree must be at least 1")
        seen = [False] * n
        for x in imgs:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise ValueError(f"images {imgs!r} are not a bijection on 0..{n - 1}")
            seen[x] = True
        object.__setattr__(self, "images", imgs)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        """Build from 0-based cycles; unmentioned points are fixed."""
        images = list(range(n))
        touched = [False] * n
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                if not (0 <= a < n) or touched[a]:
                    raise ValueError(f"invalid or repeated point {a} in cycles")
                touched[a] = True
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse 1-based text: one-line form ``[2,3,1]`` or cycle form ``(1 2 3)(4)``.

        For cycle form, ``n`` may be given to fix the degree; otherwise the
        largest mentioned point is used.
        """
        text = text.strip()
        if text.startswith("["):
            if not text.endswith("]"):
                raise ValueError(f"malformed one-line permutation {text!r}")
            body = text[1:-1].strip()
            if not body:
                raise ValueError("empty image list")
            try:
                vals = [int(tok) for tok in body.split(",")]
            except ValueError as exc:
                raise ValueError(f"malformed one-line permutation {text!r}") from exc
            if n is not None and n != len(vals):
                raise ValueError(f"degree {len(vals)} does not match requested {n}")
            return cls([v - 1 for v in vals])
        if text.startswith("("):
            groups = re.findall(r"\(([^()]*)\)", text)
            if not groups or re.sub(r"\([^()]*\)|\s", "", text):
                raise ValueError(f"malformed cycle-form permutation {text!r}")
            cycles = []
            for grp in groups:
                toks = grp.replace(",", " ").split()
                if not toks:
                    raise ValueError(f"empty cycle in {text!r}")
                cycles.append([int(t) - 1 for t in toks])
            maxpt = max(max(c) for c in cycles)
            degree = n if n is not None else maxpt + 1
            if maxpt >= degree:
                raise ValueError(f"point {maxpt + 1} exceeds degree {degree}")
            return cls.from_cycles(degree, cycles)
        raise ValueError(f"unrecognized permutation text {text!r}")

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)!r})"

    def one_line_str(self) -> str:
        """1-based one-line form, e.g. ``[2,3,1]``."""
        return "[" + ",".join(str(x + 1) for x in self.images) + "]"

    def cycle_str(self) -> str:
        """1-based cycle form, fixed points included, e.g. ``(1 2 3)(4)``."""
        return "".join(
            "(" + " ".join(str(x + 1) for x in cyc) + ")" for cyc in self.cycles()
        )

    def compose(self, other: "Permutation") -> "Permutation":
        """The permutation i -> other(self(i))."""
        if self.n != other.n:
            raise DegreeMismatchError(
                f"cannot compose degree {self.n} with degree {other.n}"
            )
        oi = other.images
        return Permutation([oi[x] for x in self.images])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles covering all points, sorted by minimum element.

        Each cycle starts at its minimum and follows images.
        """
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths in non-increasing order, summing to n."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __pow__(self, e: int) -> "Permutation":
        """p^e via per-cycle index shifts: O(n) for any exponent size."""
        if e < 0:
            return self.inverse() ** (-e)
        images = [0] * self.n
        for cyc in self.cycles():
            t = len(cyc)
            shift = e % t
            for i, pt in enumerate(cyc):
                images[pt] = cyc[(i + shift) % t]
        return Permutation(images)

    def order(self) -> int:
        """lcm of the cycle lengths."""
        return math.lcm(*(len(c) for c in self.cycles()))

    def order_divides(self, t: int) -> bool:
        """True iff every cycle length divides t (no lcm needed)."""
        if t < 1:
            raise ValueError("t must be positive")
        return all(t % len(c) == 0 for c in self.cycles())

    def parity(self) -> str:
        """'even' or 'odd'; even iff n minus the number of cycles is even."""
        return "even" if (self.n - len(self.cycles())) % 2 == 0 else "odd"

    def is_even(self) -> bool:
        return self.parity() == "even"


def compose(p: Permutation, q: Permutation) -> Permutation:
    return p.compose(q)


def power(p: Permutation, e: int) -> Permutation:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return p**e


def cycle_decomposition(p: Permutation) -> list[tuple[int, ...]]:
    return p.cycles()


def order(p: Permutation) -> int:
    return p.order()


def order_divides(p: Permutation, t: int) -> bool:
    return p.order_divides(t)


def parity(p: Permutation) -> str:
    return p.parity()


SYM = "Sym"
ALT = "Alt"

_ENUM_LIMIT = 10


def random_element(group: str, n: int, rng) -> Permutation:
    """Uniform element of Sym(n) or Alt(n).

    Sym: unbiased Fisher-Yates shuffle.  Alt: shuffle, then swap the images
    of positions 0 and 1 if the result is odd; this is a bijection from odd
    to even permutations, so uniformity is preserved.
    """
    if group not in (SYM, ALT):
        raise ValueError(f"unknown group {group!r}")
    if group == ALT and n < 2:
        raise ValueError("Alt requires n >= 2")
    images = list(range(n))
    rng.shuffle(images)
    p = Permutation(images)
    if group == ALT and not p.is_even():
        images[0], images[1] = images[1], images[0]
        p = Permutation(images)
    return p


def enumerate_group(group: str, n: int) -> Iterator[Permutation]:
    """Yield every element of Sym(n) or Alt(n) exactly once.  Requires n <= 10."""
    if group not in (SYM, ALT):
        raise ValueError(f"unknown group {group!r}")
    if n > _ENUM_LIMIT:
        raise ValueError(f"enumeration limited to n <= {_ENUM_LIMIT}, got {n}")
    for images in _itertools_permutations(range(n)):
        p = Permutation(images)
        if group == SYM or p.is_even():
            yield p
