"""Permutations on the points 0..n-1.

A permutation is stored as its full image array, so applying it to a point is
a single lookup.  Composition is right-to-left everywhere in this package:
``compose(p, q)(x) == p(q(x))``, written ``p * q``.

Cycle strings such as ``"(1 3)(2 4)"`` use 1-based labels; everything else is
0-based.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

import numpy as np

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """Immutable bijection of ``range(degree)``."""

    __slots__ = ("_a", "_hash")

    def __init__(self, images: Iterable[int], *, check: bool = True):
        a = np.array(images, dtype=np.intp)
        if a.ndim != 1:
            raise ValueError("images must be one-dimensional")
        if check:
            n = a.size
            seen = np.zeros(n, dtype=bool)
            if n and (a.min() < 0 or a.max() >= n):
                raise ValueError("image out of range")
            seen[a] = True
            if not seen.all():
                raise ValueError("not a bijection")
        a.flags.writeable = False
        self._a = a
        self._hash = None

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "Permutation":
        # trusted construction from an array we own
        p = cls.__new__(cls)
        a.flags.writeable = False
        p._a = a
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(np.arange(degree, dtype=np.intp))

    @classmethod
    def from_cycles(cls, text: str, degree: int, one_based: bool = True) -> "Permutation":
        """Parse cycle notation, e.g. ``"(1 3)(2 4)"``; ``"()"`` or ``"id"`` is the identity."""
        a = np.arange(degree, dtype=np.intp)
        text = text.strip()
        if text in ("", "id", "identity", "()"):
            return cls._wrap(a)
        shift = 1 if one_based else 0
        used = set()
        for body in _CYCLE_RE.findall(text):
            pts = [int(t) - shift for t in body.replace(",", " ").split()]
            for x in pts:
                if not 0 <= x < degree:
                    raise ValueError(f"point {x + shift} out of range for degree {degree}")
                if x in used:
                    raise ValueError(f"point {x + shift} repeated in {text!r}")
                used.add(x)
            for i, x in enumerate(pts):
                a[x] = pts[(i + 1) % len(pts)]
        return cls._wrap(a)

    @classmethod
    def transposition(cls, degree: int, u: int, v: int) -> "Permutation":
        a = np.arange(degree, dtype=np.intp)
        a[u], a[v] = v, u
        return cls._wrap(a)

    @property
    def degree(self) -> int:
        return self._a.size

    @property
    def images(self) -> np.ndarray:
        """Read-only image array; ``images[x]`` is the image of ``x``."""
        return self._a

    def __call__(self, x: int) -> int:
        return int(self._a[x])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._a)
        inv[self._a] = np.arange(self._a.size, dtype=np.intp)
        return Permutation._wrap(inv)

    def is_identity(self) -> bool:
        return bool((self._a == np.arange(self._a.size)).all())

    def support(self) -> list[int]:
        return np.flatnonzero(self._a != np.arange(self._a.size)).tolist()

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        a = self._a.tolist()
        seen = [False] * len(a)
        out = []
        for i in range(len(a)):
            if seen[i] or a[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = a[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = a[j]
            out.append(tuple(cyc))
        return out

    def to_cycles(self, one_based: bool = True) -> str:
        shift = 1 if one_based else 0
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x + shift) for x in c) + ")" for c in cyc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._a.size == other._a.size and bool((self._a == other._a).all())

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._a.tobytes())
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycles()!r}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p * q``, the permutation ``x -> p(q(x))``."""
    if p._a.size != q._a.size:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation._wrap(p._a[q._a])


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


def canonical_subset(points: Iterable[int]) -> tuple[int, ...]:
    """Sorted, duplicate-free tuple of points."""
    s = tuple(sorted(set(int(x) for x in points)))
    if not s:
        raise ValueError("a canonical subset needs at least one point")
    return s


def act_on_subset(p: Permutation, s: Sequence[int]) -> tuple[int, ...]:
    """Image of the point set ``s`` under ``p``, as a canonical subset."""
    n = p.degree
    for x in s:
        if not 0 <= x < n:
            raise ValueError(f"point {x} out of range for degree {n}")
    return tuple(sorted(int(p._a[x]) for x in s))


def generated_elements(generators: Sequence[Permutation], degree: int, limit: int | None = None) -> set[Permutation]:
    """All elements of the group generated by ``generators`` (breadth-first closure).

    Raises ``OverflowError`` once more than ``limit`` elements are found.
    """
    e = Permutation.identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    if limit is not None and len(seen) > limit:
                        raise OverflowError(f"group has more than {limit} elements")
                    nxt.append(y)
        frontier = nxt
    return seen
