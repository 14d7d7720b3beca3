"""Stabilizer chains built by sifting (Furst-Hopcroft-Luks), plus smooth
generating sequences for 2-groups.

A chain is a list of levels G = G_0 >= G_1 >= ... >= 1.  Level ``i`` keeps a
list C_i of coset representatives of G_i modulo G_{i+1}.  A level knows how to
decide ``gamma^-1 * alpha in G_{i+1}`` either through a key function (two
elements of G_i lie in the same coset iff their keys agree) or through an
arbitrary membership predicate, which is scanned linearly.

The default levels are point stabilizers for the base 0, 1, ..., n-2, so the
key of ``alpha`` at level ``i`` is simply ``alpha(i)``.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from math import prod
from typing import Callable, Hashable, Sequence

from .perm import Permutation

log = logging.getLogger(__name__)

Member = Callable[[Permutation], bool]


class IndexBoundExceeded(ValueError):
    """The subgroup has larger index than the caller promised."""


class _KeyLevel:
    __slots__ = ("key", "reps")

    def __init__(self, key: Callable[[Permutation], Hashable]):
        self.key = key
        self.reps: dict[Hashable, Permutation] = {}

    def find(self, alpha: Permutation) -> Permutation | None:
        return self.reps.get(self.key(alpha))

    def add(self, alpha: Permutation) -> None:
        self.reps[self.key(alpha)] = alpha

    def __iter__(self):
        return iter(self.reps.values())

    def __len__(self):
        return len(self.reps)


class _PointLevel(_KeyLevel):
    __slots__ = ("point",)

    def __init__(self, point: int):
        self.point = point
        self.reps = {}

    def key(self, alpha: Permutation) -> int:  # type: ignore[override]
        return int(alpha.images[self.point])


class _MemberLevel:
    __slots__ = ("member", "reps", "bound")

    def __init__(self, member: Member, bound: int | None = None):
        self.member = member
        self.reps: list[Permutation] = []
        self.bound = bound

    def find(self, alpha: Permutation) -> Permutation | None:
        for gamma in self.reps:
            if self.member(gamma.inverse() * alpha):
                return gamma
        return None

    def add(self, alpha: Permutation) -> None:
        self.reps.append(alpha)
        if self.bound is not None and len(self.reps) > self.bound:
            raise IndexBoundExceeded(
                f"more than {self.bound} cosets at the top of the chain")

    def __iter__(self):
        return iter(self.reps)

    def __len__(self):
        return len(self.reps)


@dataclass(frozen=True)
class SiftOutcome:
    inserted: bool
    level: int | None = None

    def __str__(self):
        return f"inserted into C_{self.level}" if self.inserted else "already represented"


class SiftChain:
    """Coset-representative lists C_0, C_1, ... for a chain of subgroups."""

    def __init__(self, degree: int, levels=None):
        self.degree = degree
        if levels is None:
            levels = [_PointLevel(i) for i in range(max(degree - 1, 0))]
        self._levels = list(levels)
        e = Permutation.identity(degree)
        for lev in self._levels:
            lev.add(e)

    @property
    def coset_reps(self) -> list[list[Permutation]]:
        return [list(lev) for lev in self._levels]

    def _strip(self, alpha: Permutation) -> tuple[int | None, Permutation]:
        for i, lev in enumerate(self._levels):
            gamma = lev.find(alpha)
            if gamma is None:
                return i, alpha
            if not gamma.is_identity():
                alpha = gamma.inverse() * alpha
        return None, alpha

    def _insert(self, alpha: Permutation) -> tuple[int, Permutation] | None:
        level, residue = self._strip(alpha)
        if level is None:
            return None
        self._levels[level].add(residue)
        return level, residue

    def sift(self, alpha: Permutation) -> SiftOutcome:
        """Filter ``alpha`` through the chain, adding it where no coset matches."""
        if alpha.degree != self.degree:
            raise ValueError("degree mismatch")
        hit = self._insert(alpha)
        if hit is None:
            return SiftOutcome(False)
        return SiftOutcome(True, hit[0])

    def contains(self, sigma: Permutation) -> bool:
        if sigma.degree != self.degree:
            raise ValueError("degree mismatch")
        return self._strip(sigma)[0] is None

    def order(self) -> int:
        return prod(len(lev) for lev in self._levels)

    def strong_generators(self, skip: int = 0) -> list[Permutation]:
        """Non-identity representatives of every level from ``skip`` on."""
        return [g for lev in self._levels[skip:] for g in lev if not g.is_identity()]

    def close_under(self, generators: Sequence[Permutation]) -> "SiftChain":
        """Sift the generators, then all products C_i C_j (i >= j), to a fixpoint."""
        queue: deque[tuple[int, Permutation]] = deque()

        def add(p: Permutation):
            hit = self._insert(p)
            if hit is not None:
                queue.append(hit)

        for g in generators:
            if g.degree != self.degree:
                raise ValueError("degree mismatch")
            add(g)
        while queue:
            i, x = queue.popleft()
            for j in range(i + 1):
                for c in list(self._levels[j]):
                    if not c.is_identity():
                        add(x * c)
            add(x * x)
            for k in range(i, len(self._levels)):
                for c in list(self._levels[k]):
                    if not c.is_identity() and c is not x:
                        add(c * x)
        return self

    def dump(self) -> str:
        lines = []
        for i, lev in enumerate(self._levels):
            lines.append(f"level {i}: [" + ", ".join(g.to_cycles() for g in lev) + "]")
        return "\n".join(lines)


def close(generators: Sequence[Permutation], degree: int) -> SiftChain:
    """Sift chain with base 0..n-2 for the group generated by ``generators``."""
    return SiftChain(degree).close_under(generators)


def order(chain: SiftChain) -> int:
    return chain.order()


def contains(chain: SiftChain, sigma: Permutation) -> bool:
    return chain.contains(sigma)


def group_order(generators: Sequence[Permutation], degree: int) -> int:
    return close(generators, degree).order()


def _degree_of(generators: Sequence[Permutation], degree: int | None) -> int | None:
    if degree is not None:
        return degree
    return generators[0].degree if generators else None


def subgroup_generators(generators: Sequence[Permutation], member: Member,
                        index_bound: int, degree: int | None = None) -> list[Permutation]:
    """Generators of ``{g in <generators> : member(g)}``.

    The chain G >= H >= H_1 >= ... is closed with H's coset test on top; the top
    list is then dropped.  Raises ``IndexBoundExceeded`` if H turns out to have
    more than ``index_bound`` cosets.
    """
    n = _degree_of(generators, degree)
    if n is None:
        return []
    levels = [_MemberLevel(member, index_bound)] + [_PointLevel(i) for i in range(n - 1)]
    chain = SiftChain(n, levels).close_under(generators)
    return chain.strong_generators(skip=1)


def stabilizer_of_blocks(generators: Sequence[Permutation], blocks: Sequence[Sequence[int]],
                         degree: int | None = None) -> list[Permutation]:
    """Generators of the subgroup fixing every block of a block system setwise.

    Uses the chain G_i = stabilizer of the first i blocks, for which
    |G_i : G_{i+1}| <= (number of blocks) - i.
    """
    n = _degree_of(generators, degree)
    if n is None:
        return []
    block_of = {}
    for bi, blk in enumerate(blocks):
        for x in blk:
            block_of[x] = bi

    def block_key(first_point):
        return lambda alpha: block_of[int(alpha.images[first_point])]

    levels = [_KeyLevel(block_key(blk[0])) for blk in blocks[:-1]]
    levels += [_PointLevel(i) for i in range(n - 1)]
    chain = SiftChain(n, levels).close_under(generators)
    return chain.strong_generators(skip=len(blocks) - 1)


@dataclass(frozen=True)
class Sgs:
    """Smooth generating sequence: each prefix group has index <= 2 in the next."""
    generators: tuple[Permutation, ...]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def is_smooth(generators: Sequence[Permutation], degree: int | None = None) -> bool:
    """Check the prefix-index condition by computing every prefix order."""
    n = _degree_of(generators, degree)
    if n is None:
        return True
    chain = SiftChain(n)
    prev = 1
    for g in generators:
        chain.close_under([g])
        cur = chain.order()
        if cur > 2 * prev:
            return False
        prev = cur
    return True


def sgs_index2_subgroup(sgs: Sgs | Sequence[Permutation], member: Member) -> tuple[Permutation, Sgs]:
    """Split an SGS along an index-2 subgroup H given by ``member``.

    Returns ``(tau, beta)`` where tau is the first generator outside H and
    beta_i = g_i if g_i is in H, else tau^-1 g_i.  beta is an SGS for H.
    """
    gens = tuple(sgs)
    inside = [member(g) for g in gens]
    try:
        j = inside.index(False)
    except ValueError:
        raise ValueError("subgroup is not proper: every generator satisfies member") from None
    tau = gens[j]
    tinv = tau.inverse()
    betas = tuple(g if ok else tinv * g for g, ok in zip(gens, inside))
    return tau, Sgs(betas)
