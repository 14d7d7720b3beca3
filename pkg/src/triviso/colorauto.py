"""Color-preserving elements of a coset of a 2-group.

``c_b(coset, b, domain)`` returns the elements ``pi`` of ``rep * <gens>`` with
``color(pi(x)) == color(x)`` for every ``x`` in ``b``.  The answer is either
``EMPTY`` or a left coset ``rho * K`` where ``K`` is the color-preserving
subgroup of ``<gens>``, so it is again returned as a ``Coset``.

The recursion splits ``b`` into orbits (intransitive case) or along a minimal
two-block system (transitive case).  In the transitive case the two halves
``sigma*H`` and ``sigma*tau*H`` are solved separately and glued back with the
single extra generator ``rho1^-1 * rho2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .blocks import (NotATwoGroupError, StructureTree, TreeNode, local_action, orbit_labels,
                     split_index2, structure_tree, two_block_split)
from .group import group_order
from .perm import Permutation

log = logging.getLogger(__name__)

__all__ = ["Coset", "EMPTY", "ColoredDomain", "c_b", "color_count_precheck", "union",
           "NotATwoGroupError"]


@dataclass(frozen=True)
class Coset:
    """``rep * <gens>``, or the empty set when ``rep`` is None.

    ``smooth`` records that ``gens`` is a smooth generating sequence, which
    lets the index-2 subgroups be read off without a stabilizer chain.
    """
    rep: Permutation | None
    gens: tuple[Permutation, ...] = ()
    smooth: bool = False

    @property
    def is_empty(self) -> bool:
        return self.rep is None

    def __bool__(self):
        return self.rep is not None

    @classmethod
    def of_group(cls, gens: Sequence[Permutation], degree: int, smooth: bool = False) -> "Coset":
        return cls(Permutation.identity(degree), tuple(gens), smooth)


EMPTY = Coset(None)


def union(a: Coset, b: Coset) -> Coset:
    """Union of two cosets of the same subgroup, at least one non-empty or both empty.

    ``a = rho1*K`` and ``b = rho2*K`` with ``rho1^-1 rho2`` outside K merge into
    ``rho1 * <K, rho1^-1 rho2>``; K has index 2 in the result, so smoothness
    is kept.
    """
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    x = a.rep.inverse() * b.rep
    gens = a.gens if x.is_identity() else a.gens + (x,)
    return Coset(a.rep, gens, a.smooth and b.smooth)


@dataclass
class ColoredDomain:
    """Colored alphabet with an action of permutations of the base points.

    Element ``i`` of the alphabet is either a base point (an int) or a
    subset of base points (a sorted tuple).  When the alphabet starts with
    the base points ``0..n-1`` in order, lifted permutations restrict back
    to base permutations by truncation.
    """
    colors: np.ndarray
    base_degree: int
    alphabet: tuple | None = None
    _pad: np.ndarray | None = field(default=None, repr=False)
    _keys: np.ndarray | None = field(default=None, repr=False)
    _key_order: np.ndarray | None = field(default=None, repr=False)
    _n_points: int = field(default=0, repr=False)

    def __post_init__(self):
        self.colors = np.asarray(self.colors, dtype=np.intp)
        if self.alphabet is None:
            self._n_points = self.base_degree
            return
        n = self.base_degree
        pts = [x for x in self.alphabet if isinstance(x, (int, np.integer))]
        self._n_points = len(pts)
        if pts != list(range(len(pts))):
            raise ValueError("point elements must come first, as 0..k-1")
        subsets = self.alphabet[len(pts):]
        width = max((len(s) for s in subsets), default=1)
        pad = np.full((len(subsets), width), n, dtype=np.intp)
        for i, s in enumerate(subsets):
            pad[i, :len(s)] = s
        self._pad = pad
        keys = self._encode(pad)
        self._key_order = np.argsort(keys)
        self._keys = keys[self._key_order]
        if np.unique(self._keys).size != self._keys.size:
            raise ValueError("duplicate alphabet elements")

    @classmethod
    def from_colors(cls, colors: Iterable[int]) -> "ColoredDomain":
        colors = np.asarray(list(colors), dtype=np.intp)
        return cls(colors, colors.size)

    @property
    def size(self) -> int:
        return self.colors.size

    @property
    def n_colors(self) -> int:
        return int(self.colors.max()) + 1 if self.colors.size else 1

    def _encode(self, rows: np.ndarray) -> np.ndarray:
        base = self.base_degree + 1
        key = np.zeros(rows.shape[0], dtype=np.int64)
        for j in range(rows.shape[1]):
            key = key * base + rows[:, j]
        return key

    def lift(self, p: Permutation) -> Permutation:
        """The permutation of the alphabet induced by a base permutation."""
        if self.alphabet is None:
            return p
        if p.degree != self.base_degree:
            raise ValueError("degree mismatch")
        ext = np.append(p.images, self.base_degree)
        img = np.sort(ext[self._pad], axis=1)
        keys = self._encode(img)
        pos = np.searchsorted(self._keys, keys)
        pos[pos == self._keys.size] = 0
        if not (self._keys[pos] == keys).all():
            raise ValueError("alphabet is not stable under the permutation")
        out = np.concatenate([p.images[:self._n_points], self._n_points + self._key_order[pos]])
        return Permutation._wrap(out)

    def restrict(self, q: Permutation) -> Permutation:
        """Inverse of ``lift`` on lifted permutations (faithful when all points are in the alphabet)."""
        if self.alphabet is None:
            return q
        if self._n_points != self.base_degree:
            raise ValueError("alphabet does not contain every base point")
        return Permutation._wrap(q.images[:self.base_degree].copy())

    def index_of(self, element) -> int:
        if isinstance(element, (int, np.integer)):
            if not 0 <= element < self._n_points:
                raise KeyError(element)
            return int(element)
        row = np.full((1, self._pad.shape[1]), self.base_degree, dtype=np.intp)
        row[0, :len(element)] = sorted(element)
        key = self._encode(row)[0]
        pos = int(np.searchsorted(self._keys, key))
        if pos == self._keys.size or self._keys[pos] != key:
            raise KeyError(element)
        return self._n_points + int(self._key_order[pos])


def _precheck(colors: np.ndarray, ncolors: int, rep: Permutation, pts: np.ndarray):
    """True: whole coset survives (monochrome).  False: provably empty.  None: recurse."""
    cb = colors[pts]
    cs = colors[rep.images[pts]]
    c0 = cb[0]
    if (cb == c0).all():
        return bool((cs == c0).all())
    if not np.array_equal(np.bincount(cb, minlength=ncolors), np.bincount(cs, minlength=ncolors)):
        return False
    return None


def color_count_precheck(coset: Coset, b: Iterable[int], domain: ColoredDomain) -> str:
    """``"empty"`` when color counts on b and rep(b) differ, ``"monochrome"`` when
    b and rep(b) share a single color, else ``"inconclusive"``."""
    pts = np.unique(np.asarray(list(b), dtype=np.intp))
    if coset.is_empty or pts.size == 0:
        return "inconclusive"
    res = _precheck(domain.colors, domain.n_colors, coset.rep, pts)
    return {True: "monochrome", False: "empty", None: "inconclusive"}[res]


class _Search:
    def __init__(self, colors: np.ndarray, ncolors: int, smooth: bool):
        self.colors = colors
        self.ncolors = ncolors
        self.smooth = smooth
        self.calls = 0

    # -- direct recursion: orbits and blocks computed on demand --

    def direct(self, rep, gens, pts):
        self.calls += 1
        pre = _precheck(self.colors, self.ncolors, rep, pts)
        if pre is not None:
            return (rep, gens) if pre else None
        loc = local_action(gens, pts)
        ident = np.arange(pts.size)
        moving = [(g, lg) for g, lg in zip(gens, loc) if not (lg == ident).all()]
        k, labels = orbit_labels([lg for _, lg in moving], pts.size)
        if k > 1:
            cur = (rep, gens)
            for i in range(k):
                cur = self.direct(cur[0], cur[1], pts[labels == i])
                if cur is None:
                    return None
            return cur
        left, right = two_block_split([g for g, _ in moving], pts, [lg for _, lg in moving])
        return self._transitive(rep, gens, left, right, None)

    def _transitive(self, rep, gens, left, right, node):
        lset = frozenset(left.tolist()) if node is None else node.left_set
        probe = int(left[0])
        tau, sub = split_index2(gens, lambda g: int(g.images[probe]) in lset, self.smooth)
        halves = []
        for sigma in (rep, rep * tau):
            if node is None:
                r = self.direct(sigma, sub, left)
                r = r and self.direct(r[0], r[1], right)
            else:
                r = self.guided(sigma, sub, node.left)
                r = r and self.guided(r[0], r[1], node.right)
            halves.append(r)
        r1, r2 = halves
        if r1 is None:
            return r2
        if r2 is None:
            return r1
        x = r1[0].inverse() * r2[0]
        return r1[0], r1[1] + [x]

    # -- recursion guided by a precomputed structure tree --

    def guided(self, rep, gens, node: TreeNode):
        while True:
            self.calls += 1
            pre = _precheck(self.colors, self.ncolors, rep, node.points)
            if pre is not None:
                return (rep, gens) if pre else None
            if node.kind == "transitive":
                probe, lset = node.probe, node.left_set
                if any(int(g.images[probe]) not in lset for g in gens):
                    return self._transitive(rep, gens, node.left.points, node.right.points, node)
            # intransitive node, or a transitive one whose halves are no longer swapped
            r = self.guided(rep, gens, node.left)
            if r is None:
                return None
            rep, gens = r
            node = node.right


def c_b(coset: Coset, b: Iterable[int], domain: ColoredDomain, mode: str = "direct",
        tree: StructureTree | None = None, verify_two_group: bool = False) -> Coset:
    """Color-preserving part of ``coset`` on the stable set ``b``.

    ``mode="direct"`` finds orbits and block systems as the recursion goes;
    ``mode="tree"`` precomputes a structure tree for ``(b, <gens>)`` (or uses
    ``tree``) and follows it.  Both give the same set of elements.
    """
    if coset.is_empty:
        return EMPTY
    pts = np.unique(np.asarray(list(b) if not isinstance(b, np.ndarray) else b, dtype=np.intp))
    gens = [g for g in coset.gens if not g.is_identity()]
    n = coset.rep.degree
    if any(g.degree != n for g in gens) or domain.size != n:
        raise ValueError("coset and domain degrees differ")
    if pts.size == 0:
        return coset
    local_action(gens, pts)  # raises if b is not stable
    if verify_two_group and gens:
        o = group_order(gens, n)
        if o & (o - 1):
            raise NotATwoGroupError(f"group order {o} is not a power of 2")
    search = _Search(domain.colors, domain.n_colors, coset.smooth)
    if mode == "direct":
        res = search.direct(coset.rep, gens, pts)
    elif mode == "tree":
        if tree is None:
            tree = structure_tree(pts, gens, smooth=coset.smooth)
        res = search.guided(coset.rep, gens, tree.root)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    log.debug("c_b: |b|=%d, %d recursive calls", pts.size, search.calls)
    if res is None:
        return EMPTY
    return Coset(res[0], tuple(res[1]), coset.smooth)
