"""Isomorphism of rooted trees whose leaves carry distinct taxon labels.

Leaf labels pin the image of every leaf, so a single bottom-up pass decides
the question: each node's image is forced to be the parent of its children's
images, and all children must agree.  The pass runs one depth layer at a time
so that each step is a vectorized numpy operation.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class PhyloError(ValueError):
    pass


@dataclass(frozen=True)
class PhyloTree:
    """Rooted tree on nodes ``0..n-1``.

    ``parent[root] == -1``; ``taxa[x]`` is the leaf carrying taxon ``x``.
    """
    parent: tuple[int, ...]
    root: int
    taxa: dict

    def __post_init__(self):
        n = len(self.parent)
        if not 0 <= self.root < n or self.parent[self.root] != -1:
            raise PhyloError("root must be the unique node without parent")
        kids = self.children()
        for v, p in enumerate(self.parent):
            if v != self.root and not 0 <= p < n:
                raise PhyloError(f"node {v} has invalid parent {p}")
        if len(self._postorder(kids)) != n:
            raise PhyloError("parent map is not a tree rooted at root")
        leaves = {v for v in range(n) if not kids[v]}
        if set(self.taxa.values()) != leaves or len(self.taxa) != len(leaves):
            raise PhyloError("taxa must label every leaf exactly once")

    @property
    def size(self) -> int:
        return len(self.parent)

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(v)
        return kids

    def _postorder(self, kids) -> list[int]:
        out = []
        stack = [(self.root, False)]
        seen = 0
        while stack:
            v, done = stack.pop()
            if done:
                out.append(v)
                continue
            seen += 1
            if seen > len(self.parent):
                break
            stack.append((v, True))
            for c in reversed(kids[v]):
                stack.append((c, False))
        return out

    def postorder(self) -> list[int]:
        return self._postorder(self.children())

    def relabeled(self, mapping: Sequence[int]) -> "PhyloTree":
        """Same tree with node ``v`` renamed to ``mapping[v]``."""
        parent = [0] * self.size
        for v, p in enumerate(self.parent):
            parent[mapping[v]] = -1 if p < 0 else mapping[p]
        return PhyloTree(tuple(parent), mapping[self.root],
                         {t: mapping[v] for t, v in self.taxa.items()})


_TOKEN = re.compile(r"\s*([(),]|[^(),]+)")


def parse_newick(text: str) -> PhyloTree:
    """Parse e.g. ``((a,b),(c,d));``.  Internal labels and branch lengths are ignored."""
    s = text.strip()
    if s.endswith(";"):
        s = s[:-1]
    tokens = [t.strip() for t in _TOKEN.findall(s)]
    tokens = [t for t in tokens if t]
    if not tokens:
        raise PhyloError("empty tree")
    parent: list[int] = []
    taxa: dict = {}
    stack: list[int] = []
    prev = None

    def new_node() -> int:
        if not stack and parent:
            raise PhyloError("text continues after the root is closed")
        p = stack[-1] if stack else -1
        parent.append(p)
        return len(parent) - 1

    for tok in tokens:
        if tok == "(":
            if prev not in (None, "(", ","):
                raise PhyloError("'(' must start a subtree")
            stack.append(new_node())
        elif tok == ",":
            if not stack or prev in ("(", ","):
                raise PhyloError("misplaced ','")
        elif tok == ")":
            if not stack or prev in ("(", ","):
                raise PhyloError("misplaced ')'")
            stack.pop()
        elif prev == ")":
            pass  # internal node label or branch length
        else:
            label = tok.split(":", 1)[0].strip()
            if not label:
                raise PhyloError("leaf without a label")
            if label in taxa:
                raise PhyloError(f"taxon {label!r} repeated")
            taxa[label] = new_node()
        prev = tok
    if stack:
        raise PhyloError("unbalanced parentheses")
    return PhyloTree(tuple(parent), 0, taxa)


def format_newick(t: PhyloTree) -> str:
    name = {v: x for x, v in t.taxa.items()}
    kids = t.children()
    parts: dict[int, str] = {}
    for v in t.postorder():
        parts[v] = str(name[v]) if not kids[v] else "(" + ",".join(parts.pop(c) for c in kids[v]) + ")"
    return parts[t.root] + ";"


def _depth_layers(parent: np.ndarray, root: int) -> list[np.ndarray]:
    """Nodes grouped by depth, root layer first."""
    n = len(parent)
    kids = np.flatnonzero(parent >= 0)
    by_parent = kids[np.argsort(parent[kids], kind="stable")]
    counts = np.bincount(parent[kids], minlength=n)
    starts = np.cumsum(counts) - counts
    layers = [np.array([root])]
    while True:
        front = layers[-1]
        c = counts[front]
        total = int(c.sum())
        if total == 0:
            return layers
        # concatenate the child slices of every node in the front
        offsets = np.repeat(starts[front] - (np.cumsum(c) - c), c) + np.arange(total)
        layers.append(by_parent[offsets])


def phylo_isomorphic(t1: PhyloTree, t2: PhyloTree) -> list[int] | None:
    """Node mapping ``phi`` (a list, ``phi[v]`` in t2) or None when the trees differ.

    Raises ``PhyloError`` if the two trees carry different taxa.
    """
    if t1.taxa.keys() != t2.taxa.keys():
        raise PhyloError("the trees have different taxa")
    n = t1.size
    if t2.size != n:
        return None
    leaf_image = np.full(n, -1, dtype=np.int64)
    leaf_image[np.fromiter(t1.taxa.values(), np.int64)] = np.fromiter(map(t2.taxa.__getitem__, t1.taxa), np.int64)
    p1 = np.asarray(t1.parent, dtype=np.int64)
    p2 = np.asarray(t2.parent, dtype=np.int64)
    phi = leaf_image
    # deepest layer first, so every node's image is known before its parent's
    for layer in reversed(_depth_layers(p1, t1.root)[1:]):
        target = p2[phi[layer]]
        if (target < 0).any():
            return None
        up = p1[layer]
        phi[up] = target
        if not np.array_equal(phi[up], target):
            return None
    if phi[t1.root] != t2.root or np.bincount(phi, minlength=n).max(initial=0) > 1:
        return None
    return phi.tolist()


def random_phylo_tree(n_nodes: int, rng: random.Random | None = None) -> PhyloTree:
    """Random rooted tree by uniform attachment; leaves get taxa ``t<node>``."""
    rng = rng or random.Random(0)
    parent = [-1] + [rng.randrange(i) for i in range(1, n_nodes)]
    has_kid = [False] * n_nodes
    for p in parent[1:]:
        has_kid[p] = True
    taxa = {f"t{v}": v for v in range(n_nodes) if not has_kid[v]}
    return PhyloTree(tuple(parent), 0, taxa)
