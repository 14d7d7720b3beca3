"""Orbits, blocks of imprimitivity and structure trees.

The group always acts on integer points (alphabet indices).  Most work is
done on a *local* copy of the action: the acted-on domain is listed in
ascending order and each generator becomes a plain list ``g[i]`` over the
local indices ``0..m-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .group import Sgs, sgs_index2_subgroup, stabilizer_of_blocks
from .perm import Permutation


class NotTransitiveError(ValueError):
    pass


class NotATwoGroupError(ValueError):
    pass


def _as_points(domain: Iterable[int]) -> np.ndarray:
    pts = np.unique(np.asarray(list(domain) if not isinstance(domain, np.ndarray) else domain,
                               dtype=np.intp))
    return pts


def local_images(g: Permutation, pts: np.ndarray) -> np.ndarray | None:
    """Local image array of ``g`` on the sorted point array, or None if ``pts`` is not g-stable."""
    img = g.images[pts]
    pos = np.searchsorted(pts, img)
    pos[pos == pts.size] = 0
    if not (pts[pos] == img).all():
        return None
    return pos


def local_action(generators: Sequence[Permutation], pts: np.ndarray) -> list[np.ndarray]:
    out = []
    for g in generators:
        loc = local_images(g, pts)
        if loc is None:
            raise ValueError("domain is not stable under the generators")
        out.append(loc)
    return out


def orbit_labels(local_gens: Sequence[np.ndarray], m: int) -> tuple[int, np.ndarray]:
    """Connected components of the orbit graph; labels are numbered by smallest member."""
    if m == 0:
        return 0, np.zeros(0, dtype=np.intp)
    moving = [g for g in local_gens if not (g == np.arange(m)).all()]
    if not moving:
        return m, np.arange(m)
    rows = np.tile(np.arange(m), len(moving))
    cols = np.concatenate(moving)
    adj = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(m, m))
    k, labels = connected_components(adj, directed=True, connection="weak")
    # renumber components by first occurrence so label order follows the smallest point
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    remap = np.empty(k, dtype=np.intp)
    remap[order] = np.arange(k)
    return k, remap[labels]


def orbits(generators: Sequence[Permutation], domain: Iterable[int]) -> list[tuple[int, ...]]:
    """Partition ``domain`` into orbits of the generated group, ordered by least point."""
    pts = _as_points(domain)
    loc = local_action(generators, pts)
    k, labels = orbit_labels(loc, pts.size)
    out = [[] for _ in range(k)]
    for x, lab in zip(pts.tolist(), labels.tolist()):
        out[lab].append(x)
    return [tuple(o) for o in out]


def _smallest_block_local(gens: Sequence[list[int]], m: int, a: int, omega: int,
                          cap: int | None = None) -> list[int] | None:
    """Atkinson's merge procedure on local points.

    Returns the class representative (least member) of every point; the class
    of ``a`` is the smallest block containing ``a`` and ``omega``.  With ``cap``
    set, gives up (returns None) as soon as some class grows beyond ``cap``.
    """
    f = list(range(m))
    size = [1] * m

    def find(x):
        root = x
        while f[root] != root:
            root = f[root]
        while f[x] != root:
            f[x], x = root, f[x]
        return root

    def merge(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return None
        if ry < rx:
            rx, ry = ry, rx
        f[ry] = rx
        size[rx] += size[ry]
        return ry

    lost = merge(a, omega)
    pending = [lost]
    if cap is not None and size[find(a)] > cap:
        return None
    while pending:
        beta = pending.pop()
        for g in gens:
            alpha = find(beta)
            lost = merge(g[alpha], g[beta])
            if lost is not None:
                if cap is not None and size[f[lost]] > cap:
                    return None
                pending.append(lost)
    return [find(x) for x in range(m)]


def minimal_partition_local(gens: Sequence[list[int]], m: int) -> list[int]:
    """Block index of each local point for a minimal block system of a transitive action.

    Tries omega = 1, 2, ... until the smallest block containing {0, omega} is
    proper, then repeats on the induced action on blocks until that is primitive.
    """
    label = list(range(m))
    cur_gens = [list(g) for g in gens]
    cur_m = m
    while cur_m > 2:
        found = None
        for omega in range(1, cur_m):
            reps = _smallest_block_local(cur_gens, cur_m, 0, omega, cap=cur_m // 2)
            if reps is not None:
                found = reps
                break
        if found is None:
            break
        roots = sorted(set(found))
        idx = {r: i for i, r in enumerate(roots)}
        cls = [idx[r] for r in found]
        cur_gens = [[cls[g[r]] for r in roots] for g in cur_gens]
        label = [cls[c] for c in label]
        cur_m = len(roots)
    return label


@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple[tuple[int, ...], ...]
    block_of: dict = field(compare=False, repr=False)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "BlockSystem":
        bl = tuple(sorted(tuple(sorted(b)) for b in blocks))
        return cls(bl, {x: i for i, b in enumerate(bl) for x in b})

    def __len__(self):
        return len(self.blocks)


def _transitive_local(generators, domain):
    pts = _as_points(domain)
    loc = local_action(generators, pts)
    k, _ = orbit_labels(loc, pts.size)
    if k > 1:
        raise NotTransitiveError("group is not transitive on the domain")
    return pts, loc


def smallest_block(generators: Sequence[Permutation], base_point: int, omega: int,
                   domain: Iterable[int] | None = None) -> tuple[int, ...]:
    """Smallest block containing ``{base_point, omega}``.

    ``domain`` defaults to the orbit of ``base_point``; the group must be
    transitive on it.
    """
    if base_point == omega:
        raise ValueError("omega must differ from the base point")
    if domain is None:
        domain = next(o for o in orbits(generators, range(generators[0].degree)) if base_point in o) \
            if generators else (base_point,)
    pts, loc = _transitive_local(generators, domain)
    where = {x: i for i, x in enumerate(pts.tolist())}
    if base_point not in where or omega not in where:
        raise NotTransitiveError("points are not in one orbit")
    a, w = where[base_point], where[omega]
    gens = [g.tolist() for g in loc]
    reps = _smallest_block_local(gens, pts.size, a, w)
    root = reps[a]
    return tuple(int(pts[i]) for i in range(pts.size) if reps[i] == root)


def minimal_block_system(generators: Sequence[Permutation], orbit: Iterable[int]) -> BlockSystem:
    """Block system on which the group acts primitively (2 blocks for a 2-group)."""
    pts, loc = _transitive_local(generators, orbit)
    labels = minimal_partition_local([g.tolist() for g in loc], pts.size)
    k = max(labels) + 1
    blocks = [[] for _ in range(k)]
    for x, lab in zip(pts.tolist(), labels):
        blocks[lab].append(x)
    return BlockSystem.from_blocks(blocks)


def block_stabilizer(generators: Sequence[Permutation], system: BlockSystem) -> list[Permutation]:
    """Generators of the subgroup fixing every block of ``system`` setwise."""
    for g in generators:
        for blk in system.blocks:
            tgt = system.block_of[g(blk[0])]
            if any(system.block_of.get(g(x)) != tgt for x in blk):
                raise ValueError("not a block system for the group")
    return stabilizer_of_blocks(generators, system.blocks)


def split_index2(generators: Sequence[Permutation], member, smooth: bool
                 ) -> tuple[Permutation, list[Permutation]]:
    """(tau, generators of H) for an index-2 subgroup H given by ``member``."""
    if smooth:
        tau, sub = sgs_index2_subgroup(Sgs(tuple(generators)), member)
        return tau, [b for b in sub if not b.is_identity()]
    tau = next(g for g in generators if not member(g))
    from .group import subgroup_generators
    return tau, subgroup_generators(generators, member, 2)


class TreeNode:
    """Node of a structure tree; ``points`` is the node's subset of the domain."""

    __slots__ = ("points", "kind", "left", "right", "left_set", "probe")

    def __init__(self, points: np.ndarray, kind: str = "leaf"):
        self.points = points
        self.kind = kind
        self.left: TreeNode | None = None
        self.right: TreeNode | None = None
        self.left_set: frozenset[int] | None = None
        self.probe: int | None = None

    @property
    def subset(self) -> tuple[int, ...]:
        return tuple(self.points.tolist())

    @property
    def children(self) -> list["TreeNode"]:
        return [c for c in (self.left, self.right) if c is not None]

    def __repr__(self):
        return f"TreeNode({self.kind}, {self.subset})"


@dataclass
class StructureTree:
    root: TreeNode

    def nodes(self) -> list[TreeNode]:
        out, stack = [], [self.root]
        while stack:
            nd = stack.pop()
            out.append(nd)
            stack.extend(reversed(nd.children))
        return out

    def leaves(self) -> list[TreeNode]:
        return [nd for nd in self.nodes() if nd.kind == "leaf"]

    def levels(self) -> list[list[TreeNode]]:
        """Nodes grouped by depth."""
        out, layer = [], [self.root]
        while layer:
            out.append(layer)
            layer = [c for nd in layer for c in nd.children]
        return out


def _set_transitive(node: TreeNode, left: TreeNode, right: TreeNode) -> None:
    node.kind = "transitive"
    node.left, node.right = left, right
    node.probe = int(left.points[0])
    node.left_set = frozenset(left.points.tolist())


def _image(node: TreeNode, tau: Permutation) -> TreeNode:
    """Copy of a subtree with every subset mapped through ``tau``."""
    img = tau.images
    root = TreeNode(np.sort(img[node.points]), node.kind)
    stack = [(node, root)]
    while stack:
        src, dst = stack.pop()
        if src.left is None:
            continue
        dst.left = TreeNode(np.sort(img[src.left.points]), src.left.kind)
        dst.right = TreeNode(np.sort(img[src.right.points]), src.right.kind)
        if src.kind == "transitive":
            _set_transitive(dst, dst.left, dst.right)
        stack.append((src.left, dst.left))
        stack.append((src.right, dst.right))
    return root


def two_block_split(gens: Sequence[Permutation], pts: np.ndarray,
                    loc: Sequence[np.ndarray] | None = None) -> tuple[np.ndarray, np.ndarray]:
    """The two blocks (left holds the least point) of a minimal system of a transitive 2-group."""
    if loc is None:
        loc = local_action(gens, pts)
    labels = minimal_partition_local([g.tolist() for g in loc], pts.size)
    if max(labels) != 1:
        raise NotATwoGroupError(
            f"minimal block system has {max(labels) + 1} blocks; the group is not a 2-group")
    lab = np.asarray(labels)
    return pts[lab == 0], pts[lab == 1]


def structure_tree(domain: Iterable[int], generators: Sequence[Permutation],
                   smooth: bool = False) -> StructureTree:
    """Binary tree over ``domain`` (a stable set of a 2-group) guiding the coset recursion.

    Transitive nodes split along a minimal 2-block system and the right subtree
    is the image of the left one under some tau outside the block stabilizer;
    intransitive nodes split off the orbit of the least point.
    """
    pts = _as_points(domain)
    root = TreeNode(pts)
    work = [(root, list(generators))]
    mirrors = []
    while work:
        node, gens = work.pop()
        p = node.points
        if p.size == 1:
            continue
        loc = local_action(gens, p)
        k, labels = orbit_labels(loc, p.size)
        if k > 1:
            # chain of intransitive nodes: first orbit vs. the rest
            groups = [p[labels == i] for i in range(k)]
            cur = node
            for i in range(k - 1):
                cur.kind = "intransitive"
                cur.left = TreeNode(groups[i])
                rest = np.concatenate(groups[i + 1:]) if i < k - 2 else groups[-1]
                cur.right = TreeNode(np.sort(rest))
                work.append((cur.left, gens))
                cur = cur.right
            work.append((cur, gens))
            continue
        left_pts, right_pts = two_block_split(gens, p, loc)
        lset = frozenset(left_pts.tolist())
        probe = int(left_pts[0])
        tau, sub = split_index2(gens, lambda g: g(probe) in lset, smooth)
        node.left = TreeNode(left_pts)
        work.append((node.left, sub))
        # the right subtree is the tau-image of the left one, copied once that is complete
        mirrors.append((node, tau))
    for node, tau in reversed(mirrors):
        _set_transitive(node, node.left, _image(node.left, tau))
    return StructureTree(root)
