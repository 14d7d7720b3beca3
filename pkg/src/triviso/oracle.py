"""Exhaustive reference implementations for tests.

Everything here is deliberately naive: enumeration and backtracking with hard
size guards.  None of it shares code with the fast paths beyond the
Permutation type.
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from typing import Iterable, Sequence

from .graphcore import Graph
from .perm import Permutation, generated_elements


class OracleSizeError(ValueError):
    """Input too large for exhaustive search."""


class OracleDisagreement(RuntimeError):
    """Two independent exhaustive constructions gave different answers."""


def _guard(value: int, bound: int, what: str) -> None:
    if value > bound:
        raise OracleSizeError(f"{what} = {value} exceeds the oracle limit {bound}")


# -- graphs --

def _extensions(g1: Graph, g2: Graph, order: list[int], fixed: dict[int, int]):
    """Yield every adjacency-preserving bijection V(g1) -> V(g2) extending ``fixed``."""
    n = g1.n
    adj1 = [set(a) for a in g1.adjacency]
    adj2 = [set(a) for a in g2.adjacency]
    phi = dict(fixed)
    used = set(phi.values())
    todo = [v for v in order if v not in phi]

    def consistent(v, w):
        if len(adj1[v]) != len(adj2[w]):
            return False
        for u, x in phi.items():
            if (u in adj1[v]) != (x in adj2[w]):
                return False
        return True

    for v, w in fixed.items():
        if not consistent(v, w):
            return

    def rec(i):
        if i == len(todo):
            yield [phi[v] for v in range(n)]
            return
        v = todo[i]
        for w in range(n):
            if w not in used and consistent(v, w):
                phi[v] = w
                used.add(w)
                yield from rec(i + 1)
                used.discard(w)
                del phi[v]

    yield from rec(0)


def _bfs_order(g: Graph, starts: Sequence[int] = (0,)) -> list[int]:
    seen = list(dict.fromkeys(starts))
    mark = set(seen)
    i = 0
    while len(seen) < g.n:
        if i == len(seen):
            v = next(x for x in range(g.n) if x not in mark)
            seen.append(v)
            mark.add(v)
        for w in g.adjacency[seen[i]]:
            if w not in mark:
                mark.add(w)
                seen.append(w)
        i += 1
    return seen


def brute_iso_mapping(g1: Graph, g2: Graph, limit: int = 10) -> list[int] | None:
    _guard(max(g1.n, g2.n), limit, "vertex count")
    if g1.n != g2.n or len(g1.edges()) != len(g2.edges()):
        return None
    if g1.n == 0:
        return []
    return next(_extensions(g1, g2, _bfs_order(g1), {}), None)


def brute_iso(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism test by backtracking (at most 10 vertices)."""
    return brute_iso_mapping(g1, g2) is not None


def brute_aut_e(g: Graph, e: Sequence[int], limit: int = 12) -> list[Permutation]:
    """All automorphisms of ``g`` mapping the edge ``e`` to itself."""
    _guard(g.n, limit, "vertex count")
    a, b = e
    if not g.has_edge(a, b):
        raise ValueError(f"edge {(a, b)} not in graph")
    order = _bfs_order(g, (a, b))
    out = []
    for fixed in ({a: a, b: b}, {a: b, b: a}):
        out.extend(Permutation(m) for m in _extensions(g, g, order, fixed))
    return out


def _invariant(g: Graph) -> tuple:
    deg = g.degrees()
    adj = [set(x) for x in g.adjacency]
    tri = [sum(1 for u, w in itertools.combinations(adj[v], 2) if w in adj[u]) for v in range(g.n)]
    return tuple(sorted((deg[v], tri[v], tuple(sorted(deg[w] for w in adj[v]))) for v in range(g.n)))


def connected_subcubic_graphs(n: int) -> list[Graph]:
    """One graph per isomorphism class of connected simple graphs with max degree <= 3.

    Every such graph arises from one on n-1 vertices by adding a vertex joined
    to 1, 2 or 3 existing vertices (remove a leaf of a spanning tree).
    """
    _guard(n, 10, "vertex count")
    if n <= 0:
        return []
    level = [Graph.from_edges([], 1)]
    for k in range(2, n + 1):
        buckets: dict[tuple, list[Graph]] = defaultdict(list)
        found = []
        for g in level:
            free = [v for v in range(k - 1) if g.degree(v) < 3]
            for size in (1, 2, 3):
                for nb in itertools.combinations(free, size):
                    h = Graph.from_edges(g.edges() + [(v, k - 1) for v in nb], k)
                    key = _invariant(h)
                    if any(brute_iso(h, other) for other in buckets[key]):
                        continue
                    buckets[key].append(h)
                    found.append(h)
        level = found
    return level


# -- groups --

def brute_color_aut(generators: Sequence[Permutation], colors: Sequence[int], b: Iterable[int],
                    sigma: Permutation | None = None, degree: int | None = None,
                    limit: int = 4096) -> set[Permutation]:
    """Elements of ``sigma * <generators>`` preserving colors on every point of b."""
    if degree is None:
        degree = sigma.degree if sigma is not None else generators[0].degree
    elems = generated_elements(list(generators), degree, limit=limit)
    if sigma is None:
        sigma = Permutation.identity(degree)
    b = list(b)
    out = set()
    for g in elems:
        p = sigma * g
        if all(colors[p(x)] == colors[x] for x in b):
            out.add(p)
    return out


def _is_block(elems, block: frozenset) -> bool:
    for g in elems:
        img = frozenset(g(x) for x in block)
        if img != block and img & block:
            return False
    return True


def _orbit(elems, x: int) -> set[int]:
    return {g(x) for g in elems}


def brute_smallest_block(generators: Sequence[Permutation], base: int, omega: int,
                         domain: Iterable[int] | None = None, degree: int | None = None,
                         limit: int = 12) -> tuple[int, ...]:
    """Smallest block of the group on ``domain`` containing base and omega.

    Computed twice: by scanning all subsets of the domain, and as the
    connected component of ``base`` in the graph whose edges are the images
    of the pair {base, omega}.
    """
    if degree is None:
        degree = generators[0].degree
    elems = generated_elements(list(generators), degree)
    dom = sorted(set(domain)) if domain is not None else sorted(_orbit(elems, base))
    _guard(len(dom), limit, "domain size")
    rest = [x for x in dom if x not in (base, omega)]
    by_subsets = None
    for size in range(len(rest) + 1):
        for extra in itertools.combinations(rest, size):
            blk = frozenset((base, omega) + extra)
            if _is_block(elems, blk):
                by_subsets = blk
                break
        if by_subsets is not None:
            break
    adj: dict[int, set[int]] = defaultdict(set)
    for g in elems:
        u, v = g(base), g(omega)
        adj[u].add(v)
        adj[v].add(u)
    comp = {base}
    stack = [base]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in comp:
                comp.add(v)
                stack.append(v)
    if by_subsets is None or frozenset(comp) != by_subsets:
        raise OracleDisagreement(f"subset scan gave {by_subsets}, orbit graph gave {sorted(comp)}")
    return tuple(sorted(comp))


def brute_block_systems(generators: Sequence[Permutation], domain: Iterable[int],
                        degree: int | None = None) -> list[tuple[tuple[int, ...], ...]]:
    """All block systems of a transitive group on ``domain`` (trivial ones included)."""
    if degree is None:
        degree = generators[0].degree
    dom = sorted(set(domain))
    _guard(len(dom), 12, "domain size")
    elems = generated_elements(list(generators), degree)
    base = dom[0]
    out = []
    rest = dom[1:]
    for size in range(len(rest) + 1):
        for extra in itertools.combinations(rest, size):
            blk = frozenset((base,) + extra)
            if len(dom) % len(blk) or not _is_block(elems, blk):
                continue
            system = {frozenset(g(x) for x in blk) for g in elems}
            if set().union(*system) == set(dom):
                out.append(tuple(sorted(tuple(sorted(s)) for s in system)))
    return out


def brute_sgs(generators: Sequence[Permutation], degree: int, limit: int = 4096) -> list[Permutation]:
    """A smooth generating sequence of a 2-group, built greedily from its elements.

    Repeatedly adds an element z normalizing the current subgroup K with
    z^2 in K, so that K has index 2 in <K, z>.
    """
    elems = generated_elements(list(generators), degree, limit=limit)
    order = len(elems)
    if order & (order - 1):
        raise ValueError(f"group order {order} is not a power of 2")
    cands = sorted(elems, key=lambda p: p.images.tobytes())
    k = {Permutation.identity(degree)}
    seq: list[Permutation] = []
    while len(k) < order:
        for z in cands:
            if z in k or z * z not in k:
                continue
            zi = z.inverse()
            if all(z * s * zi in k for s in seq):
                seq.append(z)
                k = k | {z * x for x in k}
                break
        else:
            raise RuntimeError("no normalizing element found")
    return seq


def random_two_group(rng: random.Random, degree: int, max_gens: int = 4) -> list[Permutation]:
    """Random generators of a subgroup of a Sylow 2-subgroup of Sym(degree).

    The moved points are split into chunks of size 2^d, each carrying a
    complete binary tree; a random element swaps the two halves below a
    random subset of tree nodes.
    """
    pts = list(range(degree))
    rng.shuffle(pts)
    used = rng.randint(min(2, degree), degree)
    pts = pts[:used]
    chunks = []
    while len(pts) >= 2:
        top = 1 << (len(pts).bit_length() - 1)
        size = rng.choice([s for s in (2, 4, 8, 16) if s <= top])
        chunks.append(pts[:size])
        pts = pts[size:]
    swaps = []
    for chunk in chunks:
        stack = [chunk]
        while stack:
            seg = stack.pop()
            if len(seg) < 2:
                continue
            h = len(seg) // 2
            img = list(range(degree))
            for x, y in zip(seg[:h], seg[h:]):
                img[x], img[y] = y, x
            swaps.append(Permutation(img))
            stack += [seg[:h], seg[h:]]
    if not swaps:
        return []
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        p = rng.choice([0.15, 0.35, 0.6])
        g = Permutation.identity(degree)
        for s in rng.sample(swaps, len(swaps)):
            if rng.random() < p:
                g = s * g
        gens.append(g)
    return gens


# -- phylogenetic trees --

def brute_tree_iso(t1, t2) -> list[int] | None:
    """Label- and root-preserving isomorphism by top-down search over child orders."""
    if set(t1.taxa) != set(t2.taxa) or t1.size != t2.size:
        return None
    _guard(t1.size, 40, "node count")
    k1, k2 = t1.children(), t2.children()
    name1 = {v: x for x, v in t1.taxa.items()}

    def match(v, w, phi):
        if not k1[v] or not k2[w]:
            if k1[v] or k2[w] or t2.taxa[name1[v]] != w:
                return None
            return {**phi, v: w}
        if len(k1[v]) != len(k2[w]):
            return None
        for perm in itertools.permutations(k2[w]):
            cur = {**phi, v: w}
            for a, b in zip(k1[v], perm):
                cur = match(a, b, cur)
                if cur is None:
                    break
            if cur is not None:
                return cur
        return None

    phi = match(t1.root, t2.root, {})
    if phi is None:
        return None
    return [phi[v] for v in range(t1.size)]


def all_rooted_trees(n_leaves: int) -> list:
    """Every rooted tree shape (no unary nodes) on leaves ``a, b, ...`` up to leaf-respecting isomorphism.

    Built as all hierarchies: a tree is a root whose children partition the
    leaf set into at least two parts, each part itself a tree.
    """
    from .phylo import PhyloTree
    labels = [chr(ord("a") + i) for i in range(n_leaves)]

    def partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for p in partitions(rest):
            yield [[first]] + p
            for i in range(len(p)):
                yield p[:i] + [[first] + p[i]] + p[i + 1:]

    memo: dict[tuple, list] = {}

    def shapes(leaves: tuple):
        # nested tuples: a leaf label, or a tuple of children
        if leaves in memo:
            return memo[leaves]
        if len(leaves) == 1:
            res = [leaves[0]]
        else:
            res = []
            for part in partitions(list(leaves)):
                if len(part) < 2:
                    continue
                for combo in itertools.product(*(shapes(tuple(p)) for p in part)):
                    res.append(tuple(combo))
        memo[leaves] = res
        return res

    out = []
    for shape in shapes(tuple(labels)):
        parent = [-1]
        taxa = {}
        stack = [(shape, 0)]
        while stack:
            node, idx = stack.pop()
            if isinstance(node, str):
                taxa[node] = idx
                continue
            for child in node:
                parent.append(idx)
                stack.append((child, len(parent) - 1))
        out.append(PhyloTree(tuple(parent), 0, taxa))
    return out
