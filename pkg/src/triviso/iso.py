"""Isomorphism test for connected graphs of valence at most 3.

Fix the smallest edge e1 of g1.  For each edge e2 of g2, merge the two graphs
across e1 and e2 and compute generators of Aut_e of the merged graph; the
graphs are isomorphic with e1 -> e2 exactly when some generator swaps the
two subdivision vertices.  The elements fixing them form a subgroup of
index at most 2, so a generating set of a group that contains a swap must
itself contain one.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Sequence

from .autengine import aut_e
from .graphcore import Graph, build_x, require_valid

log = logging.getLogger(__name__)


def verify_mapping(g1: Graph, g2: Graph, mapping: Sequence[int]) -> bool:
    """True iff ``mapping`` is a bijection carrying the edges of g1 exactly onto those of g2."""
    n = g1.n
    if g2.n != n or len(mapping) != n:
        return False
    if sorted(mapping) != list(range(n)):
        return False
    e1 = g1.edge_set()
    e2 = g2.edge_set()
    if len(e1) != len(e2):
        return False
    for u, v in e1:
        a, b = mapping[u], mapping[v]
        if (min(a, b), max(a, b)) not in e2:
            return False
    return True


def edge_profile(g: Graph, e: Sequence[int]) -> tuple:
    """Breadth-first layer statistics around the edge e.

    Per layer: vertex count, edges inside the layer, edges to the previous
    layer, and twin-pair count.  Any isomorphism sending e to e' preserves it.
    """
    a, b = e
    level = [-1] * g.n
    level[a] = level[b] = 0
    order = [a, b]
    dq = deque(order)
    while dq:
        u = dq.popleft()
        for w in g.adjacency[u]:
            if level[w] < 0:
                level[w] = level[u] + 1
                order.append(w)
                dq.append(w)
    depth = max(level) + 1
    sizes = [0] * depth
    inner = [0] * depth
    down = [0] * depth
    parents: list[dict] = [dict() for _ in range(depth)]
    for v in range(g.n):
        lv = level[v]
        sizes[lv] += 1
        ps = []
        for w in g.adjacency[v]:
            if level[w] == lv and v < w:
                inner[lv] += 1
            elif level[w] == lv - 1:
                down[lv] += 1
                ps.append(w)
        if lv:
            key = tuple(sorted(ps))
            parents[lv][key] = parents[lv].get(key, 0) + 1
    twins = [sum(1 for c in p.values() if c == 2) for p in parents]
    return tuple(zip(sizes, inner, down, twins))


def _degree_signature(g: Graph) -> tuple:
    return tuple(sorted(g.degrees()))


def isomorphic(g1: Graph, g2: Graph, want_mapping: bool = False, mode: str = "direct",
               prefilter: bool = True) -> tuple[bool, list[int] | None]:
    """Decide whether g1 and g2 are isomorphic.

    Returns ``(answer, mapping)``; ``mapping[v]`` is the image in g2 of vertex
    v of g1 and is only filled in when ``want_mapping`` is set.  With
    ``prefilter`` the candidate edges e2 whose layer profile differs from that
    of e1 are skipped without running the group computation.
    """
    require_valid(g1, 3, "first graph")
    require_valid(g2, 3, "second graph")
    if g1.n != g2.n or len(g1.edges()) != len(g2.edges()):
        return False, None
    if _degree_signature(g1) != _degree_signature(g2):
        return False, None
    if g1.n <= 2:
        return True, (list(range(g1.n)) if want_mapping else None)
    e1 = g1.edges()[0]
    target = edge_profile(g1, e1) if prefilter else None
    n1 = g1.n
    for e2 in g2.edges():
        if prefilter and edge_profile(g2, e2) != target:
            continue
        x = build_x(g1, e1, g2, e2)
        res = aut_e(x, early_swap_probe=(x.v1, x.v2), mode=mode)
        if res.witness is None:
            continue
        log.debug("isomorphic: e1=%s maps to e2=%s", e1, e2)
        img = res.witness.images
        mapping = [int(img[v]) - n1 for v in range(n1)]
        if not verify_mapping(g1, g2, mapping):
            raise RuntimeError("witness does not restrict to an isomorphism")
        return True, (mapping if want_mapping else None)
    return False, None


def are_isomorphic(g1: Graph, g2: Graph, **kw) -> bool:
    return isomorphic(g1, g2, **kw)[0]
