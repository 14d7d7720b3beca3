"""Generators of Aut_e(X), the automorphisms of X mapping the edge e to itself.

The group is grown along the layers X_1 <= X_2 <= ... <= X_m = X.  Going from
X_r to X_{r+1}:

* the kernel of the restriction map consists of products of twin swaps;
* the image is the subgroup of Aut_e(X_r) that preserves a coloring of
  subsets of V_r (new inner edges, neighbor sets of only children, neighbor
  sets of twin pairs), found with ``c_b``;
* each image generator is extended to X_{r+1} by matching children through
  their neighbor sets.

All permutations act on the full vertex set of X and fix vertices outside
the current layer.  The generator sequence stays smooth throughout: kernel
swaps come first, followed by the pullbacks of a smooth image sequence.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .colorauto import ColoredDomain, Coset, c_b
from .graphcore import Graph, GraphError, LayeredGraph, MergedInstance, layer_sequence, layer_sequence_for
from .perm import Permutation

log = logging.getLogger(__name__)

OLD_VERTEX = 0
NEUTRAL = 1


def subset_color(in_new_edges: bool, parent_class: int) -> int:
    """Color of a subset: ``parent_class`` is 0 (no child), 1 (one child) or 2 (twins)."""
    return 1 + 3 * int(in_new_edges) + parent_class


def kernel_generators(layers: LayeredGraph, r: int) -> list[Permutation]:
    """One transposition per twin pair in V_{r+1}."""
    n = layers.instance_graph.n
    return [Permutation.transposition(n, u, v) for u, v in layers.twins(r)]


@dataclass
class LevelDomain:
    """Colored alphabet B_r: all vertices of X, then the subsets A_r.

    ``new_edges``, ``only_child`` and ``twin_parent`` hold the seeds of A_r:
    edges inside V_r that first appear in X_{r+1}, neighbor sets of vertices
    of V_{r+1} without a twin, and neighbor sets shared by a twin pair.
    """
    r: int
    domain: ColoredDomain
    subsets: tuple[tuple[int, ...], ...]
    new_edges: frozenset
    only_child: frozenset
    twin_parent: frozenset

    @property
    def constraint(self) -> np.ndarray:
        """Alphabet indices of A_r."""
        n = self.domain.base_degree
        return np.arange(n, n + len(self.subsets), dtype=np.intp)

    def color_of(self, s: Sequence[int]) -> int:
        return int(self.domain.colors[self.domain.index_of(tuple(sorted(s)))])


def _orbit_closure(seeds: set[tuple[int, ...]], gens: Sequence[Permutation]) -> list[tuple[int, ...]]:
    """Smallest set of subsets containing ``seeds`` and stable under ``gens``."""
    seen = set(seeds)
    frontier = sorted(seeds)
    while frontier:
        nxt = []
        for g in gens:
            img = g.images
            for s in frontier:
                t = tuple(sorted(int(img[x]) for x in s))
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), s))


def level_domain(layers: LayeredGraph, r: int, generators: Sequence[Permutation] = ()) -> LevelDomain:
    """Colored alphabet for the step X_r -> X_{r+1}.

    ``generators`` are the current generators of Aut_e(X_r); the subset part is
    closed under them so that it is a stable set for the color search.
    """
    n = layers.instance_graph.n
    new_edges = frozenset(layers.level(r).inner_edges)
    parents = layers.f(r)
    twin_parent = frozenset(parents[u] for u, _ in layers.twins(r))
    only_child = frozenset(s for s in parents.values() if s not in twin_parent)
    seeds = set(new_edges) | set(only_child) | set(twin_parent)
    subsets = _orbit_closure(seeds, generators)
    colors = [OLD_VERTEX] * n
    for s in subsets:
        cls = 2 if s in twin_parent else 1 if s in only_child else 0
        colors.append(subset_color(s in new_edges, cls))
    dom = ColoredDomain(np.array(colors, dtype=np.intp), n, tuple(range(n)) + tuple(subsets))
    return LevelDomain(r, dom, tuple(subsets), new_edges, only_child, twin_parent)


def image_generators(generators: Sequence[Permutation], dom: LevelDomain, mode: str = "direct",
                     smooth: bool = True) -> list[Permutation]:
    """Generators of the color-preserving subgroup of ``<generators>``."""
    gens = [g for g in generators if not g.is_identity()]
    if not dom.subsets or not gens:
        return gens
    d = dom.domain
    lifted = [d.lift(g) for g in gens]
    res = c_b(Coset.of_group(lifted, d.size, smooth=smooth), dom.constraint, d, mode=mode)
    if res.is_empty or not res.rep.is_identity():
        raise RuntimeError("color search lost the identity")
    return [d.restrict(q) for q in res.gens]


class PullbackError(ValueError):
    """The permutation does not extend to the next layer."""


def _children_by_parents(layers: LayeredGraph, r: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    out: dict[tuple[int, ...], list[int]] = {}
    for v, s in layers.f(r).items():
        out.setdefault(s, []).append(v)
    return {s: tuple(sorted(vs)) for s, vs in out.items()}


def pullback(sigma: Permutation, layers: LayeredGraph, r: int,
             children: dict | None = None) -> Permutation:
    """Extend ``sigma`` from X_r to X_{r+1}.

    Each child v goes to the child whose neighbor set is sigma(f(v)); a twin
    pair goes to the image pair in ascending order.
    """
    if children is None:
        children = _children_by_parents(layers, r)
    img = sigma.images
    out = img.copy()
    for s, vs in children.items():
        t = tuple(sorted(int(img[x]) for x in s))
        ws = children.get(t)
        if ws is None or len(ws) != len(vs):
            raise PullbackError(f"neighbor set {s} has no matching image {t}")
        out[list(vs)] = ws
    new_edges = layers.level(r).inner_edges
    if new_edges:
        lookup = frozenset(new_edges)
        for u, v in new_edges:
            a, b = int(img[u]), int(img[v])
            if (min(a, b), max(a, b)) not in lookup:
                raise PullbackError(f"edge ({u}, {v}) is not mapped to a new edge")
    return Permutation._wrap(out)


@dataclass
class AutResult:
    """Outcome of ``aut_e``.

    ``generators`` generate Aut_e(X) when ``complete``; after an early stop at
    level r they generate the part of Aut_e(X_r) that extends to X_{r+1}.  ``witness`` is a generator
    swapping the probe pair, if one was requested and exists.
    """
    generators: tuple[Permutation, ...]
    witness: Permutation | None = None
    complete: bool = True
    stopped_at: int | None = None
    level_generators: list[tuple[Permutation, ...]] = field(default_factory=list)

    @property
    def stopped_early(self) -> bool:
        return not self.complete


def aut_e_layers(layers: LayeredGraph, early_swap_probe: tuple[int, int] | None = None,
                 mode: str = "direct", trace: bool = False) -> AutResult:
    """Run the level loop on a prepared layer sequence."""
    n = layers.instance_graph.n
    a, b = layers.e
    gens = [Permutation.transposition(n, a, b)]
    history = [tuple(gens)] if trace else []
    for r in range(1, layers.m):
        dom = level_domain(layers, r, gens)
        image = image_generators(gens, dom, mode=mode)
        if early_swap_probe is not None:
            p, q = early_swap_probe
            if not any(int(g.images[p]) == q for g in image):
                log.debug("aut_e: no swap of the probe pair survives level %d", r)
                return AutResult(tuple(image), None, False, r, history)
        children = _children_by_parents(layers, r)
        gens = kernel_generators(layers, r) + [pullback(s, layers, r, children) for s in image]
        if trace:
            history.append(tuple(gens))
        log.debug("aut_e: level %d -> %d generators", r + 1, len(gens))
    witness = None
    if early_swap_probe is not None:
        p, q = early_swap_probe
        witness = next((g for g in gens if int(g.images[p]) == q), None)
    return AutResult(tuple(gens), witness, True, None, history)


def aut_e(x: MergedInstance | tuple[Graph, Sequence[int]], early_swap_probe: tuple[int, int] | None = None,
          mode: str = "direct", trace: bool = False) -> AutResult:
    """Generators of Aut_e(X) for a merged instance, or for a ``(graph, edge)`` pair."""
    if isinstance(x, MergedInstance):
        layers = layer_sequence(x)
    else:
        g, e = x
        if max(g.degrees(), default=0) > 3:
            raise GraphError("valence above 3")
        layers = layer_sequence_for(g, e)
    return aut_e_layers(layers, early_swap_probe, mode, trace)
