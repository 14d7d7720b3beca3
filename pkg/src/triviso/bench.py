"""Seeded random graphs and timing runs.

* ``random_cubic``: 3-regular graphs from the pairing model, rejecting loops,
  repeated edges and disconnected outcomes.
* ``random_subcubic``: connected graphs of max degree 3 (random tree plus
  random extra edges).
* ``semirandom_pair``: two graphs whose first n-1 degrees agree; the last
  degree is drawn separately for each graph.
* ``isomorphic_pair``: a random cubic graph and a random relabeling of it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Sequence

from .graphcore import Graph, is_connected
from .iso import isomorphic

MODES = ("random", "semirandom", "isomorphic")


class GenerationFailed(RuntimeError):
    pass


def pairing_model(degrees: Sequence[int], rng: random.Random, tries: int = 2000) -> Graph:
    """Simple connected graph with the given degree sequence, by rejection sampling."""
    if sum(degrees) % 2:
        raise ValueError("degree sum must be even")
    stubs = [v for v, d in enumerate(degrees) for _ in range(d)]
    n = len(degrees)
    for _ in range(tries):
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            e = (min(u, v), max(u, v))
            if u == v or e in edges:
                ok = False
                break
            edges.add(e)
        if not ok:
            continue
        g = Graph.from_edges(sorted(edges), n)
        if is_connected(g):
            return g
    raise GenerationFailed(f"no simple connected realization after {tries} tries")


def random_cubic(n: int, rng: random.Random) -> Graph:
    if n < 4 or n % 2:
        raise ValueError("cubic graphs need an even number of vertices, at least 4")
    return pairing_model([3] * n, rng)


def random_subcubic(n: int, rng: random.Random, extra: float | None = None) -> Graph:
    """Connected graph with max degree 3: random tree plus up to ``extra * n`` more edges."""
    if n < 1:
        raise ValueError("need at least one vertex")
    deg = [0] * n
    edges = set()
    for v in range(1, n):
        u = rng.choice([w for w in range(v) if deg[w] < 3])
        edges.add((u, v))
        deg[u] += 1
        deg[v] += 1
    if extra is None:
        extra = rng.random()
    for _ in range(int(extra * n)):
        free = [v for v in range(n) if deg[v] < 3]
        if len(free) < 2:
            break
        u, v = sorted(rng.sample(free, 2))
        if (u, v) not in edges:
            edges.add((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph.from_edges(sorted(edges), n)


def relabel_random(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabeled(perm)


def isomorphic_pair(n: int, rng: random.Random) -> tuple[Graph, Graph]:
    g = random_cubic(n, rng)
    return g, relabel_random(g, rng)


def random_pair(n: int, rng: random.Random) -> tuple[Graph, Graph]:
    return random_cubic(n, rng), random_cubic(n, rng)


def semirandom_pair(n: int, rng: random.Random, tries: int = 200) -> tuple[Graph, Graph]:
    """Shared degrees for the first n-1 vertices; the last is 1 or 3 in each graph."""
    if n < 4:
        raise ValueError("need at least 4 vertices")
    for _ in range(tries):
        head = [rng.choices((1, 2, 3), weights=(1, 2, 7))[0] for _ in range(n - 1)]
        if sum(head) % 2 == 0:
            i = rng.randrange(n - 1)
            head[i] = 2 if head[i] != 2 else 3  # make the sum odd
        try:
            g1 = pairing_model(head + [rng.choice((1, 3))], rng, tries=200)
            g2 = pairing_model(head + [rng.choice((1, 3))], rng, tries=200)
        except GenerationFailed:
            continue
        return g1, g2
    raise GenerationFailed("could not realize a semirandom pair")


PAIR_MAKERS = {"random": random_pair, "semirandom": semirandom_pair, "isomorphic": isomorphic_pair}


@dataclass(frozen=True)
class BenchRow:
    n: int
    mode: str
    seed: int
    rep: int
    seconds: float
    verdict: bool

    def csv(self, with_time: bool = True) -> str:
        secs = f"{self.seconds:.6f}" if with_time else ""
        return f"{self.n},{self.mode},{self.seed},{self.rep},{secs},{self.verdict}"


def pair_rng(mode: str, n: int, seed: int, rep: int) -> random.Random:
    return random.Random(f"{mode}:{n}:{seed}:{rep}")


def run_bench(sizes: Sequence[int], mode: str, seed: int, reps: int, iso_kw: dict | None = None):
    """Yield one timed ``BenchRow`` per (size, repetition)."""
    if mode not in PAIR_MAKERS:
        raise ValueError(f"unknown mode {mode!r}")
    for n in sizes:
        for rep in range(reps):
            g1, g2 = PAIR_MAKERS[mode](n, pair_rng(mode, n, seed, rep))
            t0 = time.perf_counter()
            verdict, _ = isomorphic(g1, g2, **(iso_kw or {}))
            yield BenchRow(n, mode, seed, rep, time.perf_counter() - t0, verdict)
