"""Graphs, the merged instance X built from two graphs, and its layers.

Vertices are 0-based ints.  Text input uses one ``u v`` pair per line with
1-based labels; ``#`` starts a comment.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected graph on ``0..vertex_count-1``.

    Adjacency lists are kept exactly as given (sorted), so a malformed input
    with loops or repeated edges can still be represented and reported on by
    ``validate``.
    """
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple = field(default=(), compare=False)

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], vertex_count: int | None = None,
                   labels: Sequence | None = None) -> "Graph":
        edges = [(int(u), int(v)) for u, v in edges]
        if vertex_count is None:
            vertex_count = 1 + max((max(e) for e in edges), default=-1)
        adj = [[] for _ in range(vertex_count)]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge ({u}, {v}) out of range")
            adj[u].append(v)
            if u != v:
                adj[v].append(u)
        if labels is None:
            labels = tuple(range(1, vertex_count + 1))
        return cls(vertex_count, tuple(tuple(sorted(a)) for a in adj), tuple(labels))

    @property
    def n(self) -> int:
        return self.vertex_count

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def edges(self) -> list[Edge]:
        """Sorted edge list, each edge as (low, high)."""
        out = []
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                if u <= v:
                    out.append((u, v))
        return sorted(out)

    def edge_set(self) -> set[Edge]:
        return set(self.edges())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def label(self, v: int):
        return self.labels[v] if self.labels else v + 1

    def relabeled(self, mapping: Sequence[int]) -> "Graph":
        """Image graph under the vertex bijection ``v -> mapping[v]``."""
        return Graph.from_edges([(mapping[u], mapping[v]) for u, v in self.edges()], self.n)


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines with 1-based integer labels."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two vertex labels, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: labels must be integers: {raw!r}") from None
        if u < 1 or v < 1:
            raise GraphError(f"line {lineno}: labels are 1-based")
        edges.append((u - 1, v - 1))
    if not edges:
        raise GraphError("no edges")
    return Graph.from_edges(edges)


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u + 1} {v + 1}\n" for u, v in g.edges())


@dataclass(frozen=True)
class ValidationReport:
    simple: bool
    connected: bool
    max_degree: int
    valence_bound: int
    problems: tuple[str, ...]

    @property
    def degree_ok(self) -> bool:
        return self.max_degree <= self.valence_bound

    @property
    def valid(self) -> bool:
        return not self.problems


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for v in g.adjacency[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return all(seen)


def validate(g: Graph, valence_bound: int = 3) -> ValidationReport:
    problems = []
    simple = True
    for u, nb in enumerate(g.adjacency):
        if u in nb:
            simple = False
            problems.append(f"self-loop at {g.label(u)}")
        if len(set(nb)) != len(nb):
            simple = False
            problems.append(f"repeated edge at {g.label(u)}")
    connected = is_connected(g)
    if not connected:
        problems.append("not connected")
    maxdeg = max(g.degrees(), default=0)
    if maxdeg > valence_bound:
        problems.append(f"max degree {maxdeg} exceeds {valence_bound}")
    return ValidationReport(simple, connected, maxdeg, valence_bound, tuple(problems))


def require_valid(g: Graph, valence_bound: int = 3, name: str = "graph") -> None:
    rep = validate(g, valence_bound)
    if not rep.valid:
        raise GraphError(f"{name}: " + "; ".join(rep.problems))


@dataclass(frozen=True)
class MergedInstance:
    """Disjoint union of g1 and g2 with e1, e2 subdivided by v1, v2 and v1-v2 joined.

    Left vertices keep their numbers, right vertices are shifted by n1, and
    v1 = n1 + n2, v2 = n1 + n2 + 1.  ``origin[x]`` is ``(side, vertex)`` with
    side one of ``"left"``, ``"right"``, ``"bridge"``.
    """
    graph: Graph
    v1: int
    v2: int
    n1: int
    n2: int
    e1: Edge
    e2: Edge
    origin: tuple[tuple[str, int], ...]

    @property
    def e(self) -> Edge:
        return (self.v1, self.v2)


def build_x(g1: Graph, e1: Sequence[int], g2: Graph, e2: Sequence[int]) -> MergedInstance:
    e1, e2 = _edge(*e1), _edge(*e2)
    if not g1.has_edge(*e1):
        raise GraphError(f"edge {e1} not in the first graph")
    if not g2.has_edge(*e2):
        raise GraphError(f"edge {e2} not in the second graph")
    n1, n2 = g1.n, g2.n
    v1, v2 = n1 + n2, n1 + n2 + 1
    edges = [e for e in g1.edges() if e != e1]
    edges += [(u + n1, v + n1) for u, v in g2.edges() if (u, v) != e2]
    edges += [(e1[0], v1), (e1[1], v1), (e2[0] + n1, v2), (e2[1] + n1, v2), (v1, v2)]
    origin = tuple([("left", v) for v in range(n1)] + [("right", v) for v in range(n2)]
                   + [("bridge", 0), ("bridge", 1)])
    return MergedInstance(Graph.from_edges(edges, n1 + n2 + 2), v1, v2, n1, n2, e1, e2, origin)


@dataclass(frozen=True)
class Level:
    """One layer V_r of the sequence X_1 <= X_2 <= ... (r is 1-based).

    ``parents[v]`` is f(v), the neighbors of v in V_{r-1} (empty at r = 1);
    ``inner_edges`` are the edges joining two vertices of V_r, which first
    appear in X_{r+1}; ``twins`` pairs vertices of V_r with equal f.
    """
    r: int
    vertices: tuple[int, ...]
    parents: dict[int, tuple[int, ...]]
    inner_edges: tuple[Edge, ...]
    twins: tuple[Edge, ...]


@dataclass(frozen=True)
class LayeredGraph:
    instance_graph: Graph
    e: Edge
    levels: tuple[Level, ...]
    level_of: tuple[int, ...]

    @property
    def m(self) -> int:
        """Index of the last level; X_m is the whole graph."""
        return len(self.levels)

    def level(self, r: int) -> Level:
        return self.levels[r - 1]

    def new_vertices(self, r: int) -> tuple[int, ...]:
        return self.level(r).vertices

    def vertices(self, r: int) -> list[int]:
        """V(X_r)."""
        return sorted(v for lv in self.levels[:r] for v in lv.vertices)

    def edges(self, r: int) -> set[Edge]:
        """E(X_r): the edge e plus every edge touching V(X_{r-1})."""
        out = {_edge(*self.e)}
        for u, v in self.instance_graph.edges():
            if min(self.level_of[u], self.level_of[v]) <= r - 1:
                out.add((u, v))
        return out

    def f(self, r: int) -> dict[int, tuple[int, ...]]:
        """Neighbor sets in V_r of the vertices of V_{r+1}."""
        return self.level(r + 1).parents if r < self.m else {}

    def twins(self, r: int) -> tuple[Edge, ...]:
        """Twin pairs in V_{r+1}."""
        return self.level(r + 1).twins if r < self.m else ()

    def subgraph(self, r: int) -> Graph:
        return Graph.from_edges(sorted(self.edges(r)), self.instance_graph.n)


def layer_sequence_for(g: Graph, e: Sequence[int]) -> LayeredGraph:
    """Layers of ``g`` grown breadth-first from the edge ``e``."""
    a, b = _edge(*e)
    if not g.has_edge(a, b):
        raise GraphError(f"edge {(a, b)} not in graph")
    level_of = [0] * g.n
    level_of[a] = level_of[b] = 1
    layers = [[a, b]]
    dq = deque([a, b])
    while dq:
        u = dq.popleft()
        for v in g.adjacency[u]:
            if not level_of[v]:
                level_of[v] = level_of[u] + 1
                if level_of[v] > len(layers):
                    layers.append([])
                layers[level_of[v] - 1].append(v)
                dq.append(v)
    levels = []
    for idx, verts in enumerate(layers):
        r = idx + 1
        verts = sorted(verts)
        parents = {}
        inner = []
        for v in verts:
            if r > 1:
                parents[v] = tuple(w for w in g.adjacency[v] if level_of[w] == r - 1)
            inner.extend((v, w) for w in g.adjacency[v] if level_of[w] == r and v < w)
        if r == 1:
            inner = [x for x in inner if x != (a, b)]  # e already lives in X_1
        levels.append(Level(r, tuple(verts), parents, tuple(sorted(inner)), _twins(parents)))
    if levels[-1].inner_edges:
        # X_{m+1} adds only the edges inside the last layer
        levels.append(Level(len(levels) + 1, (), {}, (), ()))
    return LayeredGraph(g, (a, b), tuple(levels), tuple(level_of))


def layer_sequence(m: MergedInstance) -> LayeredGraph:
    return layer_sequence_for(m.graph, m.e)


def _twins(parents: dict[int, tuple[int, ...]]) -> tuple[Edge, ...]:
    by_set = defaultdict(list)
    for v, s in parents.items():
        by_set[s].append(v)
    out = []
    for s, vs in by_set.items():
        if len(vs) > 2:
            raise GraphError(f"{len(vs)} vertices share the neighbor set {s}; valence above 3")
        if len(vs) == 2:
            out.append(tuple(sorted(vs)))
    return tuple(sorted(out))
