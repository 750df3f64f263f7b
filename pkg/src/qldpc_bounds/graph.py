"""Undirected simple graphs and the ``graph v1`` text format."""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from .errors import InputError, ParseError

__all__ = ["Graph", "parse_graph", "format_graph", "graph_to_json", "graph_from_json"]


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Adjacency lists and the sorted edge census are two views of the same
    edge set; both are built once at construction.
    """

    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise InputError("adjacency length does not match n")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise InputError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n or v not in self.adj[u]:
                    raise InputError(f"asymmetric or out-of-range edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, tuple(frozenset() for _ in range(n)))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __len__(self):
        return self.n

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Adjacency as bit masks, for the exact searches."""
        return tuple(sum(1 << u for u in a) for a in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        """Vertices adjacent to the set but not in it."""
        vs = set(vertices)
        out: set[int] = set()
        for v in vs:
            out |= self.adj[v]
        return frozenset(out - vs)

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph, relabelled to ``0..k-1``.

        Returns the subgraph and the list mapping new labels to old ones.
        """
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        adj = tuple(frozenset(index[u] for u in self.adj[v] if u in index) for v in order)
        return Graph(len(order), adj), order

    def components(self, within: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components (sorted lists), ordered by smallest member."""
        allowed = set(range(self.n)) if within is None else set(within)
        seen: set[int] = set()
        comps = []
        for s in sorted(allowed):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for u in self.adj[v]:
                    if u in allowed and u not in seen:
                        seen.add(u)
                        comp.append(u)
                        queue.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def bfs_layers(self, source: int, within: set[int] | None = None) -> list[list[int]]:
        seen = {source}
        layer = [source]
        layers = []
        while layer:
            layers.append(layer)
            nxt = []
            for v in layer:
                for u in sorted(self.adj[v]):
                    if u not in seen and (within is None or u in within):
                        seen.add(u)
                        nxt.append(u)
            layer = nxt
        return layers

    def distances_from(self, sources: Iterable[int]) -> dict[int, int]:
        dist = {s: 0 for s in sources}
        queue = deque(dist)
        while queue:
            v = queue.popleft()
            for u in self.adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist


def format_graph(g: Graph) -> str:
    lines = [f"graph v1 n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 3 or parts[:2] != ["graph", "v1"] or not parts[2].startswith("n="):
                raise ParseError("expected header 'graph v1 n=<n>'", lineno)
            try:
                n = int(parts[2][2:])
            except ValueError:
                raise ParseError(f"bad vertex count {parts[2]!r}", lineno) from None
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"invalid edge {u} {v}", lineno)
        edges.append((u, v))
    if n is None:
        raise ParseError("empty graph file")
    return Graph.from_edges(n, edges)


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]})


def graph_from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
        return Graph.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph JSON: {exc}") from None
