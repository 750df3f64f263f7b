"""Tree decompositions: validation, elimination heuristics, exact search."""

from __future__ import annotations

import heapq
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .errors import BudgetExceeded
from .graph import Graph

__all__ = [
    "TreeDecomposition",
    "Violation",
    "validate_tree_decomposition",
    "decomposition_from_order",
    "elimination_width",
    "heuristic_treewidth_upper",
    "exact_treewidth",
    "minor_min_width",
]


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Mapping[int, frozenset[int]]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1


@dataclass(frozen=True)
class Violation:
    """First failed condition of a candidate decomposition.

    ``prop`` is one of ``not_a_forest``, ``unknown_vertex``,
    ``vertex_coverage``, ``edge_coverage`` or ``running_intersection``.
    """

    prop: str
    witness: tuple
    message: str


def _forest_problem(td: TreeDecomposition) -> Violation | None:
    parent = {i: i for i in td.bags}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in td.tree_edges:
        if i not in parent or j not in parent:
            return Violation("not_a_forest", (i, j), f"tree edge ({i}, {j}) names a missing node")
        ri, rj = find(i), find(j)
        if ri == rj:
            return Violation("not_a_forest", (i, j), f"tree edge ({i}, {j}) closes a cycle")
        parent[ri] = rj
    return None


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> Violation | None:
    """Return ``None`` if ``td`` is a tree decomposition of ``g``.

    Checks, in order: the node graph is a forest, bags only name vertices
    of ``g``, every vertex is in a bag, every edge is inside a bag, and the
    nodes holding each vertex form a connected subtree.
    """
    bad = _forest_problem(td)
    if bad:
        return bad
    holders: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for node in sorted(td.bags):
        for v in td.bags[node]:
            if v not in holders:
                return Violation("unknown_vertex", (node, v), f"bag {node} holds unknown vertex {v}")
            holders[v].append(node)
    for v in range(g.n):
        if not holders[v]:
            return Violation("vertex_coverage", (v,), f"vertex {v} is in no bag")
    for u, v in g.edges:
        hu = set(holders[u])
        if not any(node in hu for node in holders[v]):
            return Violation("edge_coverage", (u, v), f"edge ({u}, {v}) is in no bag")
    nbrs: dict[int, list[int]] = {i: [] for i in td.bags}
    for i, j in td.tree_edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    for v in range(g.n):
        nodes = set(holders[v])
        start = holders[v][0]
        seen = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in nbrs[i]:
                if j in nodes and j not in seen:
                    seen.add(j)
                    stack.append(j)
        if seen != nodes:
            split = (min(seen), min(nodes - seen))
            return Violation(
                "running_intersection", (v, *split), f"nodes holding vertex {v} are disconnected between {split[0]} and {split[1]}"
            )
    return None


def decomposition_from_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Decomposition induced by eliminating vertices in ``order``.

    Node ``v`` holds ``v`` and its neighbours at elimination time; its
    parent is the earliest-eliminated of those neighbours. Roots are
    chained so the node graph is a single tree.
    """
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != g.n:
        raise ValueError("order must list every vertex exactly once")
    nbrs = [set(a) for a in g.adj]
    bags = {}
    edges = []
    roots = []
    for v in order:
        later = nbrs[v]
        bags[v] = frozenset(later | {v})
        if later:
            edges.append((v, min(later, key=pos.__getitem__)))
        else:
            roots.append(v)
        for u in later:
            nbrs[u] |= later
            nbrs[u].discard(u)
            nbrs[u].discard(v)
    edges.extend(zip(roots, roots[1:]))
    return TreeDecomposition(bags, tuple(edges))


def elimination_width(g: Graph, order: Sequence[int]) -> int:
    return decomposition_from_order(g, order).width


def _greedy_order(g: Graph, strategy: str) -> list[int]:
    nbrs = [set(a) for a in g.adj]
    alive = [True] * g.n

    def fill(v):
        nb = list(nbrs[v])
        missing = 0
        for i, a in enumerate(nb):
            na = nbrs[a]
            for b in nb[i + 1 :]:
                if b not in na:
                    missing += 1
        return missing

    def key(v):
        if strategy == "min_fill":
            return (fill(v), len(nbrs[v]), v)
        return (len(nbrs[v]), v)

    current = {v: key(v) for v in range(g.n)}
    heap = [(k, v) for v, k in current.items()]
    heapq.heapify(heap)
    order = []
    while heap:
        k, v = heapq.heappop(heap)
        if not alive[v] or current[v] != k:
            continue
        alive[v] = False
        order.append(v)
        nb = nbrs[v]
        touched = set(nb)
        for u in nb:
            nbrs[u] |= nb
            nbrs[u].discard(u)
            nbrs[u].discard(v)
        if strategy == "min_fill":
            for u in nb:
                touched |= nbrs[u]
        for u in touched:
            if alive[u]:
                current[u] = key(u)
                heapq.heappush(heap, (current[u], u))
    return order


def heuristic_treewidth_upper(g: Graph, strategy: str = "min_fill") -> tuple[int, TreeDecomposition]:
    """Greedy elimination (``min_degree`` or ``min_fill``); ties by vertex index."""
    if strategy not in ("min_degree", "min_fill"):
        raise ValueError(f"unknown strategy {strategy!r}")
    td = decomposition_from_order(g, _greedy_order(g, strategy))
    return td.width, td


def _popcount(x: int) -> int:
    return x.bit_count()


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def minor_min_width(adj: Sequence[int], alive: int) -> int:
    """Contraction-degeneracy lower bound on treewidth (bitmask graph).

    Repeatedly records the minimum degree, then contracts a minimum-degree
    vertex into its least-degree neighbour.
    """
    adj = {v: adj[v] & alive for v in _bits(alive)}
    lb = 0
    while len(adj) > 1:
        v = min(adj, key=lambda x: (_popcount(adj[x]), x))
        nv = adj[v]
        lb = max(lb, _popcount(nv))
        if nv == 0:
            del adj[v]
            continue
        u = min(_bits(nv), key=lambda x: (_popcount(adj[x] & ~nv), x))
        bit_v, bit_u = 1 << v, 1 << u
        merged = (adj[u] | nv) & ~bit_u & ~bit_v
        del adj[v]
        adj[u] = merged
        for w in _bits(nv):
            if w != u:
                adj[w] = (adj[w] & ~bit_v) | bit_u
        for w in _bits(merged):
            adj[w] |= bit_u
    return lb


@dataclass
class _Search:
    best: int
    best_order: list[int]
    budget: int
    nodes: int = 0


def _eliminate(adj: list[int], v: int) -> list[int]:
    nb = adj[v]
    out = list(adj)
    bit = 1 << v
    for u in _bits(nb):
        out[u] = (out[u] | nb) & ~(1 << u) & ~bit
    out[v] = 0
    return out


def _exact_component(adj: list[int], alive: int, budget: int) -> tuple[int, list[int]]:
    labels = list(_bits(alive))
    sub = Graph.from_edges(
        max(labels) + 1, [(u, w) for u in labels for w in _bits(adj[u] & alive) if u < w]
    )
    ub, td = heuristic_treewidth_upper(sub, "min_fill")
    ub_order = [v for v in _greedy_order(sub, "min_fill") if (alive >> v) & 1]
    state = _Search(ub, ub_order, budget)
    memo: dict[int, int] = {}

    def rec(cur: list[int], remaining: int, width: int, order: list[int]):
        state.nodes += 1
        if state.nodes > state.budget:
            raise BudgetExceeded(f"exact treewidth exceeded {state.budget} search nodes")
        left = _popcount(remaining)
        if left - 1 <= width:
            if width < state.best:
                state.best = width
                state.best_order = order + list(_bits(remaining))
            return
        if width >= state.best:
            return
        seen = memo.get(remaining)
        if seen is not None and seen <= width:
            return
        memo[remaining] = width
        if max(width, minor_min_width(cur, remaining)) >= state.best:
            return
        for v in _bits(remaining):
            nb = cur[v]
            if all((cur[u] | (1 << u)) & nb == nb for u in _bits(nb)):
                rec(_eliminate(cur, v), remaining & ~(1 << v), max(width, _popcount(nb)), order + [v])
                return
        cands = sorted(_bits(remaining), key=lambda x: (_popcount(cur[x]), x))
        for v in cands:
            deg = _popcount(cur[v])
            if max(width, deg) >= state.best:
                continue
            rec(_eliminate(cur, v), remaining & ~(1 << v), max(width, deg), order + [v])

    masked = [a & alive for a in adj]
    rec(masked, alive, 0, [])
    return state.best, state.best_order


def exact_treewidth(g: Graph, max_vertices: int = 20, budget: int = 2_000_000) -> tuple[int, TreeDecomposition]:
    """Treewidth by branch and bound over elimination orders.

    Pruning uses a memo of eliminated sets, simplicial-vertex reduction
    and the :func:`minor_min_width` lower bound; the min-fill order seeds
    the incumbent. Finishing the search certifies that no order does
    better. Components are solved independently.
    """
    if g.n > max_vertices:
        raise BudgetExceeded(f"exact treewidth limited to {max_vertices} vertices, got {g.n}")
    if g.n == 0:
        return 0, TreeDecomposition({}, ())
    order: list[int] = []
    tw = 0
    for comp in g.components():
        if len(comp) == 1:
            order.extend(comp)
            continue
        alive = sum(1 << v for v in comp)
        w, comp_order = _exact_component(list(g.masks), alive, budget)
        tw = max(tw, w)
        order.extend(comp_order)
    td = decomposition_from_order(g, order)
    assert td.width == tw
    return tw, td
