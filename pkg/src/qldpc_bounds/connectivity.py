"""Connectivity graphs of codes, boundaries and decoupling."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from itertools import combinations

from .codes import ClassicalCode, StabilizerCode
from .errors import InputError
from .graph import Graph

ConnectivityGraph = Graph
Region = frozenset

__all__ = [
    "ConnectivityGraph",
    "Region",
    "build_connectivity",
    "classical_connectivity",
    "outer_boundary",
    "inner_boundary",
    "are_decoupled",
    "ldpc_degrees",
]


def _from_supports(n: int, supports: Iterable[Iterable[int]]) -> Graph:
    edges = set()
    for sup in supports:
        edges.update(combinations(sorted(sup), 2))
    return Graph.from_edges(n, edges)


def build_connectivity(code: StabilizerCode) -> Graph:
    """Qubits ``u, v`` are adjacent iff some generator acts on both.

    The graph depends on the generator list as given, not on the group.
    """
    return _from_supports(code.n, (g.support for g in code.generators))


def classical_connectivity(code: ClassicalCode) -> Graph:
    return _from_supports(code.n, code.supports())


def ldpc_degrees(code: StabilizerCode) -> tuple[int, int]:
    """``(max qubit degree, max generator weight)`` of the presentation."""
    qubit_deg = [0] * code.n
    for g in code.generators:
        for q in g.support:
            qubit_deg[q] += 1
    return max(qubit_deg, default=0), max((g.weight for g in code.generators), default=0)


def _check(g: Graph, region: Iterable[int]) -> frozenset[int]:
    out = frozenset(region)
    for v in out:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range for n={g.n}")
    return out


def outer_boundary(g: Graph, region: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``region`` adjacent to it."""
    return g.neighborhood(_check(g, region))


def inner_boundary(g: Graph, region: Iterable[int]) -> frozenset[int]:
    """Vertices of ``region`` adjacent to its complement."""
    inside = _check(g, region)
    return outer_boundary(g, set(range(g.n)) - inside)


def are_decoupled(g: Graph, regions: Sequence[Iterable[int]]) -> bool:
    """True iff no edge joins two distinct regions (regions must be disjoint)."""
    owner: dict[int, int] = {}
    for i, region in enumerate(regions):
        for v in _check(g, region):
            if v in owner:
                raise InputError(f"vertex {v} lies in regions {owner[v]} and {i}")
            owner[v] = i
    for v, i in owner.items():
        for u in g.adj[v]:
            j = owner.get(u)
            if j is not None and j != i:
                return False
    return True
