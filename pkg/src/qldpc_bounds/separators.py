"""Balanced vertex separators: exact search, ordering-based heuristics.

A separation ``(A, S, B)`` of a graph on ``n`` vertices partitions the
vertices so that ``|A|, |B| <= alpha * n`` and no edge joins ``A`` to ``B``.
``B`` may be empty.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import BudgetExceeded, InputError
from .graph import Graph
from .spectral import fiedler

__all__ = [
    "Separation",
    "side_limit",
    "exact_separator",
    "heuristic_separator",
    "best_prefix_cut",
    "STRATEGIES",
]

STRATEGIES = ("bfs_layering", "spectral_bisection", "geometric_cut")


def side_limit(n: int, alpha: float) -> int:
    """Largest admissible side size, ``floor(alpha * n)``."""
    return math.floor(alpha * n + 1e-9)


@dataclass(frozen=True)
class Separation:
    A: frozenset[int]
    S: frozenset[int]
    B: frozenset[int]
    alpha: float = 0.5

    @property
    def size(self) -> int:
        return len(self.S)

    def problems(self, g: Graph) -> list[str]:
        """Every violated condition, empty when the separation is valid."""
        out = []
        if self.A & self.S or self.A & self.B or self.S & self.B:
            out.append("parts overlap")
        if self.A | self.S | self.B != frozenset(range(g.n)):
            out.append("parts do not cover the vertex set")
        lim = side_limit(g.n, self.alpha)
        if len(self.A) > lim or len(self.B) > lim:
            out.append(f"side sizes {len(self.A)}, {len(self.B)} exceed {lim}")
        if any(u in self.B for v in self.A for u in g.adj[v]):
            out.append("an edge joins A and B")
        return out

    def is_valid(self, g: Graph) -> bool:
        return not self.problems(g)


def _check_alpha(alpha: float):
    if not 0.5 <= alpha < 1:
        raise InputError(f"alpha must lie in [1/2, 1), got {alpha}")


def _pack_two_bins(sizes: Sequence[int], lim: int) -> list[int] | None:
    """Indices of items for bin A so that both bins stay within ``lim``."""
    total = sum(sizes)
    reach: dict[int, tuple[int, ...]] = {0: ()}
    for i, s in enumerate(sizes):
        for t, items in list(reach.items()):
            if t + s <= lim and t + s not in reach:
                reach[t + s] = items + (i,)
    for t in sorted(reach, reverse=True):
        if total - t <= lim:
            return list(reach[t])
    return None


def _split_by_components(g: Graph, removed: frozenset[int], lim: int) -> tuple[frozenset, frozenset] | None:
    comps = g.components(within=set(range(g.n)) - removed)
    chosen = _pack_two_bins([len(c) for c in comps], lim)
    if chosen is None:
        return None
    a = frozenset(v for i in chosen for v in comps[i])
    b = frozenset(range(g.n)) - removed - a
    return a, b


def exact_separator(g: Graph, alpha: float = 0.5, max_vertices: int = 24, budget: int = 5_000_000) -> Separation:
    """Minimum-cardinality separation by exhausting separators of each size.

    Every candidate of size ``s`` is tried before any of size ``s + 1``, so
    the first feasible one is optimal. ``budget`` caps candidate sets.
    """
    _check_alpha(alpha)
    if g.n > max_vertices:
        raise BudgetExceeded(f"exact separator limited to {max_vertices} vertices, got {g.n}")
    lim = side_limit(g.n, alpha)
    tried = 0
    for s in range(g.n + 1):
        for cand in combinations(range(g.n), s):
            tried += 1
            if tried > budget:
                raise BudgetExceeded(f"exact separator exceeded {budget} candidates")
            removed = frozenset(cand)
            split = _split_by_components(g, removed, lim)
            if split is not None:
                return Separation(split[0], removed, split[1], alpha)
    raise AssertionError("unreachable: S = V is always feasible")


def best_prefix_cut(g: Graph, order: Sequence[int], alpha: float = 0.5) -> Separation:
    """Smallest separation obtainable by cutting ``order`` at one position.

    For each prefix ``P`` two candidates are scored: ``S`` the outside
    neighbours of ``P`` (``A = P``), and ``S`` the members of ``P`` with an
    outside neighbour (``B = V - P``). Ties go to the better balanced one.
    """
    n = g.n
    lim = side_limit(n, alpha)
    # fallback: A = first lim vertices, everything else separated
    best_key = (n - lim, lim, -1, 0)
    in_p = np.zeros(n, dtype=bool)
    out_cnt = np.zeros(n, dtype=np.int64)  # outside vertex: neighbours in P
    in_cnt = np.zeros(n, dtype=np.int64)  # inside vertex: neighbours outside P
    outer = inner = 0
    for i, v in enumerate(order, start=1):
        if out_cnt[v] > 0:
            outer -= 1
        in_p[v] = True
        ext = 0
        for u in g.adj[v]:
            if in_p[u]:
                in_cnt[u] -= 1
                if in_cnt[u] == 0:
                    inner -= 1
            else:
                ext += 1
                if out_cnt[u] == 0:
                    outer += 1
                out_cnt[u] += 1
        in_cnt[v] = ext
        if ext:
            inner += 1
        b_outer = n - i - outer
        if i <= lim and b_outer <= lim:
            key = (outer, max(i, b_outer), i, 0)
            best_key = min(best_key, key)
        a_inner = i - inner
        if a_inner <= lim and n - i <= lim:
            key = (inner, max(a_inner, n - i), i, 1)
            best_key = min(best_key, key)

    _, _, pos, variant = best_key
    if pos < 0:
        a = frozenset(order[:lim])
        return Separation(a, frozenset(range(n)) - a, frozenset(), alpha)
    prefix = frozenset(order[:pos])
    if variant == 0:
        s = g.neighborhood(prefix)
        return Separation(prefix, s, frozenset(range(n)) - prefix - s, alpha)
    s = frozenset(v for v in prefix if any(u not in prefix for u in g.adj[v]))
    return Separation(prefix - s, s, frozenset(range(n)) - prefix, alpha)


def _pseudo_peripheral(g: Graph, start: int, within: set[int]) -> int:
    v = start
    ecc = -1
    for _ in range(8):
        layers = g.bfs_layers(v, within)
        if len(layers) - 1 <= ecc:
            break
        ecc = len(layers) - 1
        v = min(layers[-1], key=lambda u: (g.degree(u), u))
    return v


def _bfs_order(g: Graph, comps: list[list[int]], rng: np.random.Generator) -> list[int]:
    order = []
    for comp in comps:
        start = int(comp[rng.integers(len(comp))])
        root = _pseudo_peripheral(g, start, set(comp))
        for layer in g.bfs_layers(root, set(comp)):
            order.extend(layer)
    return order


def _spectral_order(g: Graph, comps: list[list[int]], seed: int) -> list[int]:
    order = []
    for comp in comps:
        if len(comp) < 3:
            order.extend(comp)
            continue
        sub, labels = g.induced(comp)
        _, vec = fiedler(sub, seed)
        order.extend(labels[i] for i in np.argsort(vec, kind="stable"))
    return order


def _klein(coords: np.ndarray, model: str) -> np.ndarray:
    if model == "poincare":
        r2 = np.sum(coords**2, axis=1, keepdims=True)
        return 2 * coords / (1 + r2)
    return coords


def _geometric_orders(coords: np.ndarray, model: str, directions: int) -> list[list[int]]:
    """Vertex orders swept by parallel hyperplanes.

    Poincare-disk coordinates are mapped to the Klein model first, where
    hyperbolic geodesics are straight chords.
    """
    pts = _klein(np.asarray(coords, dtype=float), model)
    dim = pts.shape[1]
    if dim == 1:
        return [list(np.argsort(pts[:, 0], kind="stable"))]
    orders = []
    for k in range(directions):
        theta = math.pi * k / directions
        u = np.zeros(dim)
        u[0], u[1] = math.cos(theta), math.sin(theta)
        orders.append([int(i) for i in np.argsort(pts @ u, kind="stable")])
        if dim == 3:
            w = np.array([0.0, math.sin(theta), math.cos(theta)])
            orders.append([int(i) for i in np.argsort(pts @ w, kind="stable")])
    return orders


def heuristic_separator(
    g: Graph,
    alpha: float = 0.5,
    strategy: str = "bfs_layering",
    seed: int = 0,
    coords=None,
    model: str = "euclidean",
    tries: int = 3,
) -> Separation:
    """Valid but not necessarily minimum separation.

    If whole components can be packed into the two sides, ``S`` is empty.
    Otherwise a vertex ordering is built by the chosen strategy and the
    best single cut of it is returned (see :func:`best_prefix_cut`).
    ``geometric_cut`` needs per-vertex ``coords``; ``model`` is
    ``"euclidean"`` or ``"poincare"``.
    """
    _check_alpha(alpha)
    if strategy not in STRATEGIES:
        raise InputError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    if strategy == "geometric_cut" and coords is None:
        raise InputError("geometric_cut needs vertex coordinates")
    n = g.n
    if n == 0:
        return Separation(frozenset(), frozenset(), frozenset(), alpha)
    lim = side_limit(n, alpha)
    split = _split_by_components(g, frozenset(), lim)
    if split is not None:
        return Separation(split[0], frozenset(), split[1], alpha)

    comps = sorted(g.components(), key=lambda c: (-len(c), c[0]))
    rng = np.random.default_rng(seed)
    if strategy == "bfs_layering":
        orders = [_bfs_order(g, comps, rng) for _ in range(max(tries, 1))]
    elif strategy == "spectral_bisection":
        orders = [_spectral_order(g, comps, seed)]
    else:
        orders = _geometric_orders(coords, model, directions=8)

    best = None
    for order in orders:
        sep = best_prefix_cut(g, order, alpha)
        if best is None or sep.size < best.size:
            best = sep
    return best
