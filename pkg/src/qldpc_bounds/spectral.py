"""Laplacian spectra, Fiedler vectors and Cheeger-constant estimates."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh

from .graph import Graph

__all__ = ["laplacian", "fiedler", "fiedler_power_iteration", "cheeger_estimate", "edge_expansion"]

DENSE_MAX = 1200


def laplacian(g: Graph) -> sp.csr_matrix:
    rows, cols = [], []
    for u, v in g.edges:
        rows += [u, v]
        cols += [v, u]
    adj = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
    deg = np.asarray(adj.sum(axis=1)).ravel()
    return (sp.diags(deg) - adj).tocsr()


def _fix_sign(v: np.ndarray) -> np.ndarray:
    idx = np.flatnonzero(np.abs(v) > 1e-12)
    if idx.size and v[idx[0]] < 0:
        return -v
    return v


def fiedler(g: Graph, seed: int = 0) -> tuple[float, np.ndarray]:
    """Second-smallest Laplacian eigenpair of a graph with at least 2 vertices.

    Dense ``eigh`` up to ``DENSE_MAX`` vertices, shift-invert Lanczos above.
    """
    if g.n < 2:
        raise ValueError("need at least two vertices")
    lap = laplacian(g)
    if g.n <= DENSE_MAX:
        vals, vecs = np.linalg.eigh(lap.toarray())
        return float(vals[1]), _fix_sign(vecs[:, 1])
    v0 = np.random.default_rng(seed).standard_normal(g.n)
    vals, vecs = eigsh(lap, k=2, sigma=-1e-3, which="LM", v0=v0)
    order = np.argsort(vals)
    return float(vals[order[1]]), _fix_sign(vecs[:, order[1]])


def fiedler_power_iteration(g: Graph, tol: float = 1e-8, max_iter: int = 100_000, seed: int = 0) -> tuple[float, np.ndarray, int]:
    """Power iteration on ``c I - L`` with the constant vector deflated.

    Stops when the eigenvalue residual ``||L v - lam v||`` drops below
    ``tol``. Returns ``(lam, v, iterations)``. The Rayleigh quotient of the
    iterate only approaches lambda_2 from above, so this is an estimate.
    """
    lap = laplacian(g)
    shift = 2.0 * max(g.max_degree, 1)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(g.n)
    v -= v.mean()
    v /= np.linalg.norm(v)
    lam = float(v @ (lap @ v))
    for it in range(1, max_iter + 1):
        w = shift * v - lap @ v
        w -= w.mean()
        v = w / np.linalg.norm(w)
        lv = lap @ v
        lam = float(v @ lv)
        if np.linalg.norm(lv - lam * v) < tol:
            return lam, _fix_sign(v), it
    return lam, _fix_sign(v), max_iter


def edge_expansion(g: Graph, subset) -> float:
    inside = set(subset)
    cut = sum(1 for v in inside for u in g.adj[v] if u not in inside)
    return cut / len(inside)


def _sweep(g: Graph, order: np.ndarray) -> float:
    inside = np.zeros(g.n, dtype=bool)
    cut = 0
    best = np.inf
    for size, v in enumerate(order[: g.n // 2], start=1):
        for u in g.adj[v]:
            cut += -1 if inside[u] else 1
        inside[v] = True
        best = min(best, cut / size)
    return best


def cheeger_estimate(g: Graph, seed: int = 0) -> tuple[float, float]:
    """``(h_upper, h_spectral_lower)`` for the edge-boundary Cheeger constant.

    The upper value is the best Fiedler sweep cut over sets of at most half
    the vertices; the lower value is ``lambda_2 / 2``. Disconnected graphs
    (and graphs with fewer than two vertices) return ``(0.0, 0.0)``.
    """
    if g.n < 2 or not g.is_connected():
        return 0.0, 0.0
    lam, vec = fiedler(g, seed)
    order = np.argsort(vec, kind="stable")
    h_upper = min(_sweep(g, order), _sweep(g, order[::-1]))
    return float(h_upper), max(lam, 0.0) / 2.0
