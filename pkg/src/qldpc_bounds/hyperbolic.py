"""Patches of regular {p,q} tilings of the hyperbolic plane.

Geometry is done on the hyperboloid ``t^2 - x^2 - y^2 = 1``, where a
reflection in the geodesic with unit spacelike normal ``m`` is the linear
map ``v -> v - 2 <v, m> m``. Results are exported in the Poincare disk.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np

from .errors import InputError

__all__ = ["tiling_patch", "poincare_distance", "hyperboloid_to_poincare"]

_J = np.diag([1.0, -1.0, -1.0])


def _mink(u: np.ndarray, v: np.ndarray) -> float:
    return float(u @ _J @ v)


def hyperboloid_to_poincare(p: np.ndarray) -> np.ndarray:
    p = np.atleast_2d(p)
    return p[:, 1:] / (1.0 + p[:, :1])


def poincare_distance(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Hyperbolic distance between Poincare-disk points (broadcasting)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    du = 1.0 - np.sum(u * u, axis=-1)
    dv = 1.0 - np.sum(v * v, axis=-1)
    diff = np.sum((u - v) ** 2, axis=-1)
    # arccosh(1 + 2x) written as 2 asinh(sqrt(x)), which keeps precision for short distances
    return 2.0 * np.arcsinh(np.sqrt(diff / (du * dv)))


def _reflect(points: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # normal of the plane through the origin containing a and b
    m = _J @ np.cross(a, b)
    norm = _mink(m, m)
    return points - 2.0 * np.outer(points @ _J @ m, m) / norm


def _key(p: np.ndarray) -> tuple[int, int]:
    # Poincare coordinates: hyperboloid error grows with distance, disk error does not
    s = 1e9 / (1.0 + p[0])
    return (int(round(p[1] * s)), int(round(p[2] * s)))


def tiling_patch(p: int, q: int, rings: int) -> tuple[np.ndarray, list[tuple[int, int]], float]:
    """Vertices and edges of the tiles within ``rings`` layers of a central tile.

    Layer 1 is the central p-gon; layer ``j + 1`` adds every tile sharing a
    vertex with layer ``j``. Returns ``(hyperboloid_points, edges,
    edge_length)``.
    """
    if p < 3 or q < 3 or (p - 2) * (q - 2) <= 4:
        raise InputError(f"{{{p},{q}}} is not a hyperbolic tiling: need (p-2)(q-2) > 4")
    if rings < 1:
        raise InputError("rings must be >= 1")
    # circumradius of the regular p-gon with interior angle 2pi/q
    circ = math.acosh(1.0 / (math.tan(math.pi / p) * math.tan(math.pi / q)))
    angles = 2 * math.pi * np.arange(p) / p
    center_tile = np.column_stack(
        [np.full(p, math.cosh(circ)), math.sinh(circ) * np.cos(angles), math.sinh(circ) * np.sin(angles)]
    )
    edge_length = math.acosh(_mink(center_tile[0], center_tile[1]))

    vertex_index: dict[tuple[int, int], int] = {}
    points: list[np.ndarray] = []

    def vid(pt):
        # neighbouring cells too, so near-equal points straddling a cell edge merge
        kx, ky = _key(pt)
        for dx in (0, -1, 1):
            for dy in (0, -1, 1):
                hit = vertex_index.get((kx + dx, ky + dy))
                if hit is not None:
                    return hit
        vertex_index[(kx, ky)] = len(points)
        points.append(pt)
        return vertex_index[(kx, ky)]

    tiles: list[tuple[int, ...]] = []
    tile_pts: list[np.ndarray] = []
    seen: set[frozenset[int]] = set()

    def add(pts):
        ids = tuple(vid(pt) for pt in pts)
        key = frozenset(ids)
        if key in seen:
            return None
        seen.add(key)
        tiles.append(ids)
        tile_pts.append(pts)
        return len(tiles) - 1

    add(center_tile)
    depth_cap = (q // 2) * (rings - 1)
    queue = deque([(0, 0)])
    while queue:
        t, depth = queue.popleft()
        if depth >= depth_cap:
            continue
        pts = tile_pts[t]
        for i in range(p):
            a, b = pts[i], pts[(i + 1) % p]
            new = add(_reflect(pts, a, b))
            if new is not None:
                queue.append((new, depth + 1))

    # vertex-sharing layers from the central tile
    by_vertex: dict[int, list[int]] = {}
    for t, ids in enumerate(tiles):
        for v in ids:
            by_vertex.setdefault(v, []).append(t)
    layer = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for t in frontier:
            if layer[t] + 1 >= rings:
                continue
            for v in tiles[t]:
                for s in by_vertex[v]:
                    if s not in layer:
                        layer[s] = layer[t] + 1
                        nxt.append(s)
        frontier = nxt

    kept = sorted(layer)
    used = sorted({v for t in kept for v in tiles[t]})
    relabel = {v: i for i, v in enumerate(used)}
    edges = set()
    for t in kept:
        ids = tiles[t]
        for i in range(p):
            a, b = relabel[ids[i]], relabel[ids[(i + 1) % p]]
            edges.add((min(a, b), max(a, b)))
    pts = np.array([points[v] for v in used])
    return pts, sorted(edges), edge_length
