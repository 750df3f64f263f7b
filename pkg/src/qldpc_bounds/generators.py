"""Geometric and random graph generators with locality checks.

An :class:`EmbeddedGraph` carries coordinates in either Euclidean space or
the Poincare disk together with two locality constants: ``w`` bounds every
edge length and ``rho`` bounds how many vertices fit in any ball of
radius ``2w``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, ParseError
from .graph import Graph
from .hyperbolic import hyperboloid_to_poincare, poincare_distance, tiling_patch
from .separators import Separation, heuristic_separator

__all__ = [
    "EmbeddedGraph",
    "MAX_GENERATED_VERTICES",
    "make_grid",
    "make_hyperbolic_patch",
    "make_random_regular",
    "geometric_cut_separator",
    "locality_problems",
    "nubg_extension",
    "nubg_violations",
    "format_coords",
    "parse_coords",
]

MAX_GENERATED_VERTICES = 2_000_000
TOL = 1e-9

# lattice points of Z^D within distance 2 of the origin
_GRID_RHO = {1: 5, 2: 13, 3: 33}


@dataclass(frozen=True, eq=False)
class EmbeddedGraph:
    graph: Graph
    coords: np.ndarray
    model: str = "euclidean"
    rho: int = 0
    w: float = 1.0

    def __post_init__(self):
        if self.model not in ("euclidean", "poincare"):
            raise InputError(f"unknown model {self.model!r}")
        if len(self.coords) != self.graph.n:
            raise InputError("one coordinate row per vertex is required")
        if self.model == "poincare" and self.coords.shape[1] != 2:
            raise InputError("Poincare coordinates must be planar")

    def distances_from(self, v: int) -> np.ndarray:
        if self.model == "poincare":
            return poincare_distance(self.coords[v], self.coords)
        return np.linalg.norm(self.coords - self.coords[v], axis=1)


def make_grid(D: int, side: int) -> EmbeddedGraph:
    """``side^D`` lattice with unit edges; vertex index is row-major."""
    if D not in (1, 2, 3):
        raise InputError(f"grid dimension must be 1, 2 or 3, got {D}")
    if side < 2:
        raise InputError(f"grid side must be >= 2, got {side}")
    if side**D > MAX_GENERATED_VERTICES:
        raise InputError(f"grid with {side}^{D} vertices exceeds {MAX_GENERATED_VERTICES}")
    shape = (side,) * D
    idx = np.arange(side**D).reshape(shape)
    edges = []
    for axis in range(D):
        lo = np.take(idx, range(side - 1), axis=axis).ravel()
        hi = np.take(idx, range(1, side), axis=axis).ravel()
        edges.extend(zip(lo.tolist(), hi.tolist()))
    coords = np.array(list(np.ndindex(shape)), dtype=float)
    return EmbeddedGraph(Graph.from_edges(side**D, edges), coords, "euclidean", _GRID_RHO[D], 1.0)


def _ball_count(points: np.ndarray, center: np.ndarray, radius: float) -> int:
    return int(np.sum(poincare_distance(center, points) <= radius + TOL))


def make_hyperbolic_patch(p: int, q: int, rings: int) -> EmbeddedGraph:
    """Vertex graph of ``rings`` layers of the {p,q} tiling, Poincare coordinates.

    ``w`` is the tiling edge length, raised to the longest realised edge
    when rounding far from the centre stretches one slightly. ``rho`` is the number of tiling
    vertices in a radius-``2w`` ball around any vertex of the full tiling,
    measured once on a three-ring patch (the tiling is vertex-transitive,
    and patch balls can only hold fewer).
    """
    pts, edges, length = tiling_patch(p, q, rings)
    disk = hyperboloid_to_poincare(pts)
    ref = hyperboloid_to_poincare(tiling_patch(p, q, 3)[0])
    centre = ref[np.argmin(np.sum(ref**2, axis=1))]
    rho = _ball_count(ref, centre, 2 * length)
    if edges:
        e = np.array(edges)
        length = max(length, float(poincare_distance(disk[e[:, 0]], disk[e[:, 1]]).max()))
    return EmbeddedGraph(Graph.from_edges(len(disk), edges), disk, "poincare", rho, length)


def make_random_regular(degree: int, n: int, seed: int = 0, max_attempts: int = 10_000) -> Graph:
    """Uniform simple ``degree``-regular graph from the pairing model.

    Half-edges are matched at random and the whole matching is redrawn
    whenever it creates a loop or a repeated edge.
    """
    if degree < 3:
        raise InputError(f"degree must be >= 3, got {degree}")
    if degree >= n:
        raise InputError(f"degree {degree} needs more than {n} vertices")
    if (degree * n) % 2:
        raise InputError(f"degree * n = {degree * n} is odd")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), degree)
    for _ in range(max_attempts):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        lo = pairs.min(axis=1)
        hi = pairs.max(axis=1)
        if np.any(lo == hi):
            continue
        keys = lo.astype(np.int64) * n + hi
        if len(np.unique(keys)) != len(keys):
            continue
        return Graph.from_edges(n, zip(lo.tolist(), hi.tolist()))
    raise InputError(f"no simple {degree}-regular graph on {n} vertices after {max_attempts} draws")


def geometric_cut_separator(eg: EmbeddedGraph, alpha: float = 0.5) -> Separation:
    """Sweep hyperplanes (geodesics in the disk) across the embedding.

    For each sweep position the separator is the set of vertices adjacent
    across the cut, all of which lie within ``w`` of the cut locus.
    """
    return heuristic_separator(eg.graph, alpha, "geometric_cut", coords=eg.coords, model=eg.model)


def locality_problems(eg: EmbeddedGraph, limit: int = 10) -> list[str]:
    """Edges longer than ``w`` and radius-``2w`` balls with more than ``rho`` vertices."""
    out = []
    g = eg.graph
    for u, v in g.edges:
        d = float(eg.distances_from(u)[v])
        if d > eg.w + TOL:
            out.append(f"edge ({u}, {v}) has length {d:.6g} > w={eg.w:.6g}")
            if len(out) >= limit:
                return out
    for v in range(g.n):
        count = int(np.sum(eg.distances_from(v) <= 2 * eg.w + TOL))
        if count > eg.rho:
            out.append(f"ball of radius 2w at vertex {v} holds {count} > rho={eg.rho}")
            if len(out) >= limit:
                return out
    return out


def nubg_extension(eg: EmbeddedGraph) -> Graph:
    """Add every pair at distance at most ``w`` as an edge."""
    edges = set(eg.graph.edges)
    for v in range(eg.graph.n):
        close = np.flatnonzero(eg.distances_from(v) <= eg.w + TOL)
        edges.update((v, int(u)) for u in close if u > v)
    return Graph.from_edges(eg.graph.n, edges)


def nubg_violations(g: Graph, eg: EmbeddedGraph, sigma: float | None = None) -> list[tuple[int, int]]:
    """Pairs closer than ``2 sigma`` that ``g`` leaves unjoined (``sigma = w/2`` by default)."""
    sigma = eg.w / 2 if sigma is None else sigma
    bad = []
    for v in range(g.n):
        close = np.flatnonzero(eg.distances_from(v) < 2 * sigma - TOL)
        bad.extend((v, int(u)) for u in close if u > v and not g.has_edge(v, int(u)))
    return bad


def format_coords(eg: EmbeddedGraph) -> str:
    """``coords v1`` sidecar: Euclidean rows are ``x y [z]``, disk rows ``r theta``."""
    dim = eg.coords.shape[1]
    head = f"coords v1 model={eg.model} n={eg.graph.n} dim={dim} w={eg.w!r} rho={eg.rho}"
    lines = [head]
    if eg.model == "poincare":
        r = np.hypot(eg.coords[:, 0], eg.coords[:, 1])
        theta = np.arctan2(eg.coords[:, 1], eg.coords[:, 0])
        rows = np.column_stack([r, theta])
    else:
        rows = eg.coords
    lines.extend(" ".join(repr(float(x)) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def parse_coords(text: str, graph: Graph) -> EmbeddedGraph:
    fields: dict[str, str] = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not fields:
            if parts[:2] != ["coords", "v1"]:
                raise ParseError("expected header 'coords v1 model=<model> ...'", lineno)
            try:
                fields = dict(p.split("=", 1) for p in parts[2:])
            except ValueError:
                raise ParseError("header fields must be key=value", lineno) from None
            for key in ("model", "n", "dim", "w", "rho"):
                if key not in fields:
                    raise ParseError(f"header is missing {key}=", lineno)
            continue
        try:
            row = [float(x) for x in parts]
        except ValueError:
            raise ParseError(f"non-numeric coordinate in {line!r}", lineno) from None
        if len(row) != int(fields["dim"]):
            raise ParseError(f"expected {fields['dim']} values, got {len(row)}", lineno)
        rows.append(row)
    if not fields:
        raise ParseError("empty coords file")
    n = int(fields["n"])
    if n != graph.n or len(rows) != n:
        raise ParseError(f"coords list {len(rows)} rows for a graph with {graph.n} vertices")
    arr = np.array(rows, dtype=float).reshape(n, int(fields["dim"]))
    if fields["model"] == "poincare":
        arr = np.column_stack([arr[:, 0] * np.cos(arr[:, 1]), arr[:, 0] * np.sin(arr[:, 1])])
    try:
        return EmbeddedGraph(graph, arr, fields["model"], int(fields["rho"]), float(fields["w"]))
    except (InputError, ValueError) as exc:
        raise ParseError(str(exc)) from None
