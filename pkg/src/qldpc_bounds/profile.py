"""Sampled separability profiles and power-law exponent fits.

Subgraphs are grown by breadth-first search from random roots, so the
recorded maxima only bound the true profile from below.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import InputError
from .graph import Graph
from .separators import heuristic_separator

__all__ = ["ProfileSample", "ExponentFit", "SeparabilityProfile", "fit_exponent", "separability_profile"]

LABEL = "empirical lower estimate of the separability profile"


@dataclass(frozen=True)
class ProfileSample:
    r: int
    s_observed: int
    seed: int


@dataclass(frozen=True)
class ExponentFit:
    """Slope of ``log s`` against ``log r`` with a 95% band."""

    c: float
    low: float
    high: float
    points: int


def fit_exponent(rs: Sequence[float], ss: Sequence[float]) -> ExponentFit:
    """Least-squares log-log slope over the points with ``s > 0``.

    Fewer than two usable points (or constant ``r``) give slope 0; with
    exactly two points the band collapses onto the slope.
    """
    pts = [(r, s) for r, s in zip(rs, ss) if r > 0 and s > 0]
    if len({r for r, _ in pts}) < 2:
        return ExponentFit(0.0, 0.0, 0.0, len(pts))
    x = np.log([r for r, _ in pts])
    y = np.log([s for _, s in pts])
    fit = stats.linregress(x, y)
    if len(pts) > 2:
        half = float(stats.t.ppf(0.975, len(pts) - 2) * fit.stderr)
    else:
        half = 0.0
    return ExponentFit(float(fit.slope), float(fit.slope) - half, float(fit.slope) + half, len(pts))


@dataclass(frozen=True)
class SeparabilityProfile:
    samples: tuple[ProfileSample, ...]
    fit: ExponentFit
    alpha: float
    strategy: str
    seed: int
    label: str = LABEL

    @property
    def fitted_c(self) -> float:
        return self.fit.c

    def max_by_r(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for smp in self.samples:
            out[smp.r] = max(out.get(smp.r, 0), smp.s_observed)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["r", "s_observed", "seed"])
        for smp in self.samples:
            writer.writerow([smp.r, smp.s_observed, smp.seed])
        return buf.getvalue()

    def to_json(self) -> str:
        data = {
            "label": self.label,
            "alpha": self.alpha,
            "strategy": self.strategy,
            "seed": self.seed,
            "fitted_c": self.fit.c,
            "fitted_c_band": [self.fit.low, self.fit.high],
            "fit_points": self.fit.points,
            "max_by_r": {str(r): s for r, s in sorted(self.max_by_r().items())},
            "samples": [[smp.r, smp.s_observed, smp.seed] for smp in self.samples],
        }
        return json.dumps(data, indent=2) + "\n"


def _grown(g: Graph, root: int, r: int, comp: set[int]) -> list[int]:
    out = []
    for layer in g.bfs_layers(root, comp):
        out.extend(layer)
        if len(out) >= r:
            break
    return out[:r]


def separability_profile(
    g: Graph,
    alpha: float = 0.5,
    r_grid: Iterable[int] | None = None,
    samples_per_r: int = 4,
    seed: int = 0,
    strategy: str = "bfs_layering",
) -> SeparabilityProfile:
    """Largest heuristic separator seen on BFS-grown subgraphs of each size.

    Every component is sampled separately and each ``r`` keeps the maximum
    across components. The default grid is the powers of two up to ``n``.
    """
    if strategy == "geometric_cut":
        raise InputError("profiles use coordinate-free strategies")
    if r_grid is None:
        r_grid = [1 << i for i in range(max(g.n, 1).bit_length())]
    grid = sorted(set(int(r) for r in r_grid))
    for r in grid:
        if not 1 <= r <= max(g.n, 1):
            raise InputError(f"r={r} outside [1, {g.n}]")
    comps = g.components()
    samples = []
    for r in grid:
        for i in range(samples_per_r):
            sub_seed = int(np.random.SeedSequence([seed, r, i]).generate_state(1)[0])
            rng = np.random.default_rng(sub_seed)
            worst = 0
            for comp in comps:
                root = int(comp[rng.integers(len(comp))])
                verts = _grown(g, root, r, set(comp))
                if len(verts) < 2:
                    continue
                sub, _ = g.induced(verts)
                sep = heuristic_separator(sub, alpha, strategy, seed=sub_seed, tries=1)
                worst = max(worst, sep.size)
            samples.append(ProfileSample(r, worst, sub_seed))
    prof_max: dict[int, int] = {}
    for smp in samples:
        prof_max[smp.r] = max(prof_max.get(smp.r, 0), smp.s_observed)
    rs = sorted(prof_max)
    fit = fit_exponent(rs, [prof_max[r] for r in rs])
    return SeparabilityProfile(tuple(samples), fit, alpha, strategy, seed)


def log_fit_constant(ns: Sequence[int], ss: Sequence[int]) -> float:
    """Smallest ``C`` with ``s <= C log n`` at every point."""
    return max(s / math.log(n) for n, s in zip(ns, ss))
