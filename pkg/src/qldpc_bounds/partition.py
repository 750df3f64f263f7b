"""Recursive separation into small decoupled blocks, and the bounds built on it."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .bounds import RecurrenceParams, TableS, eval_S_d, iterate_S_d
from .codes import StabilizerCode
from .connectivity import are_decoupled
from .correctability import TripartitionWitness, dimension_bound_from_tripartition, dz_correctable
from .errors import BudgetExceeded, InputError, InvariantViolation, PreconditionError, SeparationFailed
from .graph import Graph
from .separators import Separation, exact_separator, heuristic_separator

__all__ = [
    "SplitRecord",
    "RecursivePartition",
    "recursive_separation",
    "DimensionBound",
    "dimension_bound",
    "TransversalLevel",
    "transversal_level_empirical",
]


@dataclass(frozen=True)
class SplitRecord:
    piece_size: int
    separator: frozenset[int]
    a_size: int
    b_size: int
    depth: int
    exact: bool


@dataclass(frozen=True)
class RecursivePartition:
    blocks: tuple[frozenset[int], ...]
    complement: frozenset[int]
    d_target: int
    split_tree: tuple[SplitRecord, ...]

    @property
    def covered(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    def observed(self) -> list[tuple[int, int]]:
        return [(rec.piece_size, len(rec.separator)) for rec in self.split_tree]

    def problems(self, g: Graph, vertices: Iterable[int] | None = None) -> list[str]:
        out = []
        universe = frozenset(range(g.n)) if vertices is None else frozenset(vertices)
        big = [len(b) for b in self.blocks if len(b) >= self.d_target]
        if big:
            out.append(f"blocks of size {big} are not below {self.d_target}")
        covered = self.covered
        if sum(map(len, self.blocks)) != len(covered) or covered & self.complement:
            out.append("blocks and complement overlap")
        if covered | self.complement != universe:
            out.append("blocks and complement do not cover the vertex set")
        if not are_decoupled(g, self.blocks):
            out.append("two blocks are joined by an edge")
        return out


def _separate(g: Graph, verts: list[int], alpha, strategy, seed, exact_max, budget, coords, model) -> tuple[Separation, list[int], bool]:
    sub, labels = g.induced(verts)
    if sub.n <= exact_max:
        return exact_separator(sub, alpha, max_vertices=exact_max, budget=budget), labels, True
    sub_coords = None if coords is None else np.asarray(coords)[labels]
    return heuristic_separator(sub, alpha, strategy, seed=seed, coords=sub_coords, model=model), labels, False


def recursive_separation(
    g: Graph,
    d_target: int,
    alpha: float = 0.5,
    strategy: str = "bfs_layering",
    seed: int = 0,
    *,
    vertices: Iterable[int] | None = None,
    exact_sep_max: int = 0,
    sep_budget: int = 5_000_000,
    params: RecurrenceParams | None = None,
    coords=None,
    model: str = "euclidean",
) -> RecursivePartition:
    """Split until every piece is smaller than ``d_target``.

    Each piece of size ``r >= d_target`` is cut into ``A, S, B``; ``S``
    joins the complement and ``A``, ``B`` are processed in turn. Pieces of
    at most ``exact_sep_max`` vertices use the exact separator, capped at
    ``sep_budget`` candidates. With
    ``params`` given, the complement size is checked against
    ``eval_S_d`` whenever every separator found respects ``c_alpha * s``.
    ``vertices`` restricts the run to an induced subgraph.
    """
    if d_target < 1:
        raise InputError("d_target must be >= 1")
    universe = sorted(range(g.n) if vertices is None else set(vertices))
    blocks: list[frozenset[int]] = []
    complement: set[int] = set()
    records: list[SplitRecord] = []
    queue = deque([(universe, 0)])
    while queue:
        piece, depth = queue.popleft()
        if len(piece) < d_target:
            if piece:
                blocks.append(frozenset(piece))
            continue
        try:
            sep, labels, exact = _separate(g, piece, alpha, strategy, seed, exact_sep_max, sep_budget, coords, model)
        except (BudgetExceeded, InputError) as exc:
            raise SeparationFailed(f"separating a piece of {len(piece)} vertices failed: {exc}", records) from exc
        a = sorted(labels[i] for i in sep.A)
        b = sorted(labels[i] for i in sep.B)
        s = frozenset(labels[i] for i in sep.S)
        records.append(SplitRecord(len(piece), s, len(a), len(b), depth, exact))
        complement |= s
        queue.append((a, depth + 1))
        queue.append((b, depth + 1))

    part = RecursivePartition(
        tuple(sorted(blocks, key=min)), frozenset(complement), d_target, tuple(records)
    )
    if params is not None:
        respects = all(sz <= params.c_alpha * params.s_spec(r) + 1e-9 for r, sz in part.observed())
        bound = eval_S_d(params, d_target, len(universe))
        if respects and len(part.complement) > bound + 1e-9:
            raise InvariantViolation(f"leftover {len(part.complement)} exceeds recurrence value {bound}")
    return part


@dataclass(frozen=True)
class DimensionBound:
    k_upper: int
    witness: TripartitionWitness
    first: RecursivePartition
    second: RecursivePartition


def _certify_blocks(code: StabilizerCode, part: RecursivePartition, d_lb: int):
    for block in part.blocks:
        if not dz_correctable(code, block):
            raise InvariantViolation(
                f"block {sorted(block)} of size {len(block)} < {d_lb} is not correctable; d_lb is not a lower bound"
            )
    if not dz_correctable(code, part.covered):
        raise InvariantViolation("union of decoupled correctable blocks is not correctable")


def dimension_bound(
    g: Graph,
    code: StabilizerCode,
    d_lb: int,
    alpha: float = 0.5,
    strategy: str = "bfs_layering",
    seed: int = 0,
    exact_sep_max: int = 0,
    sep_budget: int = 5_000_000,
) -> DimensionBound:
    """``k <= |C|`` from two rounds of recursive separation.

    Round one gives correctable ``A`` (decoupled blocks smaller than
    ``d_lb``); round two runs on the leftover and gives ``B``; ``C`` is
    what remains. ``d_lb = 1`` leaves ``A = B = {}`` and the trivial
    ``k <= n``.
    """
    if d_lb < 1:
        raise InputError("d_lb must be >= 1")
    if g.n != code.n:
        raise InputError("graph and code disagree on n")
    opts = dict(exact_sep_max=exact_sep_max, sep_budget=sep_budget)
    first = recursive_separation(g, d_lb, alpha, strategy, seed, **opts)
    _certify_blocks(code, first, d_lb)
    second = recursive_separation(g, d_lb, alpha, strategy, seed, vertices=first.complement, **opts)
    _certify_blocks(code, second, d_lb)
    try:
        witness = dimension_bound_from_tripartition(code, first.covered, second.covered)
    except PreconditionError as exc:
        raise InvariantViolation(str(exc)) from exc
    return DimensionBound(witness.k_bound, witness, first, second)


@dataclass(frozen=True)
class TransversalLevel:
    """``R`` with ``R + 1`` correctable regions; ``R`` is ``None`` when not applicable.

    ``R_recurrence`` iterates ``S_d`` built from the running maximum of the
    separators actually found, and is ``None`` if that iteration stalls.
    """

    R: int | None
    regions: tuple[frozenset[int], ...]
    R_recurrence: int | None
    note: str


def transversal_level_empirical(
    g: Graph,
    code: StabilizerCode,
    d_lb: int,
    alpha: float = 0.5,
    strategy: str = "bfs_layering",
    seed: int = 0,
    exact_sep_max: int = 0,
    sep_budget: int = 5_000_000,
) -> TransversalLevel:
    if d_lb <= 1:
        return TransversalLevel(None, (), None, "not applicable: no nonempty region is correctable by size when d <= 1")
    regions: list[frozenset[int]] = []
    observed: list[tuple[int, int]] = []
    rest = frozenset(range(g.n))
    while len(rest) >= d_lb:
        part = recursive_separation(
            g, d_lb, alpha, strategy, seed, vertices=rest, exact_sep_max=exact_sep_max, sep_budget=sep_budget
        )
        _certify_blocks(code, part, d_lb)
        if not part.blocks:
            raise InvariantViolation(f"no progress separating {len(rest)} vertices")
        regions.append(part.covered)
        observed.extend(part.observed())
        rest = part.complement
    regions.append(rest)
    for region in regions:
        if not dz_correctable(code, region):
            raise InvariantViolation(f"region of size {len(region)} is not correctable")
    table = RecurrenceParams(TableS.running_max(observed), 1.0, alpha)
    r_rec = iterate_S_d(table, d_lb, g.n)
    R = len(regions) - 1
    if r_rec is not None and R > r_rec:
        raise InvariantViolation(f"empirical level {R} exceeds recurrence level {r_rec}")
    return TransversalLevel(R, tuple(regions), r_rec, f"valid for any code with d >= {d_lb}")
