"""The leftover-size recurrence S_d and closed-form bound evaluations.

``S_d(r) = c_alpha * s(r) + 2 * S_d(child(r))`` for ``r >= d`` and
``S_d(r) = 0`` below ``d``, where ``child(r) = min(ceil(alpha * r), r - 1)``.
The child rule rounds up (so leftovers are never undercounted) and always
shrinks, which keeps ``d = 1`` finite.
"""

from __future__ import annotations

import bisect
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError

__all__ = [
    "PowerLaw",
    "TableS",
    "RecurrenceParams",
    "child_size",
    "eval_S_d",
    "iterate_S_d",
    "ClosedFormReport",
    "closed_form_check",
    "FormulaLine",
    "formula_bounds",
    "distance_bound",
    "transversal_level_formula",
]


@dataclass(frozen=True)
class PowerLaw:
    """``s(r) = sigma * r**c``, rounded up when ``integer`` is set."""

    sigma: float
    c: float
    integer: bool = False

    def __post_init__(self):
        if not 0 < self.c <= 1:
            raise InputError(f"power-law exponent must lie in (0, 1], got {self.c}")
        if self.sigma <= 0:
            raise InputError("sigma must be positive")

    def __call__(self, r: int) -> float:
        val = self.sigma * r**self.c
        return math.ceil(val - 1e-12) if self.integer else val


@dataclass(frozen=True)
class TableS:
    """Nondecreasing tabulated ``s``; sizes between keys take the next key up."""

    values: Mapping[int, float]
    keys: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        keys = tuple(sorted(self.values))
        if not keys:
            raise InputError("empty s table")
        vals = [self.values[k] for k in keys]
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise InputError("tabulated s must be nondecreasing")
        object.__setattr__(self, "keys", keys)

    @classmethod
    def running_max(cls, observations: Sequence[tuple[int, int]]) -> TableS:
        """Smallest nondecreasing table dominating ``(r, s)`` observations."""
        best: dict[int, float] = {}
        for r, s in observations:
            best[r] = max(best.get(r, 0), s)
        out, run = {}, 0
        for r in sorted(best):
            run = max(run, best[r])
            out[r] = run
        return cls(out or {1: 0})

    def __call__(self, r: int) -> float:
        i = bisect.bisect_left(self.keys, r)
        if i == len(self.keys):
            # beyond the table: hold the last value (exact for observed maxima)
            return self.values[self.keys[-1]]
        return self.values[self.keys[i]]


@dataclass(frozen=True)
class RecurrenceParams:
    s_spec: PowerLaw | TableS
    c_alpha: float = 1.0
    alpha: float = 0.5

    def __post_init__(self):
        if self.c_alpha < 1:
            raise InputError("c_alpha must be >= 1")
        if not 0 < self.alpha < 1:
            raise InputError("alpha must lie in (0, 1)")


def child_size(r: int, alpha: float) -> int:
    return min(math.ceil(alpha * r - 1e-12), r - 1)


def eval_S_d(params: RecurrenceParams, d: int, n: int) -> float:
    """Unrolled recurrence value; the chain of child sizes is a single path."""
    if d < 1 or n < 0:
        raise InputError("need d >= 1 and n >= 0")
    total = 0.0
    mult = 1
    r = n
    while r >= d and r > 0:
        total += mult * params.c_alpha * params.s_spec(r)
        mult *= 2
        r = child_size(r, params.alpha)
    return int(total) if float(total).is_integer() else total


def iterate_S_d(params: RecurrenceParams, d: int, n: int, max_rounds: int = 1000) -> int | None:
    """Least ``R`` with ``S_d`` applied ``R`` times to ``n`` below ``d``; ``None`` if it stalls."""
    x = n
    for rounds in range(max_rounds + 1):
        if x < d:
            return rounds
        nxt = eval_S_d(params, d, math.floor(x))
        if nxt >= x:
            return None
        x = nxt
    return None


@dataclass(frozen=True)
class ClosedFormReport:
    d: int
    ns: tuple[int, ...]
    ratios: tuple[float, ...]
    max_ratio: float
    tail_change: float
    bounded: bool


def closed_form_check(params: RecurrenceParams, d: int, ns: Sequence[int], limit: float = 8.0, tail_tol: float = 0.01) -> ClosedFormReport:
    """Ratios ``S_d(n) / (d**(c-1) n)`` along ``ns``.

    ``bounded`` means every ratio is at most ``limit`` and the last step
    changes the ratio by less than ``tail_tol`` (relative), i.e. it has
    levelled off.
    """
    spec = params.s_spec
    if not isinstance(spec, PowerLaw):
        raise InputError("closed form needs a power-law s")
    if spec.c >= 1:
        raise InputError("closed form requires c < 1")
    ns = tuple(sorted(ns))
    ratios = tuple(eval_S_d(params, d, n) / (d ** (spec.c - 1) * n) for n in ns)
    mx = max(ratios)
    tail = abs(ratios[-1] - ratios[-2]) / ratios[-1] if len(ratios) > 1 and ratios[-1] else 0.0
    return ClosedFormReport(d, ns, ratios, mx, tail, mx <= limit and tail < tail_tol)


def distance_bound(tw_upper: int, delta: int) -> int:
    return delta * (tw_upper + 1)


def transversal_level_formula(c: float, alpha_dist: float) -> int:
    """``ceil((1 - a) / (a (1 - c)))`` for exponents strictly inside (0, 1)."""
    for name, val in (("c", c), ("alpha_dist", alpha_dist)):
        if not 0 < val < 1:
            raise InputError(f"{name} must lie strictly between 0 and 1, got {val}")
    c_, a_ = Fraction(c).limit_denominator(10**6), Fraction(alpha_dist).limit_denominator(10**6)
    return math.ceil((1 - a_) / (a_ * (1 - c_)))


@dataclass(frozen=True)
class FormulaLine:
    kind: str
    statement: str
    value: float | None
    asymptotic: bool

    def as_dict(self) -> dict:
        return {"kind": self.kind, "statement": self.statement, "value": self.value, "asymptotic": self.asymptotic}


def _need(params: Mapping, *names):
    missing = [k for k in names if params.get(k) is None]
    if missing:
        raise InputError(f"missing parameter(s): {', '.join(missing)}")
    return [params[k] for k in names]


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def formula_bounds(kind: str, **params) -> list[FormulaLine]:
    """Instantiate one family of bounds.

    ``hyperbolic_D`` needs ``D`` (``n`` optional), ``genus_g`` needs ``g``
    and ``n``, ``classical`` needs ``n``, ``d_lb`` and ``s_spec``,
    ``projector`` needs ``delta`` and ``tw_upper``. Only the projector line
    is an explicit inequality; the rest hold up to unknown constants.
    """
    if kind == "hyperbolic_D":
        (D,) = _need(params, "D")
        D = int(D)
        if D < 2:
            raise InputError("D must be >= 2")
        n = params.get("n")
        if D == 2:
            return [FormulaLine(kind, "d = O(log n)", math.log(n) if n else None, True)]
        e = Fraction(D - 2, D - 1)
        return [FormulaLine(kind, f"d = O(n^{_frac(e)})", float(n) ** float(e) if n else None, True)]
    if kind == "genus_g":
        g, n = _need(params, "g", "n")
        return [
            FormulaLine(kind, "d = O(sqrt(g n))", math.sqrt(g * n), True),
            FormulaLine(kind, "k d = O(g n)", float(g * n), True),
        ]
    if kind == "classical":
        n, d_lb, spec = _need(params, "n", "d_lb", "s_spec")
        rp = RecurrenceParams(spec, params.get("c_alpha", 1.0), params.get("alpha", 0.5))
        return [FormulaLine(kind, "k = O(S_d(n))", float(eval_S_d(rp, int(d_lb), int(n))), True)]
    if kind == "projector":
        delta, tw = _need(params, "delta", "tw_upper")
        return [FormulaLine(kind, "d <= 8 delta^2 tw", 8 * delta * delta * tw, False)]
    raise InputError(f"unknown formula kind {kind!r}")
