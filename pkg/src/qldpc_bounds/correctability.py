"""Rank-based erasure correctability and the tripartition dimension bound."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from . import gf2
from .codes import ClassicalCode, StabilizerCode
from .errors import InputError, InvariantViolation, PreconditionError

__all__ = [
    "TripartitionWitness",
    "dz_correctable",
    "dz_ranks",
    "dimension_bound_from_tripartition",
    "classical_correctable",
]


def _qubits(n: int, region: Iterable[int]) -> list[int]:
    out = sorted(set(region))
    for q in out:
        if not 0 <= q < n:
            raise InputError(f"qubit {q} out of range for n={n}")
    return out


def dz_ranks(code: StabilizerCode, region: Iterable[int]) -> tuple[int, int, int]:
    """``(rank H, rank H_E, rank H_Ebar)`` with both columns of each qubit kept."""
    n = code.n
    inside = _qubits(n, region)
    outside = sorted(set(range(n)) - set(inside))
    h = code.check_matrix
    h_in = gf2.select_columns(h, inside + [n + q for q in inside])
    h_out = gf2.select_columns(h, outside + [n + q for q in outside])
    return code.rank, gf2.rank(h_in), gf2.rank(h_out)


def dz_correctable(code: StabilizerCode, region: Iterable[int]) -> bool:
    """Erasure of ``region`` is correctable iff ``2|E| <= rk H + rk H_E - rk H_Ebar``."""
    region = _qubits(code.n, region)
    r, r_in, r_out = dz_ranks(code, region)
    return 2 * len(region) <= r + r_in - r_out


def classical_correctable(code: ClassicalCode, region: Iterable[int]) -> bool:
    """No nonzero codeword is supported inside ``region``."""
    cols = _qubits(code.n, region)
    return gf2.rank(gf2.select_columns(code.parity_checks, cols)) == len(cols)


@dataclass(frozen=True)
class TripartitionWitness:
    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]
    k_bound: int


def dimension_bound_from_tripartition(code: StabilizerCode, A: Iterable[int], B: Iterable[int]) -> TripartitionWitness:
    """Certify ``k <= |C|`` for ``C`` the complement of two correctable sets."""
    a = frozenset(_qubits(code.n, A))
    b = frozenset(_qubits(code.n, B))
    if a & b:
        raise InputError(f"A and B overlap on {sorted(a & b)}")
    for label, region in (("A", a), ("B", b)):
        if not dz_correctable(code, region):
            raise PreconditionError(f"region {label}={sorted(region)} is not correctable")
    c = frozenset(range(code.n)) - a - b
    if code.k > len(c):
        raise InvariantViolation(f"k={code.k} exceeds |C|={len(c)} for correctable A, B")
    return TripartitionWitness(a, b, c, len(c))
