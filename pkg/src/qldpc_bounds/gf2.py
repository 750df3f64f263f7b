"""Bit-packed linear algebra over GF(2).

Rows are stored as Python integers: bit ``j`` of a row is the entry in
column ``j``. Arbitrary-precision ints give word-parallel XOR for free and
keep every routine here a pure function of immutable inputs.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import InputError

__all__ = [
    "BinaryMatrix",
    "SymplecticVector",
    "rank",
    "xor_basis",
    "reduce_vector",
    "rref",
    "select_columns",
    "nullspace",
    "in_rowspace",
    "row_combination",
    "symplectic_product",
]


@dataclass(frozen=True)
class BinaryMatrix:
    """An ``nrows x ncols`` matrix over GF(2) with int-packed rows."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if self.ncols < 0:
            raise InputError("ncols must be non-negative")
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise InputError(f"row {r:#x} does not fit in {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Iterable[int], ncols: int) -> BinaryMatrix:
        return cls(tuple(int(r) for r in rows), ncols)

    @classmethod
    def from_array(cls, array) -> BinaryMatrix:
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 2:
            raise InputError("expected a 2-D array")
        if np.any((arr != 0) & (arr != 1)):
            raise InputError("entries must be 0 or 1")
        rows = tuple(sum(1 << j for j, b in enumerate(row) if b) for row in arr)
        return cls(rows, arr.shape[1])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BinaryMatrix:
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, size: int) -> BinaryMatrix:
        return cls(tuple(1 << i for i in range(size)), size)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not 0 <= j < self.ncols:
            raise IndexError(f"column {j} out of range")
        return (self.rows[i] >> j) & 1

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                if (r >> j) & 1:
                    out[i, j] = 1
        return out

    def transpose(self) -> BinaryMatrix:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BinaryMatrix(tuple(cols), self.nrows)

    def stack(self, other: BinaryMatrix) -> BinaryMatrix:
        if other.ncols != self.ncols:
            raise InputError("column counts differ")
        return BinaryMatrix(self.rows + other.rows, self.ncols)

    def matvec(self, v: int) -> int:
        """Return ``M v`` packed as an int over the row index."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out


def xor_basis(rows: Iterable[int]) -> dict[int, int]:
    """Reduce rows into a basis keyed by leading (highest) bit."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            b = basis.get(lead)
            if b is None:
                basis[lead] = r
                break
            r ^= b
    return basis


def reduce_vector(basis: dict[int, int], v: int) -> int:
    """Residue of ``v`` after elimination against an :func:`xor_basis`."""
    while v:
        b = basis.get(v.bit_length() - 1)
        if b is None:
            return v
        v ^= b
    return 0


def rank(m: BinaryMatrix) -> int:
    """Dimension of the row space of ``m``; the empty matrix has rank 0."""
    return len(xor_basis(m.rows))


def rref(m: BinaryMatrix) -> tuple[list[int], list[int]]:
    """Reduced row echelon form, pivoting on the lowest column first.

    Returns ``(rows, pivots)`` where ``rows[i]`` has its pivot in column
    ``pivots[i]`` and that column is zero in every other returned row.
    """
    work = [r for r in m.rows if r]
    out: list[int] = []
    pivots: list[int] = []
    for col in range(m.ncols):
        bit = 1 << col
        idx = next((i for i, r in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        piv = work.pop(idx)
        work = [r ^ piv if r & bit else r for r in work]
        work = [r for r in work if r]
        out = [r ^ piv if r & bit else r for r in out]
        out.append(piv)
        pivots.append(col)
        if not work:
            break
    return out, pivots


def select_columns(m: BinaryMatrix, cols: Iterable[int]) -> BinaryMatrix:
    """Submatrix keeping the given columns, in ascending original order."""
    picked = sorted(set(cols))
    for c in picked:
        if not 0 <= c < m.ncols:
            raise InputError(f"column index {c} out of range for {m.ncols} columns")
    rows = []
    for r in m.rows:
        out = 0
        for k, c in enumerate(picked):
            if (r >> c) & 1:
                out |= 1 << k
        rows.append(out)
    return BinaryMatrix(tuple(rows), len(picked))


def nullspace(m: BinaryMatrix) -> list[int]:
    """Basis of ``{v : M v = 0}`` as column-packed ints.

    One basis vector per free column, in ascending free-column order.
    """
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for r, p in zip(rows, pivots):
            if (r >> free) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def in_rowspace(m: BinaryMatrix, v: int) -> bool:
    return reduce_vector(xor_basis(m.rows), v) == 0


def row_combination(m: BinaryMatrix, target: int) -> int | None:
    """Find a subset of rows XOR-ing to ``target``.

    Returns a mask over row indices, or ``None`` if ``target`` is not in the
    row space.
    """
    basis: dict[int, tuple[int, int]] = {}
    for i, r in enumerate(m.rows):
        combo = 1 << i
        while r:
            lead = r.bit_length() - 1
            hit = basis.get(lead)
            if hit is None:
                basis[lead] = (r, combo)
                break
            r ^= hit[0]
            combo ^= hit[1]
    combo = 0
    v = target
    while v:
        hit = basis.get(v.bit_length() - 1)
        if hit is None:
            return None
        v ^= hit[0]
        combo ^= hit[1]
    return combo


_PAULI_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}


@dataclass(frozen=True)
class SymplecticVector:
    """An n-qubit Pauli operator modulo phase, as bit masks ``x`` and ``z``."""

    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self):
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise InputError(f"bit masks do not fit in {self.n} qubits")

    @classmethod
    def from_pauli(cls, text: str) -> SymplecticVector:
        x = z = 0
        for i, ch in enumerate(text):
            try:
                bx, bz = _PAULI_BITS[ch]
            except KeyError:
                raise InputError(f"invalid Pauli letter {ch!r}") from None
            x |= bx << i
            z |= bz << i
        return cls(len(text), x, z)

    @classmethod
    def from_packed(cls, n: int, packed: int) -> SymplecticVector:
        """Inverse of :attr:`packed` (x in the low n bits, z in the high n)."""
        mask = (1 << n) - 1
        return cls(n, packed & mask, packed >> n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> SymplecticVector:
        bx, bz = _PAULI_BITS[letter]
        return cls(n, bx << qubit, bz << qubit)

    @property
    def packed(self) -> int:
        return self.x | (self.z << self.n)

    @property
    def support(self) -> frozenset[int]:
        s = self.x | self.z
        return frozenset(i for i in range(self.n) if (s >> i) & 1)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def to_pauli(self) -> str:
        letters = "IXZY"
        return "".join(letters[((self.x >> i) & 1) | (((self.z >> i) & 1) << 1)] for i in range(self.n))

    def __mul__(self, other: SymplecticVector) -> SymplecticVector:
        if other.n != self.n:
            raise InputError("qubit counts differ")
        return SymplecticVector(self.n, self.x ^ other.x, self.z ^ other.z)

    def __str__(self):
        return self.to_pauli()


def symplectic_product(u: SymplecticVector, v: SymplecticVector) -> int:
    """0 if the two Paulis commute, 1 if they anticommute."""
    if u.n != v.n:
        raise InputError(f"qubit counts differ ({u.n} vs {v.n})")
    return ((u.x & v.z).bit_count() + (u.z & v.x).bit_count()) & 1


def stack_symplectic(vectors: Sequence[SymplecticVector], n: int) -> BinaryMatrix:
    """Stack Paulis as rows of an ``m x 2n`` matrix, x-block first."""
    return BinaryMatrix(tuple(v.packed for v in vectors), 2 * n)
