"""Stabilizer and classical codes, standard families, and brute-force oracles.

The oracles here (:func:`brute_distance`, :func:`is_correctable_oracle`,
:func:`verify_cleaning_lemma`) work from the commutation structure
directly and are deliberately independent of the rank criterion in
:mod:`qldpc_bounds.correctability`.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from . import gf2
from .errors import InputError, InvariantViolation, ParseError
from .gf2 import BinaryMatrix, SymplecticVector, symplectic_product

__all__ = [
    "StabilizerCode",
    "ClassicalCode",
    "LogicalBasis",
    "CleaningReport",
    "FAMILIES",
    "parse_code",
    "format_code",
    "code_to_json",
    "parse_classical_code",
    "format_classical_code",
    "make_family",
    "logical_basis",
    "brute_distance",
    "min_weight_logical",
    "is_correctable_oracle",
    "logicals_supported_in",
    "verify_cleaning_lemma",
]


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    """A stabilizer code given by a (possibly overcomplete) generator list."""

    n: int
    generators: tuple[SymplecticVector, ...]
    name: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise InputError("a code needs at least one qubit")
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.n != self.n:
                raise InputError(f"generator {g} has {g.n} qubits, expected {self.n}")
        pair = self.first_anticommuting_pair()
        if pair is not None:
            i, j = pair
            raise InputError(f"generators {i} and {j} anticommute")

    def first_anticommuting_pair(self) -> tuple[int, int] | None:
        gens = self.generators
        for j in range(len(gens)):
            for i in range(j):
                if symplectic_product(gens[i], gens[j]):
                    return (i, j)
        return None

    def __eq__(self, other):
        if not isinstance(other, StabilizerCode):
            return NotImplemented
        return self.n == other.n and self.generators == other.generators

    def __hash__(self):
        return hash((self.n, self.generators))

    @property
    def m(self) -> int:
        return len(self.generators)

    @cached_property
    def check_matrix(self) -> BinaryMatrix:
        """The ``m x 2n`` symplectic check matrix (x-block then z-block)."""
        return gf2.stack_symplectic(self.generators, self.n)

    @cached_property
    def rank(self) -> int:
        return gf2.rank(self.check_matrix)

    @property
    def k(self) -> int:
        return self.n - self.rank

    @cached_property
    def commutation_matrix(self) -> BinaryMatrix:
        """Rows ``(g_z | g_x)``: ``C v = 0`` iff ``v`` commutes with every generator."""
        n = self.n
        return BinaryMatrix(tuple(g.z | (g.x << n) for g in self.generators), 2 * n)

    def syndrome(self, v: SymplecticVector) -> int:
        return self.commutation_matrix.matvec(v.packed)

    def is_stabilizer(self, v: SymplecticVector) -> bool:
        return gf2.in_rowspace(self.check_matrix, v.packed)

    def is_nontrivial_logical(self, v: SymplecticVector) -> bool:
        return self.syndrome(v) == 0 and not self.is_stabilizer(v)


@dataclass(frozen=True)
class LogicalBasis:
    code: StabilizerCode
    representatives: tuple[SymplecticVector, ...]


@dataclass(frozen=True)
class ClassicalCode:
    """Binary linear code with an ``m x n`` parity-check matrix."""

    n: int
    parity_checks: BinaryMatrix
    name: str = ""

    def __post_init__(self):
        if self.parity_checks.ncols != self.n:
            raise InputError("parity-check width does not match n")

    @property
    def k(self) -> int:
        return self.n - gf2.rank(self.parity_checks)

    def supports(self) -> list[frozenset[int]]:
        return [frozenset(j for j in range(self.n) if (r >> j) & 1) for r in self.parity_checks.rows]


# --- text formats -----------------------------------------------------------


def _header(line: str, tag: str, lineno: int) -> int:
    parts = line.split()
    if len(parts) != 3 or parts[0] != tag or parts[1] != "v1" or not parts[2].startswith("n="):
        raise ParseError(f"expected header '{tag} v1 n=<n>'", lineno)
    try:
        n = int(parts[2][2:])
    except ValueError:
        raise ParseError(f"bad qubit count {parts[2]!r}", lineno) from None
    if n < 1:
        raise ParseError("n must be positive", lineno)
    return n


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _build_code(n: int, entries: Sequence[tuple[int, str]], name: str) -> StabilizerCode:
    gens = []
    for idx, (lineno, word) in enumerate(entries):
        if len(word) != n:
            raise ParseError(f"generator {word!r} has length {len(word)}, expected {n}", lineno)
        try:
            g = SymplecticVector.from_pauli(word)
        except InputError as exc:
            raise ParseError(str(exc), lineno) from None
        for j, h in enumerate(gens):
            if symplectic_product(g, h):
                raise ParseError(f"generator {idx + 1} anticommutes with generator {j + 1}", lineno)
        gens.append(g)
    return StabilizerCode(n, tuple(gens), name)


def parse_code(text: str, name: str = "") -> StabilizerCode:
    """Parse the ``qecc v1`` text format or its JSON alternative."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
            n = int(data["n"])
            words = [str(w) for w in data["generators"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed code JSON: {exc}") from None
        if n < 1:
            raise ParseError("n must be positive")
        return _build_code(n, [(i + 1, w) for i, w in enumerate(words)], data.get("name", name))

    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty code file")
    lineno, head = lines[0]
    n = _header(head, "qecc", lineno)
    return _build_code(n, lines[1:], name)


def format_code(code: StabilizerCode) -> str:
    out = [f"qecc v1 n={code.n}"]
    if code.name:
        out.insert(0, f"# {code.name}")
    out.extend(g.to_pauli() for g in code.generators)
    return "\n".join(out) + "\n"


def code_to_json(code: StabilizerCode) -> str:
    return json.dumps({"n": code.n, "generators": [g.to_pauli() for g in code.generators]})


def parse_classical_code(text: str, name: str = "") -> ClassicalCode:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty code file")
    lineno, head = lines[0]
    n = _header(head, "cecc", lineno)
    rows = []
    for lineno, word in lines[1:]:
        if len(word) != n or set(word) - {"0", "1"}:
            raise ParseError(f"expected a 0/1 string of length {n}, got {word!r}", lineno)
        rows.append(sum(1 << j for j, ch in enumerate(word) if ch == "1"))
    return ClassicalCode(n, BinaryMatrix(tuple(rows), n), name)


def format_classical_code(code: ClassicalCode) -> str:
    out = [f"cecc v1 n={code.n}"]
    for r in code.parity_checks.rows:
        out.append("".join("1" if (r >> j) & 1 else "0" for j in range(code.n)))
    return "\n".join(out) + "\n"


# --- families ---------------------------------------------------------------


def _from_supports(n: int, x_supports: Iterable[Iterable[int]], z_supports: Iterable[Iterable[int]], name: str) -> StabilizerCode:
    gens = []
    for sup in x_supports:
        gens.append(SymplecticVector(n, x=sum(1 << q for q in sup)))
    for sup in z_supports:
        gens.append(SymplecticVector(n, z=sum(1 << q for q in sup)))
    return StabilizerCode(n, tuple(gens), name)


def _repetition(size: int) -> StabilizerCode:
    return _from_supports(size, [], [(i, i + 1) for i in range(size - 1)], f"repetition-{size}")


def _five_qubit() -> StabilizerCode:
    words = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
    return StabilizerCode(5, tuple(SymplecticVector.from_pauli(w) for w in words), "five_qubit")


_HAMMING_7 = [(0, 2, 4, 6), (1, 2, 5, 6), (3, 4, 5, 6)]


def _steane() -> StabilizerCode:
    return _from_supports(7, _HAMMING_7, _HAMMING_7, "steane")


def surface_layout(L: int) -> dict[tuple[int, int], int]:
    """Qubit index for each data site of the planar L x L patch.

    Sites live on a ``(2L-1) x (2L-1)`` board at ``(row, col)`` with
    ``row + col`` even, numbered row-major; there are ``L^2 + (L-1)^2``.
    """
    side = 2 * L - 1
    sites = [(r, c) for r in range(side) for c in range(side) if (r + c) % 2 == 0]
    return {rc: i for i, rc in enumerate(sites)}


def _surface(L: int) -> StabilizerCode:
    side = 2 * L - 1
    qubit = surface_layout(L)

    def around(r, c):
        nbrs = [(r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)]
        return sorted(qubit[p] for p in nbrs if p in qubit)

    # X checks on lattice vertices (even row, odd col), Z checks on faces (odd row, even col)
    x_checks = [around(r, c) for r in range(0, side, 2) for c in range(1, side, 2)]
    z_checks = [around(r, c) for r in range(1, side, 2) for c in range(0, side, 2)]
    return _from_supports(len(qubit), x_checks, z_checks, f"surface-{L}")


def _toric(L: int) -> StabilizerCode:
    def h(x, y):
        return (y % L) * L + (x % L)

    def v(x, y):
        return L * L + (y % L) * L + (x % L)

    stars = [(h(x, y), h(x - 1, y), v(x, y), v(x, y - 1)) for y in range(L) for x in range(L)]
    plaquettes = [(h(x, y), h(x, y + 1), v(x, y), v(x + 1, y)) for y in range(L) for x in range(L)]
    return _from_supports(2 * L * L, stars, plaquettes, f"toric-{L}")


FAMILIES = {
    "repetition": (2, _repetition),
    "surface": (2, _surface),
    "toric": (2, _toric),
    "five_qubit": (None, _five_qubit),
    "steane": (None, _steane),
}


def make_family(family: str, size: int | None = None) -> StabilizerCode:
    """Build a standard code.

    ``size`` is the length for ``repetition`` and the linear size ``L`` for
    ``surface`` (n = L^2 + (L-1)^2) and ``toric`` (n = 2L^2). The
    ``five_qubit`` and ``steane`` codes take no size.
    """
    try:
        minimum, build = FAMILIES[family]
    except KeyError:
        raise InputError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    if minimum is None:
        if size is not None:
            code = build()
            if size != code.n:
                raise InputError(f"{family} has fixed size n={code.n}")
            return code
        return build()
    if size is None:
        raise InputError(f"{family} needs a size")
    if size < minimum:
        raise InputError(f"{family} needs size >= {minimum}, got {size}")
    return build(size)


# --- logical operators and oracles -------------------------------------------


def logical_basis(code: StabilizerCode) -> LogicalBasis:
    """Representatives of a basis of ``N(S) / S``; not paired into X/Z."""
    if code.k == 0:
        return LogicalBasis(code, ())
    n = code.n
    candidates = gf2.nullspace(code.commutation_matrix)
    candidates.sort(key=lambda p: ((p & ((1 << n) - 1) | p >> n).bit_count(), p))
    basis = gf2.xor_basis(code.check_matrix.rows)
    reps = []
    for p in candidates:
        r = gf2.reduce_vector(basis, p)
        if r:
            basis[r.bit_length() - 1] = r
            reps.append(SymplecticVector.from_packed(n, p))
            if len(reps) == 2 * code.k:
                break
    return LogicalBasis(code, tuple(reps))


def _single_qubit_syndromes(code: StabilizerCode) -> list[tuple[int, int, int]]:
    out = []
    for q in range(code.n):
        sx = code.syndrome(SymplecticVector.single(code.n, q, "X"))
        sz = code.syndrome(SymplecticVector.single(code.n, q, "Z"))
        out.append((sx, sz, sx ^ sz))
    return out


def min_weight_logical(code: StabilizerCode, weight_cap: int) -> SymplecticVector | None:
    """Lowest-weight nontrivial logical of weight at most ``weight_cap``.

    Enumerates Paulis support by support in order of increasing weight,
    with every qubit of the support acting nontrivially.
    """
    if weight_cap < 1:
        raise InputError("weight_cap must be >= 1")
    if code.k == 0:
        return None
    n = code.n
    synd = _single_qubit_syndromes(code)
    basis = gf2.xor_basis(code.check_matrix.rows)
    letters = ((1, 0), (0, 1), (1, 1))  # X, Z, Y

    for w in range(1, min(weight_cap, n) + 1):
        for support in itertools.combinations(range(n), w):
            rows = [synd[q] for q in support]
            for choice in itertools.product(range(3), repeat=w):
                s = 0
                for row, c in zip(rows, choice):
                    s ^= row[c]
                if s:
                    continue
                x = z = 0
                for q, c in zip(support, choice):
                    bx, bz = letters[c]
                    x |= bx << q
                    z |= bz << q
                if gf2.reduce_vector(basis, x | (z << n)):
                    return SymplecticVector(n, x, z)
    return None


def brute_distance(code: StabilizerCode, weight_cap: int | None = None) -> int | None:
    """Exact distance if it is at most ``weight_cap``, else ``None``.

    ``None`` means "exceeds cap" (or no logical qubits at all).
    """
    cap = code.n if weight_cap is None else weight_cap
    witness = min_weight_logical(code, cap)
    return None if witness is None else witness.weight


def _region(code_n: int, region: Iterable[int]) -> list[int]:
    qubits = sorted(set(region))
    for q in qubits:
        if not 0 <= q < code_n:
            raise InputError(f"qubit {q} out of range for n={code_n}")
    return qubits


def logicals_supported_in(code: StabilizerCode, region: Iterable[int]) -> list[SymplecticVector]:
    """Basis of the normalizer elements supported inside ``region``."""
    n = code.n
    qubits = _region(n, region)
    cols = qubits + [n + q for q in qubits]
    local = gf2.select_columns(code.commutation_matrix, cols)
    out = []
    for v in gf2.nullspace(local):
        x = z = 0
        for k, q in enumerate(qubits):
            if (v >> k) & 1:
                x |= 1 << q
            if (v >> (k + len(qubits))) & 1:
                z |= 1 << q
        out.append(SymplecticVector(n, x, z))
    return out


def is_correctable_oracle(code: StabilizerCode, region: Iterable[int]) -> bool:
    """True iff every normalizer element supported in ``region`` is a stabilizer."""
    return all(code.is_stabilizer(v) for v in logicals_supported_in(code, region))


@dataclass(frozen=True)
class CleaningReport:
    """Outcome of the cleaning dichotomy on one region.

    ``branch == 1``: ``witness`` is a nontrivial logical supported in the
    region. ``branch == 2``: ``cleaned[i]`` is equivalent to the i-th basis
    representative and acts trivially on the region; ``generators_used[i]``
    lists the generators multiplied in, each of which overlaps the region.
    """

    branch: int
    witness: SymplecticVector | None = None
    cleaned: tuple[SymplecticVector, ...] = ()
    generators_used: tuple[tuple[int, ...], ...] = field(default=())


def verify_cleaning_lemma(code: StabilizerCode, region: Iterable[int]) -> CleaningReport:
    """Decide which branch of the cleaning dichotomy holds, with a witness.

    Cleaning is attempted first by solving for generator products that
    agree with each representative on the region; the logical search is
    run independently, and both succeeding (or both failing) raises.
    """
    if code.k == 0:
        raise InputError("cleaning needs at least one logical qubit")
    n = code.n
    qubits = _region(n, region)
    mask = sum(1 << q for q in qubits)
    full = mask | (mask << n)
    touching = [i for i, g in enumerate(code.generators) if (g.x | g.z) & mask]
    local = BinaryMatrix(tuple(code.generators[i].packed & full for i in touching), 2 * n)

    cleaned = []
    used = []
    for rep in logical_basis(code).representatives:
        combo = gf2.row_combination(local, rep.packed & full)
        if combo is None:
            break
        product = rep
        idx = []
        for k, gi in enumerate(touching):
            if (combo >> k) & 1:
                product = product * code.generators[gi]
                idx.append(gi)
        cleaned.append(product)
        used.append(tuple(idx))
    can_clean = len(cleaned) == 2 * code.k

    witness = next((v for v in logicals_supported_in(code, qubits) if not code.is_stabilizer(v)), None)
    if can_clean and witness is not None:
        raise InvariantViolation(f"region {qubits} both cleanable and holds logical {witness}")
    if can_clean:
        return CleaningReport(2, cleaned=tuple(cleaned), generators_used=tuple(used))
    if witness is None:
        raise InvariantViolation(f"region {qubits} neither cleanable nor holds a logical")
    return CleaningReport(1, witness=witness)
