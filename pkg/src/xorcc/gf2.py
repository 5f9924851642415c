"""Bit-packed linear algebra over GF(2).

Vectors are n-bit words with coordinate x_1 at the least significant bit.
Binary strings are written with x_1 leftmost, so ``"110"`` is the integer 3.
Canonical subspace bases are in reduced row-echelon form where a row's pivot
is its leftmost (least significant) set coordinate and pivots increase
down the rows.
"""

from dataclasses import dataclass
from typing import Iterable, Tuple, Union

from ._errors import UsageError, check_dimension

__all__ = [
    "BitVector",
    "Gf2Matrix",
    "Gf2Subspace",
    "parity",
    "inner_product",
    "rref",
    "rank",
    "kernel_basis",
    "parity_check_matrix",
    "syndrome",
    "span",
    "to_bitstring",
    "from_bitstring",
]


def parity(x: int) -> int:
    return x.bit_count() & 1


def to_bitstring(x: int, n: int) -> str:
    return "".join("1" if (x >> i) & 1 else "0" for i in range(n))


def from_bitstring(s: str) -> int:
    s = s.strip()
    if any(c not in "01" for c in s):
        raise UsageError(f"not a binary string: {s!r}")
    out = 0
    for i, c in enumerate(s):
        if c == "1":
            out |= 1 << i
    return out


@dataclass(frozen=True)
class BitVector:
    n: int
    bits: int

    def __post_init__(self):
        check_dimension(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise UsageError(f"bits {self.bits:#x} do not fit in dimension {self.n}")

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        s = s.strip()
        return cls(len(s), from_bitstring(s))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def distance(self, other: "BitVector") -> int:
        _same_dim(self, other)
        return (self.bits ^ other.bits).bit_count()

    def __xor__(self, other: "BitVector") -> "BitVector":
        _same_dim(self, other)
        return BitVector(self.n, self.bits ^ other.bits)

    def __int__(self) -> int:
        return self.bits

    def __str__(self) -> str:
        return to_bitstring(self.bits, self.n)


def _same_dim(x: BitVector, y: BitVector) -> None:
    if x.n != y.n:
        raise UsageError(f"dimension mismatch: {x.n} vs {y.n}")


def inner_product(x: BitVector, y: BitVector) -> int:
    _same_dim(x, y)
    return parity(x.bits & y.bits)


Row = Union[int, BitVector]


def _row_bits(row: Row, n: int) -> int:
    if isinstance(row, BitVector):
        if row.n != n:
            raise UsageError(f"row of dimension {row.n} in a matrix of dimension {n}")
        return row.bits
    row = int(row)
    if row < 0 or row >> n:
        raise UsageError(f"row {row:#x} does not fit in dimension {n}")
    return row


@dataclass(frozen=True)
class Gf2Matrix:
    n: int
    rows: Tuple[int, ...] = ()

    def __init__(self, n: int, rows: Iterable[Row] = ()):
        check_dimension(n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(_row_bits(r, n) for r in rows))

    @classmethod
    def from_strings(cls, strings: Iterable[str], n: int = None) -> "Gf2Matrix":
        strings = [s.strip() for s in strings]
        if n is None:
            if not strings:
                raise UsageError("dimension required for an empty matrix")
            n = len(strings[0])
        if any(len(s) != n for s in strings):
            raise UsageError("rows of unequal length")
        return cls(n, [from_bitstring(s) for s in strings])

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, [1 << i for i in range(n)])

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def to_strings(self):
        return [to_bitstring(r, self.n) for r in self.rows]


def _rref_rows(rows: Iterable[int]) -> Tuple[int, ...]:
    basis = {}
    for r in rows:
        for p, b in basis.items():
            if (r >> p) & 1:
                r ^= b
        if not r:
            continue
        p = (r & -r).bit_length() - 1
        for q in basis:
            if (basis[q] >> p) & 1:
                basis[q] ^= r
        basis[p] = r
    return tuple(basis[p] for p in sorted(basis))


def _reduce(x: int, basis: Tuple[int, ...]) -> int:
    """Reduce x against an RREF basis; zero iff x lies in the span."""
    for b in basis:
        if (x >> ((b & -b).bit_length() - 1)) & 1:
            x ^= b
    return x


@dataclass(frozen=True)
class Gf2Subspace:
    """Linear subspace of GF(2)^n held by its canonical RREF basis."""

    n: int
    basis: Tuple[int, ...] = ()

    def __init__(self, n: int, generators: Iterable[Row] = ()):
        check_dimension(n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "basis", _rref_rows(_row_bits(g, n) for g in generators))

    @classmethod
    def full(cls, n: int) -> "Gf2Subspace":
        return cls(n, [1 << i for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple((b & -b).bit_length() - 1 for b in self.basis)

    def __contains__(self, x: Row) -> bool:
        return _reduce(_row_bits(x, self.n), self.basis) == 0

    def coset_representative(self, x: Row) -> int:
        """Smallest-pivot-reduced representative of x + L (equal for x, y iff x ^ y in L)."""
        return _reduce(_row_bits(x, self.n), self.basis)

    def elements(self):
        """All 2^dim members, in Gray-code order starting at 0."""
        x = 0
        yield x
        for i in range(1, 1 << self.dim):
            x ^= self.basis[(i & -i).bit_length() - 1]
            yield x

    def mask(self) -> int:
        out = 0
        for x in self.elements():
            out |= 1 << x
        return out

    def is_subspace_of(self, other: "Gf2Subspace") -> bool:
        return all(b in other for b in self.basis)

    def matrix(self) -> Gf2Matrix:
        return Gf2Matrix(self.n, self.basis)

    def serialize(self) -> bytes:
        rows = ",".join(to_bitstring(b, self.n) for b in self.basis)
        return f"n={self.n};dim={self.dim};basis={rows}".encode("ascii")

    def __str__(self) -> str:
        return "span{" + ", ".join(to_bitstring(b, self.n) for b in self.basis) + "}"


def span(n: int, vectors: Iterable[Row]) -> Gf2Subspace:
    return Gf2Subspace(n, vectors)


def rref(m: Gf2Matrix) -> Gf2Matrix:
    return Gf2Matrix(m.n, _rref_rows(m.rows))


def rank(m: Gf2Matrix) -> int:
    return len(_rref_rows(m.rows))


def kernel_basis(m: Gf2Matrix) -> Gf2Subspace:
    """The subspace {x : m x = 0}."""
    reduced = _rref_rows(m.rows)
    pivots = {(r & -r).bit_length() - 1: r for r in reduced}
    gens = []
    for col in range(m.n):
        if col in pivots:
            continue
        x = 1 << col
        for p, r in pivots.items():
            if (r >> col) & 1:
                x |= 1 << p
        gens.append(x)
    return Gf2Subspace(m.n, gens)


def parity_check_matrix(subspace: Gf2Subspace) -> Gf2Matrix:
    """Rows spanning the annihilator of the subspace; their common kernel is the subspace."""
    return kernel_basis(subspace.matrix()).matrix()


def syndrome(s: Gf2Matrix, x: Row) -> BitVector:
    """S x as a vector of length len(S); entry i (least significant) is <s_i, x>."""
    if isinstance(x, BitVector) and x.n != s.n:
        raise UsageError(f"vector of dimension {x.n} against {s.n} columns")
    bits = _row_bits(x, s.n)
    out = 0
    for i, row in enumerate(s.rows):
        out |= parity(row & bits) << i
    return BitVector(len(s.rows), out)
