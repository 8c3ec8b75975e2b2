"""Exact linear algebra over GF(2) on bit-packed rows, and mod-2 binomials.

Vectors are stored as Python ints (bit i = coordinate i), which keeps the
row operations exact and fast for the basis sizes that arise here.  All
outputs are deterministic: Gaussian elimination always picks the lowest
available pivot column first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence


def binom_mod2(a: int, b: int) -> int:
    """Binomial coefficient C(a, b) mod 2 via Lucas' criterion.

    C(a, 0) = 1 for every a (empty product), including negative a.
    A negative a with b > 0 has no meaning in this engine and is rejected.
    """
    if b == 0:
        return 1
    if b < 0:
        raise ValueError(f"binom_mod2: lower index must be non-negative, got {b}")
    if a < 0:
        raise ValueError(f"binom_mod2: negative upper index {a} only allowed with lower index 0")
    # C(a, b) is odd iff the bits of b form a subset of the bits of a.
    return 1 if (a & b) == b else 0


@dataclass(frozen=True)
class BitVector:
    """A fixed-length vector over GF(2), packed into an int."""

    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("BitVector length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("BitVector bits exceed the declared length")

    @classmethod
    def from_ones(cls, positions: Iterable[int], length: int) -> "BitVector":
        bits = 0
        for p in positions:
            if not 0 <= p < length:
                raise ValueError(f"bit position {p} out of range for length {length}")
            bits |= 1 << p
        return cls(bits, length)

    @classmethod
    def from_seq(cls, seq: Sequence[int]) -> "BitVector":
        bits = 0
        for i, v in enumerate(seq):
            if v & 1:
                bits |= 1 << i
        return cls(bits, len(seq))

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise ValueError(f"index {i} out of range for length {self.length}")
        return (self.bits >> i) & 1

    def ones(self) -> tuple:
        """Positions of the non-zero coordinates, ascending."""
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("BitVector length mismatch")
        return BitVector(self.bits ^ other.bits, self.length)


@dataclass(frozen=True)
class BitMatrix:
    """A rectangular matrix over GF(2); every row has the same length."""

    rows: tuple
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if not isinstance(r, BitVector) or r.length != self.ncols:
                raise ValueError("BitMatrix rows must be BitVectors of uniform length")

    @classmethod
    def from_rows(cls, rows: Iterable, ncols: int = None) -> "BitMatrix":
        vecs = []
        for r in rows:
            if isinstance(r, BitVector):
                vecs.append(r)
            else:
                vecs.append(BitVector.from_seq(r))
        if ncols is None:
            if not vecs:
                raise ValueError("cannot infer column count from an empty matrix")
            ncols = vecs[0].length
        return cls(tuple(vecs), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def mul_vec(self, v: BitVector) -> BitVector:
        """Matrix-vector product over GF(2)."""
        if v.length != self.ncols:
            raise ValueError("vector length does not match column count")
        bits = 0
        for i, row in enumerate(self.rows):
            if (row.bits & v.bits).bit_count() & 1:
                bits |= 1 << i
        return BitVector(bits, self.nrows)


def _reduced_echelon(row_bits: List[int], ncols: int):
    """Reduced row echelon form in place; returns [(pivot_col, row_index)]."""
    pivots = []
    r = 0
    for col in range(ncols):
        if r == len(row_bits):
            break
        mask = 1 << col
        pivot = None
        for i in range(r, len(row_bits)):
            if row_bits[i] & mask:
                pivot = i
                break
        if pivot is None:
            continue
        row_bits[r], row_bits[pivot] = row_bits[pivot], row_bits[r]
        for i in range(len(row_bits)):
            if i != r and row_bits[i] & mask:
                row_bits[i] ^= row_bits[r]
        pivots.append((col, r))
        r += 1
    return pivots


def rank(m: BitMatrix) -> int:
    bits = [row.bits for row in m.rows]
    return len(_reduced_echelon(bits, m.ncols))


def kernel(m: BitMatrix) -> List[BitVector]:
    """Basis of the right null space of m over GF(2).

    Output order is deterministic: one basis vector per free column of the
    reduced echelon form, free columns ascending.
    """
    bits = [row.bits for row in m.rows]
    pivots = _reduced_echelon(bits, m.ncols)
    pivot_cols = {col for col, _ in pivots}
    basis = []
    for free in range(m.ncols):
        if free in pivot_cols:
            continue
        vec = 1 << free
        for col, row_idx in pivots:
            if (bits[row_idx] >> free) & 1:
                vec |= 1 << col
        basis.append(BitVector(vec, m.ncols))
    return basis


def membership(v: BitVector, span: Sequence[BitVector]) -> int:
    """1 iff v lies in the GF(2) span of the given vectors."""
    echelon = []  # list of (pivot_col, bits), pivot strictly increasing order not required
    for s in span:
        if s.length != v.length:
            raise ValueError("span vector length does not match the test vector")
        bits = s.bits
        for col, row in echelon:
            if (bits >> col) & 1:
                bits ^= row
        if bits:
            echelon.append(((bits & -bits).bit_length() - 1, bits))
    rem = v.bits
    for col, row in echelon:
        if (rem >> col) & 1:
            rem ^= row
    return 1 if rem == 0 else 0


def row_space_basis(vectors: Sequence[BitVector], length: int) -> List[BitVector]:
    """Reduced echelon basis of the span, pivots ascending."""
    bits = [v.bits for v in vectors]
    for v in vectors:
        if v.length != length:
            raise ValueError("row vector length mismatch")
    _reduced_echelon(bits, length)
    return [BitVector(b, length) for b in bits if b]
