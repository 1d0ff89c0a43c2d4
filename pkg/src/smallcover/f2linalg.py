"""Dense linear algebra over the two-element field.

Vectors and matrix rows are bit-packed into Python integers (bit i is
entry i), which keeps row operations at word speed without any third
party dependency.  All routines are deterministic: elimination always
pivots on the leftmost available column and the topmost row, so reduced
forms, pivot lists and kernel bases are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def _pack(entries: Iterable[int]) -> tuple[int, int]:
    bits = 0
    n = 0
    for e in entries:
        if e & 1:
            bits |= 1 << n
        n += 1
    return bits, n


class F2Vector:
    """Immutable vector over F2 of fixed length."""

    __slots__ = ("bits", "n")

    def __init__(self, entries: Iterable[int]):
        self.bits, self.n = _pack(entries)

    @classmethod
    def from_bits(cls, bits: int, n: int) -> "F2Vector":
        if bits < 0 or bits >> n:
            raise ValueError("bit pattern does not fit the stated length")
        v = cls.__new__(cls)
        v.bits = bits
        v.n = n
        return v

    @classmethod
    def unit(cls, i: int, n: int) -> "F2Vector":
        if not 0 <= i < n:
            raise ValueError("unit index out of range")
        return cls.from_bits(1 << i, n)

    @classmethod
    def zero(cls, n: int) -> "F2Vector":
        return cls.from_bits(0, n)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        for _ in range(self.n):
            yield b & 1
            b >>= 1

    def support(self) -> Iterator[int]:
        """Indices of the nonzero coordinates, ascending."""
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __xor__(self, other: "F2Vector") -> "F2Vector":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return F2Vector.from_bits(self.bits ^ other.bits, self.n)

    __add__ = __xor__

    def dot(self, other: "F2Vector") -> int:
        if self.n != other.n:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_tuple(self) -> tuple[int, ...]:
        return tuple(self)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, F2Vector)
            and self.bits == other.bits
            and self.n == other.n
        )

    def __hash__(self) -> int:
        return hash((self.bits, self.n))

    def __repr__(self) -> str:
        return "F2Vector([%s])" % ", ".join(str(b) for b in self)


class F2Matrix:
    """Matrix over F2 with bit-packed rows.

    Rows and columns are indexed from 0; row ``i`` stores column ``j``
    in bit ``j``.  Empty matrices (0 rows and/or 0 columns) are legal
    and behave consistently: rank 0, empty reduced form, and a kernel
    basis consisting of the unit vectors when there are columns but no
    rows.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        packed = []
        width = -1
        for r in rows:
            bits, n = _pack(r)
            if width == -1:
                width = n
            elif n != width:
                raise ValueError("ragged rows")
            packed.append(bits)
        if width == -1:
            width = 0 if ncols is None else ncols
        if ncols is not None and packed and ncols != width:
            raise ValueError("ncols does not match the rows")
        self.rows = tuple(packed)
        self.nrows = len(packed)
        self.ncols = width if ncols is None else ncols

    @classmethod
    def from_row_bits(cls, row_bits: Iterable[int], ncols: int) -> "F2Matrix":
        m = cls.__new__(cls)
        m.rows = tuple(row_bits)
        m.nrows = len(m.rows)
        m.ncols = ncols
        for r in m.rows:
            if r < 0 or r >> ncols:
                raise ValueError("row does not fit the stated width")
        return m

    @classmethod
    def from_columns(cls, cols: Iterable[F2Vector]) -> "F2Matrix":
        cols = list(cols)
        if not cols:
            return cls.from_row_bits((), 0)
        n = cols[0].n
        if any(c.n != n for c in cols):
            raise ValueError("ragged columns")
        rows = []
        for i in range(n):
            bits = 0
            for j, c in enumerate(cols):
                bits |= ((c.bits >> i) & 1) << j
            rows.append(bits)
        return cls.from_row_bits(rows, len(cols))

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls.from_row_bits((1 << i for i in range(n)), n)

    def row(self, i: int) -> F2Vector:
        return F2Vector.from_bits(self.rows[i], self.ncols)

    def column(self, j: int) -> F2Vector:
        bits = 0
        for i, r in enumerate(self.rows):
            bits |= ((r >> j) & 1) << i
        return F2Vector.from_bits(bits, self.nrows)

    def transpose(self) -> "F2Matrix":
        rows = []
        for j in range(self.ncols):
            bits = 0
            for i, r in enumerate(self.rows):
                bits |= ((r >> j) & 1) << i
            rows.append(bits)
        return F2Matrix.from_row_bits(rows, self.nrows)

    def mul_vector(self, v: F2Vector) -> F2Vector:
        if v.n != self.ncols:
            raise ValueError("dimension mismatch")
        bits = 0
        for i, r in enumerate(self.rows):
            bits |= ((r & v.bits).bit_count() & 1) << i
        return F2Vector.from_bits(bits, self.nrows)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, F2Matrix)
            and self.rows == other.rows
            and self.ncols == other.ncols
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.ncols))

    def __repr__(self) -> str:
        body = "; ".join(
            "".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows
        )
        return f"F2Matrix({self.nrows}x{self.ncols}: {body})"


def rref(matrix: F2Matrix) -> tuple[F2Matrix, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns:
        A pair ``(R, pivots)`` where ``R`` has the same shape as the
        input, ``pivots`` lists pivot column indices in increasing
        order, and every pivot column of ``R`` contains a single one.
        Zero rows are moved below all pivot rows.
    """
    rows = list(matrix.rows)
    pivots: list[int] = []
    rank = 0
    for col in range(matrix.ncols):
        mask = 1 << col
        sel = None
        for i in range(rank, len(rows)):
            if rows[i] & mask:
                sel = i
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        piv = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & mask:
                rows[i] ^= piv
        pivots.append(col)
        rank += 1
    return F2Matrix.from_row_bits(rows, matrix.ncols), tuple(pivots)


def rank(matrix: F2Matrix) -> int:
    """Rank over F2 (forward elimination only)."""
    pivots: list[int] = []
    r = 0
    for bits in matrix.rows:
        for p in pivots:
            low = p & -p
            if bits & low:
                bits ^= p
        if bits:
            pivots.append(bits)
            pivots.sort(key=lambda x: x & -x)
            r += 1
    return r


def kernel_basis(matrix: F2Matrix) -> tuple[F2Vector, ...]:
    """Basis of the right null space {x : Mx = 0}.

    Returns:
        One basis vector per free column of the reduced form, ordered
        by free column index.  The basis has ncols - rank elements.
    """
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [j for j in range(matrix.ncols) if j not in pivot_set]
    basis = []
    for f in free:
        bits = 1 << f
        for i, p in enumerate(pivots):
            if reduced.rows[i] & (1 << f):
                bits |= 1 << p
        basis.append(F2Vector.from_bits(bits, matrix.ncols))
    return tuple(basis)


def solve(matrix: F2Matrix, rhs: F2Vector) -> F2Vector | None:
    """One solution of Mx = rhs, or None when the system is infeasible."""
    if rhs.n != matrix.nrows:
        raise ValueError("dimension mismatch")
    aug_rows = [
        r | (((rhs.bits >> i) & 1) << matrix.ncols)
        for i, r in enumerate(matrix.rows)
    ]
    aug = F2Matrix.from_row_bits(aug_rows, matrix.ncols + 1)
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == matrix.ncols:
        return None
    bits = 0
    for i, p in enumerate(pivots):
        if reduced.rows[i] >> matrix.ncols:
            bits |= 1 << p
    return F2Vector.from_bits(bits, matrix.ncols)
