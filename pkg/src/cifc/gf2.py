"""Bit-packed GF(2) linear algebra.

Matrices are stored row-major, one Python int per row, bit ``c`` of a row
word being the entry in column ``c`` (0-indexed).  All operations are pure
and return new values; ``BinaryMatrix`` is immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class BinaryMatrix:
    """An immutable matrix over GF(2) with int-bitset rows."""

    rows: int
    cols: int
    words: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.words) != self.rows:
            raise ValueError("row count does not match word count")
        mask = (1 << self.cols) - 1
        for w in self.words:
            if w < 0 or w & ~mask:
                raise ValueError("row word has bits outside the column range")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zeros(rows: int, cols: int) -> "BinaryMatrix":
        return BinaryMatrix(rows, cols, (0,) * rows)

    @staticmethod
    def identity(n: int) -> "BinaryMatrix":
        return BinaryMatrix(n, n, tuple(1 << i for i in range(n)))

    @staticmethod
    def from_entries(entries: Sequence[Sequence[int]]) -> "BinaryMatrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        words = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged entry rows")
            words.append(sum((int(v) & 1) << c for c, v in enumerate(row)))
        return BinaryMatrix(rows, cols, tuple(words))

    @staticmethod
    def from_row_strings(rows: Sequence[str]) -> "BinaryMatrix":
        """Parse rows like "0101"; leftmost character is column 1."""
        n = len(rows)
        cols = len(rows[0]) if n else 0
        words = []
        for s in rows:
            if len(s) != cols or set(s) - {"0", "1"}:
                raise ValueError(f"bad row string {s!r}")
            words.append(sum(1 << c for c, ch in enumerate(s) if ch == "1"))
        return BinaryMatrix(n, cols, tuple(words))

    @staticmethod
    def from_columns(columns: Sequence[int], rows: int) -> "BinaryMatrix":
        """Build from column bitsets (bit r of each column = row r entry)."""
        words = []
        for r in range(rows):
            words.append(sum(((col >> r) & 1) << c for c, col in enumerate(columns)))
        return BinaryMatrix(rows, len(columns), tuple(words))

    # -- accessors ---------------------------------------------------------

    def entry(self, r: int, c: int) -> int:
        return (self.words[r] >> c) & 1

    def column(self, c: int) -> int:
        return sum(((w >> c) & 1) << r for r, w in enumerate(self.words))

    def columns(self) -> list[int]:
        return [self.column(c) for c in range(self.cols)]

    def to_row_strings(self) -> list[str]:
        return ["".join("1" if (w >> c) & 1 else "0" for c in range(self.cols))
                for w in self.words]

    def is_zero(self) -> bool:
        return all(w == 0 for w in self.words)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in GF(2) addition")
        return BinaryMatrix(self.rows, self.cols,
                            tuple(a ^ b for a, b in zip(self.words, other.words)))

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in GF(2) product")
        out = []
        for w in self.words:
            acc = 0
            ww = w
            while ww:
                j = (ww & -ww).bit_length() - 1
                acc ^= other.words[j]
                ww &= ww - 1
            out.append(acc)
        return BinaryMatrix(self.rows, other.cols, tuple(out))

    def mul_vec(self, v: int) -> int:
        """Matrix times a packed column vector; returns a packed vector."""
        y = 0
        for r, w in enumerate(self.words):
            y |= (bin(w & v).count("1") & 1) << r
        return y

    def rank(self) -> int:
        return gf2_rank(list(self.words), self.cols)


def hstack(blocks: Iterable[BinaryMatrix]) -> BinaryMatrix:
    """Concatenate matrices left to right ([A | B | ...])."""
    blocks = list(blocks)
    if not blocks:
        raise ValueError("hstack of no blocks")
    rows = blocks[0].rows
    words = [0] * rows
    shift = 0
    for b in blocks:
        if b.rows != rows:
            raise ValueError("row mismatch in hstack")
        for r in range(rows):
            words[r] |= b.words[r] << shift
        shift += b.cols
    return BinaryMatrix(rows, shift, tuple(words))


def gf2_rank(words: list[int], cols: int) -> int:
    """Rank via forward elimination; pivot is the lowest remaining row index."""
    work = list(words)
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(len(work)):
            if r != rank and (work[r] >> col) & 1:
                work[r] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def solve(matrix: BinaryMatrix, rhs: int) -> Optional[int]:
    """Solve ``matrix @ x = rhs`` over GF(2) for a packed column vector x.

    Returns the particular solution with all free variables set to zero,
    or None when the system is inconsistent.
    """
    m, n = matrix.rows, matrix.cols
    aug = [matrix.words[r] | (((rhs >> r) & 1) << n) for r in range(m)]
    pivot_col = []
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, m):
            if (aug[r] >> col) & 1:
                piv = r
                break
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        for r in range(m):
            if r != row and (aug[r] >> col) & 1:
                aug[r] ^= aug[row]
        pivot_col.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if (aug[r] >> n) & 1:
            return None
    x = 0
    for r, col in enumerate(pivot_col):
        x |= ((aug[r] >> n) & 1) << col
    return x


def solve_matrix(matrix: BinaryMatrix, rhs: BinaryMatrix) -> Optional[BinaryMatrix]:
    """Column-wise solve of ``matrix @ X = rhs``; None if any column fails."""
    if matrix.rows != rhs.rows:
        raise ValueError("shape mismatch in solve_matrix")
    cols = []
    for c in range(rhs.cols):
        x = solve(matrix, rhs.column(c))
        if x is None:
            return None
        cols.append(x)
    return BinaryMatrix.from_columns(cols, matrix.cols)
