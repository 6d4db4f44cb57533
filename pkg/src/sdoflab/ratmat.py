"""Exact rational dense matrices.

Rank statements that hold "almost surely" for continuous channel gains
are checked here as exact equalities over rational samples, so every
rank, inverse and concatenation is computed in arbitrary-precision
rational arithmetic.  There is no tolerance parameter anywhere in this
module; floating point lives in :mod:`sdoflab.entropy` only.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix

_FRACTION_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


class RationalMatrix:
    """Immutable dense matrix with :class:`fractions.Fraction` entries.

    Entries are stored row-major as a tuple of row tuples.  The column
    count is kept explicitly so zero-row and zero-column matrices stay
    well defined (they show up naturally, e.g. an eavesdropper with no
    antennas or a scheme with no information symbols).
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows_data: Iterable[Sequence], cols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in row) for row in rows_data)
        if data:
            ncols = len(data[0])
            if any(len(row) != ncols for row in data):
                raise DimensionMismatch("ragged rows")
            if cols is not None and cols != ncols:
                raise DimensionMismatch(f"cols={cols} but rows have {ncols} entries")
        else:
            if cols is None:
                raise DimensionMismatch("column count required for a 0-row matrix")
            ncols = cols
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)], cols=n
        )

    @staticmethod
    def zeros(rows: int, cols: int) -> "RationalMatrix":
        return RationalMatrix([[Fraction(0)] * cols for _ in range(rows)], cols=cols)

    # -- basics ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        # Integer kernel: scale each left row and right column to integers
        # once, so only one rational normalization happens per output entry.
        lrows = [_int_row(row) for row in self.data]
        rcols = [
            _int_row([other.data[i][j] for i in range(other.rows)])
            for j in range(other.cols)
        ]
        out = []
        for la, ra in lrows:
            out.append(
                [Fraction(sum(x * y for x, y in zip(ra, rb)), la * lb) for lb, rb in rcols]
            )
        return RationalMatrix(out, cols=other.cols)

    # -- rank and inverse -----------------------------------------------------

    def rank(self) -> int:
        """Exact rank by fraction-free (Bareiss) elimination with pivoting.

        Rows are cleared to integers first; intermediate entries are then
        minors of the scaled matrix, which bounds their growth.
        """
        m = [_int_row(row)[1] for row in self.data]
        nrows, ncols = self.rows, self.cols
        r = 0
        prev = 1
        for c in range(ncols):
            if r == nrows:
                break
            piv = next((i for i in range(r, nrows) if m[i][c]), None)
            if piv is None:
                continue
            if piv != r:
                m[r], m[piv] = m[piv], m[r]
            pivval = m[r][c]
            row_r = m[r]
            for i in range(r + 1, nrows):
                row_i = m[i]
                mic = row_i[c]
                for j in range(c + 1, ncols):
                    row_i[j] = (pivval * row_i[j] - mic * row_r[j]) // prev
                row_i[c] = 0
            prev = pivval
            r += 1
        return r

    def inverse(self) -> "RationalMatrix":
        """Exact inverse via Gauss-Jordan elimination.

        Raises
        ------
        SingularMatrix
            If the matrix is not square of full rank.
        """
        if self.rows != self.cols:
            raise SingularMatrix(f"matrix is {self.rows}x{self.cols}, not square")
        n = self.rows
        a = [list(row) for row in self.data]
        inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col] != 0), None)
            if piv is None:
                raise SingularMatrix("matrix is rank deficient")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                inv[col], inv[piv] = inv[piv], inv[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            inv[col] = [x / p for x in inv[col]]
            for i in range(n):
                if i == col:
                    continue
                f = a[i][col]
                if f == 0:
                    continue
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[col])]
        return RationalMatrix(inv, cols=n)

    # -- conversion -----------------------------------------------------------

    def to_float_array(self):
        """One-way conversion to a float64 numpy array (entropy module entry)."""
        import numpy as np

        out = np.zeros((self.rows, self.cols))
        for i, row in enumerate(self.data):
            for j, x in enumerate(row):
                out[i, j] = float(x)
        return out

    def to_strings(self) -> list[list[str]]:
        return [[format_fraction(x) for x in row] for row in self.data]


def _int_row(row: Sequence[Fraction]) -> tuple[int, list[int]]:
    """Scale a rational row to integers; returns (scale, scaled entries)."""
    l = 1
    for x in row:
        l = l * x.denominator // math.gcd(l, x.denominator)
    return l, [x.numerator * (l // x.denominator) for x in row]


def block_diag(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    """Block-diagonal assembly; off-block entries are exactly zero."""
    if not blocks:
        raise DimensionMismatch("block_diag needs at least one block")
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[Fraction(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.data):
            out[r0 + i][c0 : c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return RationalMatrix(out, cols=cols)


def hconcat(ms: Sequence[RationalMatrix]) -> RationalMatrix:
    """Horizontal concatenation: columns in order, shared row count."""
    if not ms:
        raise DimensionMismatch("hconcat needs at least one matrix")
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise DimensionMismatch(
            "row counts differ: " + ", ".join(str(m.rows) for m in ms)
        )
    cols = sum(m.cols for m in ms)
    out = []
    for i in range(rows):
        row: list[Fraction] = []
        for m in ms:
            row.extend(m.data[i])
        out.append(row)
    return RationalMatrix(out, cols=cols)


# -- "p/q" string serialization, shared by every file format ------------------


def format_fraction(x: Fraction) -> str:
    """Serialize a rational as ``p/q``, omitting ``/q`` when q == 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    """Parse a ``p/q`` string; strict about the accepted grammar."""
    if not isinstance(s, str) or not _FRACTION_RE.match(s):
        raise ValueError(f"not a p/q rational: {s!r}")
    return Fraction(s)


def matrix_from_strings(
    rows_data: Sequence[Sequence[str]], cols: int | None = None
) -> RationalMatrix:
    return RationalMatrix(
        [[parse_fraction(x) for x in row] for row in rows_data], cols=cols
    )
