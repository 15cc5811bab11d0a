"""Matrices over GF(q) and row reduction.

General fields reduce whole rows at once through the field tables. GF(2) has a
bit-packed fast path where a row of length n is one Python integer with column
0 as the most significant bit, so adding rows is XOR.
"""
import functools
import random
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from numpy import ndarray

from qlattice.constants import DIGITS
from qlattice.error import DimensionMismatch, ParseError, RangeError
from qlattice.finite_field import FieldSpec


__all__ = [
    'MatrixGF', 'rref', 'rank', 'left_kernel', 'combine', 'matmul',
    'rows_to_ints', 'ints_to_rows', 'gf2_rref', 'gf2_rank', 'random_matrix',
    'random_invertible', 'vector_index', 'format_row', 'parse_row',
]


class MatrixGF:

    """Immutable matrix over a finite field.

    Example:
        >>> m = MatrixGF.from_strings(make_field(2), ['1100', '0110'])
        ... m.shape
        (2, 4)
    """

    __slots__ = ('field', 'entries')

    def __init__(self, field: FieldSpec, entries):
        """
        Args:
            field: Field.
            entries: 2d array like of element codes.
        """
        entries = np.array(entries, dtype=np.uint8, ndmin=2)
        if entries.ndim != 2:
            raise DimensionMismatch(f'Matrix entries have to be 2d, not {entries.ndim}d')

        if entries.size and entries.max() >= field.q:
            raise RangeError(f'Entry {entries.max()} not an element of {field}')

        entries.setflags(write=False)
        self.field = field
        self.entries = entries

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> 'MatrixGF':
        return cls(field, np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def from_strings(cls, field: FieldSpec, rows: Sequence[str], cols: int = None) -> 'MatrixGF':
        """Construct from digit strings (one per row)."""
        parsed = [parse_row(row, field.q) for row in rows]
        if not parsed:
            return cls.zeros(field, 0, cols or 0)

        return cls(field, parsed)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def tolist(self) -> List[List[int]]:
        return self.entries.tolist()

    def to_strings(self) -> List[str]:
        return [format_row(row, self.field.q) for row in self.entries]

    def __eq__(self, other):
        return (
            isinstance(other, MatrixGF)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.entries == other.entries))
        )

    def __hash__(self):
        return hash((self.field.q, self.shape, self.entries.tobytes()))

    def __repr__(self):
        return f'{type(self).__name__}({self.field}, {self.to_strings()})'


def format_row(row: Iterable[int], q: int) -> str:
    """Digit string of a row. One base-36 character per entry for q <= 36, two
    hex characters otherwise.

    Example:
        >>> format_row([1, 0, 2], q=3)
        '102'
    """
    if q <= len(DIGITS):
        return ''.join(DIGITS[int(x)] for x in row)

    return ''.join(f'{int(x):02x}' for x in row)


def parse_row(text: str, q: int) -> List[int]:
    """Inverse of :func:`format_row`."""
    if q <= len(DIGITS):
        digits = list(text)
    else:
        if len(text) % 2:
            raise ParseError(f'Odd number of hex digits in {text!r}')

        digits = [text[i:i + 2] for i in range(0, len(text), 2)]

    values = []
    for digit in digits:
        if q <= len(DIGITS):
            value = DIGITS.find(digit.lower())
        else:
            try:
                value = int(digit, 16)
            except ValueError:
                value = -1

        if not 0 <= value < q:
            raise ParseError(f'Invalid digit {digit!r} for q={q}')

        values.append(value)

    return values


def vector_index(row: Iterable[int], q: int) -> int:
    """Base-q value of a coordinate vector, column 0 most significant."""
    index = 0
    for x in row:
        index = index * q + int(x)

    return index


def rows_to_ints(entries: ndarray) -> List[int]:
    """Pack GF(2) rows into integers."""
    return [vector_index(row, 2) for row in entries]


def ints_to_rows(values: Sequence[int], cols: int) -> ndarray:
    """Unpack GF(2) integers into rows."""
    out = np.zeros((len(values), cols), dtype=np.uint8)
    for i, value in enumerate(values):
        for j in range(cols):
            out[i, j] = (value >> (cols - 1 - j)) & 1

    return out


def gf2_rref(values: Sequence[int], cols: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form of bit-packed GF(2) rows.

    Args:
        values: Rows as integers.
        cols: Number of columns.

    Returns:
        Tuple of nonzero RREF rows and pivot columns.

    Example:
        >>> gf2_rref([0b1100, 0b0110], cols=4)
        ([10, 6], [0, 1])
    """
    rows = [v for v in values if v]
    pivots = []
    r = 0
    for col in range(cols):
        bit = 1 << (cols - 1 - col)
        for i in range(r, len(rows)):
            if rows[i] & bit:
                break
        else:
            continue

        rows[r], rows[i] = rows[i], rows[r]
        pivot = rows[r]
        for j in range(len(rows)):
            if j != r and rows[j] & bit:
                rows[j] ^= pivot

        pivots.append(col)
        r += 1
        if r == len(rows):
            break

    return rows[:r], pivots


def gf2_rank(values: Sequence[int]) -> int:
    """Rank of bit-packed GF(2) rows (xor basis by leading bit)."""
    basis = {}
    for value in values:
        while value:
            lead = value.bit_length()
            if lead not in basis:
                basis[lead] = value
                break

            value ^= basis[lead]

    return len(basis)


def _rref_array(field: FieldSpec, entries: ndarray, stop: int = None) -> Tuple[ndarray, List[int]]:
    """Row reduce a copy of entries with :meth:`galois.FieldArray.row_reduce`.
    Pivot search only in the first `stop` columns (all by default).
    """
    a = np.array(entries, dtype=np.uint8)
    rows, cols = a.shape
    if stop is None:
        stop = cols

    if rows == 0 or stop == 0:
        return a, []

    reduced = np.asarray(field.gf(a).row_reduce(ncols=stop).view(np.ndarray), dtype=np.uint8)
    pivots = []
    for row in reduced[:, :stop]:
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            break

        pivots.append(int(nonzero[0]))

    return reduced, pivots


def rref(matrix: MatrixGF) -> Tuple[MatrixGF, List[int]]:
    """Reduced row echelon form without zero rows.

    Returns:
        Tuple of RREF matrix and pivot columns.
    """
    field = matrix.field
    if field.q == 2:
        rows, pivots = gf2_rref(rows_to_ints(matrix.entries), matrix.cols)
        return MatrixGF(field, ints_to_rows(rows, matrix.cols).reshape(len(rows), matrix.cols)), pivots

    reduced, pivots = _rref_array(field, matrix.entries)
    return MatrixGF(field, reduced[:len(pivots)].reshape(len(pivots), matrix.cols)), pivots


def rank(matrix: MatrixGF) -> int:
    """Rank of a matrix."""
    if matrix.field.q == 2:
        return gf2_rank(rows_to_ints(matrix.entries))

    _, pivots = _rref_array(matrix.field, matrix.entries)
    return len(pivots)


def combine(field: FieldSpec, coefficients: Sequence[int], rows: ndarray) -> ndarray:
    """Linear combination of rows.

    Args:
        field: Field.
        coefficients: One coefficient per row.
        rows: Row matrix as array.

    Returns:
        Combined row.
    """
    rows = np.asarray(rows, dtype=np.uint8)
    out = np.zeros(rows.shape[1], dtype=np.uint8)
    for c, row in zip(coefficients, rows):
        if c:
            out = field.add_table[out, field.mul_table[c, row]]

    return out


def matmul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    """Matrix product over the field."""
    if a.cols != b.rows:
        raise DimensionMismatch(f'Can not multiply {a.shape} with {b.shape}')

    rows = [combine(a.field, row, b.entries) for row in a.entries]
    return MatrixGF(a.field, np.array(rows, dtype=np.uint8).reshape(a.rows, b.cols))


def left_kernel(matrix: MatrixGF) -> MatrixGF:
    """Basis of all coefficient vectors x with x * matrix = 0, by row reducing
    the matrix augmented with the identity.
    """
    m, n = matrix.shape
    augmented = np.hstack([matrix.entries, np.eye(m, dtype=np.uint8)])
    reduced, pivots = _rref_array(matrix.field, augmented, stop=n)
    kernel = reduced[len(pivots):, n:]
    return MatrixGF(matrix.field, kernel.reshape(m - len(pivots), m))


def random_matrix(field: FieldSpec, rows: int, cols: int, rng: random.Random) -> MatrixGF:
    entries = [[rng.randrange(field.q) for _ in range(cols)] for _ in range(rows)]
    return MatrixGF(field, np.array(entries, dtype=np.uint8).reshape(rows, cols))


def random_invertible(field: FieldSpec, size: int, rng: random.Random) -> MatrixGF:
    """Uniformly random invertible square matrix (rejection sampling)."""
    while True:
        candidate = random_matrix(field, size, size, rng)
        if rank(candidate) == size:
            return candidate


@functools.lru_cache(maxsize=64)
def powers(q: int, n: int) -> ndarray:
    """Place values q^(n-1), ..., q, 1 of the vector index."""
    return np.array([q ** (n - 1 - j) for j in range(n)], dtype=np.int64)
