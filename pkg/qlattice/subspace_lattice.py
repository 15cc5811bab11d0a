"""Lattice elements and families. Subspaces of F_q^n are kept in reduced row
echelon form, subsets of [n] as bitsets. Both handle types share one small
interface used throughout the package:

- ``level``: size or dimension.
- ``meet_level(other)``: size / dimension of the intersection.
- ``join_level(other)``: size / dimension of the union / span.
- ``contains(other)``: other is a subset / subspace of self.
- ``sort_key``: canonical order. By level first, then by encoding.

Small subspaces additionally carry their point set as a bitmask over vector
indices (base-q value of the coordinate vector, column 0 most significant).
Meets and containment then boil down to integer operations.
"""
import itertools
import random
from typing import (
    Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union,
)

import numpy as np

from qlattice.bitmagic import bit_mask, is_subset, iter_bits, next_colex, popcount
from qlattice.configuration import CONFIG
from qlattice.constants import MAX_SUBSET_N, SUBSETS, SUBSPACES
from qlattice.error import (
    AmbientMismatch, CapExceeded, DimensionMismatch, ParseError, RangeError,
)
from qlattice.finite_field import FieldSpec, make_field
from qlattice.logging import get_logger
from qlattice.matrix import (
    MatrixGF, combine, gf2_rank, left_kernel, matmul, powers, random_invertible,
    random_matrix, rank, rref,
)
from qlattice.qcombinatorics import gaussian_binomial, level_count


__all__ = [
    'SubspaceHandle', 'SubsetHandle', 'Handle', 'ProfileVector', 'Family',
    'canonicalize', 'intersect_dim', 'span_dim', 'contains', 'intersection',
    'span', 'meet_dim', 'join_dim', 'points', 'enumerate_subspaces',
    'enumerate_subsets', 'enumerate_levels', 'random_subspace',
    'random_basis_change', 'ZERO_SUBSPACE_ENCODING',
]


LOGGER = get_logger(__name__)

ZERO_SUBSPACE_ENCODING: str = '-'
"""Encoding of the zero subspace (it has no rows)."""


def _log_q(count: int, q: int) -> int:
    d = 0
    while count > 1:
        count //= q
        d += 1

    return d


class SubspaceHandle:

    """Subspace of F_q^n in canonical form. Use :func:`canonicalize` for
    arbitrary generator matrices.

    Example:
        >>> gf2 = make_field(2)
        ... v = canonicalize(gf2, MatrixGF.from_strings(gf2, ['1100', '0110']))
        ... v.encoding
        '1010;0110'
    """

    __slots__ = ('field', 'ambient_dim', 'rref', 'pivots', 'encoding', '_points', '_ints')

    def __init__(self, field: FieldSpec, ambient_dim: int, rref: MatrixGF, pivots: Sequence[int]):
        """
        Args:
            field: Field.
            ambient_dim: n.
            rref: k x n matrix in reduced row echelon form.
            pivots: Pivot columns.
        """
        self.field = field
        self.ambient_dim = ambient_dim
        self.rref = rref
        self.pivots = tuple(pivots)
        rows = rref.to_strings()
        self.encoding = ';'.join(rows) if rows else ZERO_SUBSPACE_ENCODING
        self._points = None
        self._ints = None

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dim(self) -> int:
        return len(self.pivots)

    level = dim

    @property
    def n(self) -> int:
        return self.ambient_dim

    @property
    def sort_key(self) -> Tuple[int, str]:
        return self.dim, self.encoding

    @property
    def row_ints(self) -> List[int]:
        """GF(2) rows as integers."""
        if self._ints is None:
            self._ints = [int(x) for x in (self.rref.entries.astype(np.int64) @ powers(2, self.ambient_dim))]

        return self._ints

    @property
    def points(self) -> Optional[int]:
        """Point set bitmask or None for too large ambients."""
        if self._points is None:
            self._points = _point_mask(self)

        return self._points or None

    def _check_ambient(self, other: 'SubspaceHandle'):
        if not isinstance(other, SubspaceHandle) or other.field != self.field or other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch(f'{other!r} does not live in F_{self.q}^{self.ambient_dim}')

    def meet_level(self, other: 'SubspaceHandle') -> int:
        return intersect_dim(self, other)

    def join_level(self, other: 'SubspaceHandle') -> int:
        return span_dim(self, other)

    def contains(self, other: 'SubspaceHandle') -> bool:
        return contains(self, other)

    def is_disjoint(self, other: 'SubspaceHandle') -> bool:
        """Trivial intersection."""
        return intersect_dim(self, other) == 0

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceHandle)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.encoding == other.encoding
        )

    def __hash__(self):
        return hash((self.field.q, self.ambient_dim, self.encoding))

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __getstate__(self):
        return self.field.q, self.ambient_dim, self.rref.tolist(), self.pivots

    def __setstate__(self, state):
        q, n, rows, pivots = state
        field = make_field(q)
        entries = np.array(rows, dtype=np.uint8).reshape(len(pivots), n)
        self.__init__(field, n, MatrixGF(field, entries), pivots)

    def __repr__(self):
        return f'{type(self).__name__}(q={self.q}, n={self.ambient_dim}, {self.encoding!r})'


class SubsetHandle:

    """Subset of [n] as bitset. Bit i stands for element i + 1.

    Example:
        >>> s = SubsetHandle.from_iterable(4, [1, 2])
        ... s.encoding, s.elements()
        ('1100', [1, 2])
    """

    __slots__ = ('n', 'members')

    def __init__(self, n: int, members: int):
        if not 0 <= n <= MAX_SUBSET_N:
            raise RangeError(f'Ground set size {n} outside [0, {MAX_SUBSET_N}]')

        if members < 0 or members >> n:
            raise RangeError(f'Members {members:b} not a subset of [{n}]')

        self.n = n
        self.members = members

    @classmethod
    def from_iterable(cls, n: int, elements: Iterable[int]) -> 'SubsetHandle':
        """From 1-based elements."""
        members = 0
        for x in elements:
            if not 1 <= x <= n:
                raise RangeError(f'Element {x} not in [{n}]')

            members |= 1 << (x - 1)

        return cls(n, members)

    @classmethod
    def from_encoding(cls, text: str) -> 'SubsetHandle':
        if set(text) - {'0', '1'}:
            raise ParseError(f'Subset encoding {text!r} is not a 0/1 string')

        return cls.from_iterable(len(text), [i + 1 for i, c in enumerate(text) if c == '1'])

    @property
    def encoding(self) -> str:
        return ''.join('1' if self.members >> i & 1 else '0' for i in range(self.n))

    @property
    def size(self) -> int:
        return popcount(self.members)

    level = size

    @property
    def sort_key(self) -> Tuple[int, str]:
        return self.size, self.encoding

    def elements(self) -> List[int]:
        """1-based members."""
        return [i + 1 for i in iter_bits(self.members)]

    def _check_ambient(self, other: 'SubsetHandle'):
        if not isinstance(other, SubsetHandle) or other.n != self.n:
            raise AmbientMismatch(f'{other!r} is not a subset of [{self.n}]')

    def meet_level(self, other: 'SubsetHandle') -> int:
        self._check_ambient(other)
        return popcount(self.members & other.members)

    def join_level(self, other: 'SubsetHandle') -> int:
        self._check_ambient(other)
        return popcount(self.members | other.members)

    def contains(self, other: 'SubsetHandle') -> bool:
        self._check_ambient(other)
        return is_subset(other.members, self.members)

    def is_disjoint(self, other: 'SubsetHandle') -> bool:
        self._check_ambient(other)
        return self.members & other.members == 0

    def __eq__(self, other):
        return isinstance(other, SubsetHandle) and (self.n, self.members) == (other.n, other.members)

    def __hash__(self):
        return hash((self.n, self.members))

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __getstate__(self):
        return self.n, self.members

    def __setstate__(self, state):
        self.n, self.members = state

    def __repr__(self):
        return f'{type(self).__name__}({self.encoding!r})'


Handle = Union[SubspaceHandle, SubsetHandle]


def _point_mask(handle: SubspaceHandle) -> int:
    """Point set bitmask of a subspace. 0 if q^n exceeds the point set limit."""
    q, n, k = handle.q, handle.ambient_dim, handle.dim
    if q ** n > CONFIG['Caps']['POINT_SET_LIMIT']:
        return 0

    field = handle.field
    coefficients = np.array(list(itertools.product(range(q), repeat=k)), dtype=np.uint8).reshape(q ** k, k)
    vectors = np.zeros((q ** k, n), dtype=np.uint8)
    for i, row in enumerate(handle.rref.entries):
        vectors = field.add_table[vectors, field.mul_table[coefficients[:, i][:, None], row[None, :]]]

    indices = vectors.astype(np.int64) @ powers(q, n)
    flags = np.zeros(q ** n, dtype=bool)
    flags[indices] = True
    return int.from_bytes(np.packbits(flags, bitorder='little').tobytes(), 'little')


def points(handle: SubspaceHandle) -> Optional[int]:
    """Point set bitmask of a subspace (None for too large ambients)."""
    return handle.points


def canonicalize(field: FieldSpec, generators: MatrixGF, ambient_dim: Optional[int] = None) -> SubspaceHandle:
    """Canonical handle of the row space of a generator matrix.

    Args:
        field: Field.
        generators: Generator rows.
        ambient_dim (optional): Expected number of columns.

    Returns:
        Subspace handle.

    Raises:
        DimensionMismatch: If column count differs from ambient_dim.
    """
    if generators.field != field:
        raise AmbientMismatch(f'Generators over {generators.field}, not {field}')

    if ambient_dim is not None and generators.cols != ambient_dim:
        raise DimensionMismatch(f'Generators have {generators.cols} columns, ambient dimension is {ambient_dim}')

    reduced, pivots = rref(generators)
    return SubspaceHandle(field, generators.cols, reduced, pivots)


def _stack(*handles: SubspaceHandle) -> MatrixGF:
    first = handles[0]
    for other in handles[1:]:
        first._check_ambient(other)

    entries = np.vstack([h.rref.entries for h in handles])
    return MatrixGF(first.field, entries.reshape(-1, first.ambient_dim))


def _all_points(handles) -> Optional[List[int]]:
    masks = [h.points for h in handles]
    if any(mask is None for mask in masks):
        return None

    return masks


def join_dim(*handles: SubspaceHandle) -> int:
    """Dimension of the span of all handles."""
    if not handles:
        return 0

    if len(handles) == 1:
        return handles[0].dim

    if handles[0].q == 2:
        for other in handles[1:]:
            handles[0]._check_ambient(other)

        return gf2_rank([x for h in handles for x in h.row_ints])

    return rank(_stack(*handles))


def span_dim(a: SubspaceHandle, b: SubspaceHandle) -> int:
    """Dimension of span(a, b).

    Raises:
        AmbientMismatch: Different ambients.
    """
    a._check_ambient(b)
    masks = _all_points([a, b])
    if masks is not None:
        return a.dim + b.dim - _log_q(popcount(masks[0] & masks[1]), a.q)

    return join_dim(a, b)


def intersect_dim(a: SubspaceHandle, b: SubspaceHandle) -> int:
    """Dimension of a ∩ b. Modular law: dim a + dim b - dim span(a, b).

    Raises:
        AmbientMismatch: Different ambients.
    """
    a._check_ambient(b)
    masks = _all_points([a, b])
    if masks is not None:
        return _log_q(popcount(masks[0] & masks[1]), a.q)

    return a.dim + b.dim - join_dim(a, b)


def meet_dim(*handles: SubspaceHandle) -> int:
    """Dimension of the intersection of all handles."""
    if len(handles) == 1:
        return handles[0].dim

    for other in handles[1:]:
        handles[0]._check_ambient(other)

    masks = _all_points(handles)
    if masks is not None:
        common = masks[0]
        for mask in masks[1:]:
            common &= mask

        return _log_q(popcount(common), handles[0].q)

    common = handles[0]
    for other in handles[1:]:
        common = intersection(common, other)

    return common.dim


def contains(a: SubspaceHandle, b: SubspaceHandle) -> bool:
    """True iff b is a subspace of a.

    Raises:
        AmbientMismatch: Different ambients.
    """
    a._check_ambient(b)
    if b.dim > a.dim:
        return False

    masks = _all_points([a, b])
    if masks is not None:
        return is_subset(masks[1], masks[0])

    return join_dim(a, b) == a.dim


def span(*handles: SubspaceHandle) -> SubspaceHandle:
    """Subspace spanned by all handles."""
    first = handles[0]
    return canonicalize(first.field, _stack(*handles))


def intersection(a: SubspaceHandle, b: SubspaceHandle) -> SubspaceHandle:
    """Intersection subspace via the left kernel of the stacked bases. For
    every kernel vector (x, y) with x A + y B = 0, x A lies in both.
    """
    a._check_ambient(b)
    field = a.field
    if a.dim == 0 or b.dim == 0:
        return canonicalize(field, MatrixGF.zeros(field, 0, a.ambient_dim))

    kernel = left_kernel(_stack(a, b))
    rows = [combine(field, x[:a.dim], a.rref.entries) for x in kernel.entries]
    entries = np.array(rows, dtype=np.uint8).reshape(len(rows), a.ambient_dim)
    return canonicalize(field, MatrixGF(field, entries))


def _check_cap(what: str, count: int, cap: Optional[int]):
    if cap is None:
        cap = CONFIG['Caps']['ENUMERATION_CAP']

    if count > cap:
        raise CapExceeded(what, count, cap)


def enumerate_subspaces(field: FieldSpec, n: int, k: int, cap: Optional[int] = None) -> Iterator[SubspaceHandle]:
    """All k-dimensional subspaces of F_q^n. Pivot column sets in lexicographic
    order, for each the free entries as base-q counter with the rightmost free
    cell least significant.

    Args:
        field: Field.
        n: Ambient dimension.
        k: Subspace dimension.
        cap (optional): Enumeration cap. Configured cap by default.

    Returns:
        Iterator over subspace handles.

    Raises:
        RangeError: k outside [0, n].
        CapExceeded: With the refused count.
    """
    if not 0 <= k <= n:
        raise RangeError(f'Subspace dimension {k} outside [0, {n}]')

    count = gaussian_binomial(n, k, field.q)
    _check_cap(f'[{n}, {k}]_{field.q} subspaces', count, cap)
    LOGGER.debug('Enumerating %d subspaces of dimension %d in F_%d^%d', count, k, field.q, n)
    return _iter_subspaces(field, n, k)


def _iter_subspaces(field: FieldSpec, n: int, k: int) -> Iterator[SubspaceHandle]:
    q = field.q
    for pivots in itertools.combinations(range(n), k):
        template = np.zeros((k, n), dtype=np.uint8)
        cells = []
        for row, pivot in enumerate(pivots):
            template[row, pivot] = 1
            cells.extend((row, col) for col in range(pivot + 1, n) if col not in pivots)

        rows = tuple(r for r, _ in cells)
        cols = tuple(c for _, c in cells)
        for values in itertools.product(range(q), repeat=len(cells)):
            entries = template.copy()
            if cells:
                entries[rows, cols] = values

            yield SubspaceHandle(field, n, MatrixGF(field, entries), pivots)


def enumerate_subsets(n: int, k: int) -> Iterator[SubsetHandle]:
    """All k-subsets of [n] in colex order.

    Example:
        >>> [s.encoding for s in enumerate_subsets(3, 2)]
        ['110', '101', '011']
    """
    if not 0 <= k <= n <= MAX_SUBSET_N:
        raise RangeError(f'Need 0 <= k={k} <= n={n} <= {MAX_SUBSET_N}')

    return _iter_subsets(n, k)


def _iter_subsets(n: int, k: int) -> Iterator[SubsetHandle]:
    if k == 0:
        yield SubsetHandle(n, 0)
        return

    value = bit_mask(k)
    limit = 1 << n
    while value < limit:
        yield SubsetHandle(n, value)
        value = next_colex(value)


def random_subspace(field: FieldSpec, n: int, k: int, rng: random.Random) -> SubspaceHandle:
    """Uniformly random k-dimensional subspace (rejection sampling)."""
    if not 0 <= k <= n:
        raise RangeError(f'Subspace dimension {k} outside [0, {n}]')

    while True:
        candidate = canonicalize(field, random_matrix(field, k, n, rng))
        if candidate.dim == k:
            return candidate


def random_basis_change(handle: SubspaceHandle, rng: random.Random) -> MatrixGF:
    """Random generator matrix of the same subspace (random invertible row mix)."""
    mixer = random_invertible(handle.field, handle.dim, rng)
    return matmul(mixer, handle.rref)


class ProfileVector(NamedTuple):

    """Level-wise member counts f_0, ..., f_n."""

    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def within(self, n: int, q: Optional[int] = None) -> bool:
        """No level count exceeds the level size."""
        return all(0 <= f <= level_count(n, i, q) for i, f in enumerate(self.counts))


class Family:

    """Finite family of lattice elements of one ambient. Set semantics,
    elements kept in canonical order.

    Args:
        kind: 'subsets' or 'subspaces'.
        n: Ambient dimension / ground set size.
        q: Field order for subspaces, None for subsets.
        elements: Members.

    Example:
        >>> fam = enumerate_levels(SUBSPACES, 4, [2], q=2)
        ... len(fam), fam.profile.counts
        (35, (0, 0, 35, 0, 0))
    """

    __slots__ = ('kind', 'n', 'q', 'elements', '_index')

    def __init__(self, kind: str, n: int, q: Optional[int] = None, elements: Iterable[Handle] = ()):
        if kind not in {SUBSETS, SUBSPACES}:
            raise RangeError(f'Unknown family kind {kind!r}')

        if kind == SUBSETS:
            q = None
        elif q is None:
            raise RangeError('Subspace families need a field order q')

        self.kind = kind
        self.n = n
        self.q = q
        unique = {}
        for element in elements:
            self._check_element(element)
            unique[element] = None

        self.elements: Tuple[Handle, ...] = tuple(sorted(unique, key=lambda e: e.sort_key))
        self._index = None

    @classmethod
    def from_elements(cls, elements: Iterable[Handle], kind: Optional[str] = None,
                      n: Optional[int] = None, q: Optional[int] = None) -> 'Family':
        """Family with ambient parameters taken from the first element if not
        given.
        """
        elements = list(elements)
        if elements and kind is None:
            first = elements[0]
            if isinstance(first, SubspaceHandle):
                kind, n, q = SUBSPACES, first.ambient_dim, first.q
            else:
                kind, n = SUBSETS, first.n

        if kind is None or n is None:
            raise RangeError('Empty family needs explicit ambient parameters')

        return cls(kind, n, q, elements)

    def _check_element(self, element):
        if self.kind == SUBSPACES:
            ok = isinstance(element, SubspaceHandle) and element.ambient_dim == self.n and element.q == self.q
        else:
            ok = isinstance(element, SubsetHandle) and element.n == self.n

        if not ok:
            raise AmbientMismatch(f'{element!r} does not belong to {self.ambient_str()}')

    @property
    def field(self) -> Optional[FieldSpec]:
        if self.q is None:
            return None

        return make_field(self.q)

    @property
    def is_subspaces(self) -> bool:
        return self.kind == SUBSPACES

    def ambient_str(self) -> str:
        if self.kind == SUBSPACES:
            return f'subspaces of F_{self.q}^{self.n}'

        return f'subsets of [{self.n}]'

    def same_ambient(self, other: 'Family') -> bool:
        return (self.kind, self.n, self.q) == (other.kind, other.n, other.q)

    def check_same_ambient(self, other: 'Family'):
        if not self.same_ambient(other):
            raise AmbientMismatch(f'{other.ambient_str()} vs. {self.ambient_str()}')

    @property
    def profile(self) -> ProfileVector:
        counts = [0] * (self.n + 1)
        for element in self.elements:
            counts[element.level] += 1

        return ProfileVector(tuple(counts))

    def levels(self) -> Dict[int, 'Family']:
        """Non-empty levels as subfamilies."""
        grouped: Dict[int, List[Handle]] = {}
        for element in self.elements:
            grouped.setdefault(element.level, []).append(element)

        return {level: self.with_elements(members) for level, members in sorted(grouped.items())}

    @property
    def level_set(self) -> List[int]:
        return sorted({e.level for e in self.elements})

    @property
    def is_uniform(self) -> bool:
        return len(self.level_set) <= 1

    @property
    def uniform_level(self) -> Optional[int]:
        levels = self.level_set
        return levels[0] if len(levels) == 1 else None

    def with_elements(self, elements: Iterable[Handle]) -> 'Family':
        """New family with the same ambient."""
        return Family(self.kind, self.n, self.q, elements)

    def subfamily(self, indices: Iterable[int]) -> 'Family':
        return self.with_elements(self.elements[i] for i in indices)

    def without(self, index: int) -> 'Family':
        return self.with_elements(e for i, e in enumerate(self.elements) if i != index)

    def union(self, other: 'Family') -> 'Family':
        self.check_same_ambient(other)
        return self.with_elements(self.elements + other.elements)

    def index(self, element: Handle) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}

        return self._index[element]

    def encodings(self) -> List[str]:
        return [e.encoding for e in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __contains__(self, element):
        try:
            self.index(element)
            return True
        except KeyError:
            return False

    def __eq__(self, other):
        return isinstance(other, Family) and self.same_ambient(other) and self.elements == other.elements

    def __hash__(self):
        return hash((self.kind, self.n, self.q, self.elements))

    def __getstate__(self):
        return self.kind, self.n, self.q, self.elements

    def __setstate__(self, state):
        self.kind, self.n, self.q, self.elements = state
        self._index = None

    def __repr__(self):
        return f'{type(self).__name__}({self.ambient_str()}, {len(self)} members)'


def enumerate_levels(kind: str, n: int, dims: Iterable[int], q: Optional[int] = None,
                     cap: Optional[int] = None) -> Family:
    """Full levels as a family.

    Args:
        kind: 'subsets' or 'subspaces'.
        n: Ambient dimension / ground set size.
        dims: Levels to include.
        q: Field order for subspaces.
        cap (optional): Cap on the total number of elements.

    Raises:
        CapExceeded: If the levels hold more elements than the cap.
    """
    dims = sorted(set(dims))
    for d in dims:
        if not 0 <= d <= n:
            raise RangeError(f'Level {d} outside [0, {n}]')

    total = sum(level_count(n, d, q if kind == SUBSPACES else None) for d in dims)
    _check_cap(f'{total} elements in levels {dims}', total, cap)
    elements = []
    if kind == SUBSPACES:
        field = make_field(q)
        for d in dims:
            elements.extend(_iter_subspaces(field, n, d))
    else:
        for d in dims:
            elements.extend(enumerate_subsets(n, d))

    return Family(kind, n, q, elements)
