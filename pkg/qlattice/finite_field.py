"""Finite field arithmetic over element codes. Fields GF(q) for prime powers
q <= 256 are constructed with :mod:`galois`. Extension fields use the Conway
polynomial galois picks by default which pins the element codes: the base-p
digits of a code are the polynomial coefficients, highest degree first.

All arithmetic afterwards is a table lookup. Tables are read-only
:class:`numpy.ndarray` of dtype ``uint8`` so that whole matrix rows can be
processed with fancy indexing.

Example:
    >>> gf4 = make_field(4)
    ... x = FieldElement(2)
    ... mul(gf4, x, x)
    FieldElement(code=3)
"""
import functools
from typing import NamedTuple, Optional, Union

import galois
import numpy as np
from numpy import ndarray

from qlattice.constants import MAX_FIELD_ORDER
from qlattice.error import DivisionByZero, NotAPrimePower, RangeError, TooLarge
from qlattice.logging import get_logger


__all__ = [
    'FieldSpec', 'FieldElement', 'make_field', 'add', 'sub', 'mul', 'div',
    'neg', 'inv', 'field_op', 'verify_field_axioms', 'multiplicative_order',
    'primitive_element',
]


LOGGER = get_logger(__name__)


class FieldElement(NamedTuple):

    """Field element by code."""

    code: int


Element = Union[FieldElement, int]


def _code(a: Element) -> int:
    if isinstance(a, FieldElement):
        return a.code

    return int(a)


def _readonly(arr: ndarray) -> ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.uint8)
    arr.setflags(write=False)
    return arr


def _as_codes(arr) -> ndarray:
    """Integer representation of a galois field array."""
    return np.asarray(arr.view(np.ndarray), dtype=np.uint8)


class FieldSpec:

    """Finite field GF(q) with precomputed operation tables.

    Two specs compare equal when their order is equal. Constructed once per
    order through :func:`make_field`; pickles by order.
    """

    def __init__(self, q: int, p: int, e: int, modulus: Optional[str], gf):
        """
        Args:
            q: Field order.
            p: Characteristic.
            e: Degree over the prime field.
            modulus: Defining polynomial. None for prime fields.
            gf: galois field array class. Used for row reduction.
        """
        self.q = q
        self.p = p
        self.e = e
        self.modulus = modulus
        self.gf = gf
        """galois field array class of the same order."""

        x = gf.elements
        self.add_table: ndarray = _readonly(_as_codes(x[:, None] + x[None, :]))
        """Addition table. ``add_table[a, b] = a + b``."""

        self.mul_table: ndarray = _readonly(_as_codes(x[:, None] * x[None, :]))
        """Multiplication table."""

        self.neg_table: ndarray = _readonly(_as_codes(-x))
        """Additive inverses."""

        inverses = np.zeros(q, dtype=np.uint8)
        inverses[1:] = _as_codes(x[1:] ** -1)
        self.inv_table: ndarray = _readonly(inverses)
        """Multiplicative inverses. Entry 0 is a placeholder."""

        self.sub_table: ndarray = _readonly(self.add_table[:, self.neg_table])
        """Subtraction table. ``sub_table[a, b] = a - b``."""

    @property
    def is_prime(self) -> bool:
        """Prime field."""
        return self.e == 1

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.q == self.q

    def __hash__(self):
        return hash(('FieldSpec', self.q))

    def __reduce__(self):
        return make_field, (self.q,)

    def __str__(self):
        return f'GF({self.q})'

    def __repr__(self):
        return f'{type(self).__name__}(q={self.q}, p={self.p}, e={self.e}, modulus={self.modulus!r})'


@functools.lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """Construct the finite field of order q.

    Args:
        q: Prime power field order.

    Returns:
        Field spec.

    Raises:
        TooLarge: For q > 256.
        NotAPrimePower: If q is not a prime power.

    Example:
        >>> make_field(9)
        FieldSpec(q=9, p=3, e=2, modulus='x^2 + 2x + 2')
    """
    q = int(q)
    if q > MAX_FIELD_ORDER:
        raise TooLarge(f'Field order {q} exceeds {MAX_FIELD_ORDER}')

    if q < 2 or not galois.is_prime_power(q):
        raise NotAPrimePower(f'{q} is not a prime power')

    primes, exponents = galois.factors(q)
    p, e = int(primes[0]), int(exponents[0])
    gf = galois.GF(q)
    modulus = None if e == 1 else str(gf.irreducible_poly)
    LOGGER.debug('Constructing GF(%d) with modulus %s', q, modulus)
    return FieldSpec(q, p, e, modulus, gf)


def add(f: FieldSpec, a: Element, b: Element) -> FieldElement:
    """a + b."""
    return FieldElement(int(f.add_table[_code(a), _code(b)]))


def sub(f: FieldSpec, a: Element, b: Element) -> FieldElement:
    """a - b."""
    return FieldElement(int(f.sub_table[_code(a), _code(b)]))


def mul(f: FieldSpec, a: Element, b: Element) -> FieldElement:
    """a * b."""
    return FieldElement(int(f.mul_table[_code(a), _code(b)]))


def neg(f: FieldSpec, a: Element) -> FieldElement:
    """-a."""
    return FieldElement(int(f.neg_table[_code(a)]))


def inv(f: FieldSpec, a: Element) -> FieldElement:
    """Multiplicative inverse.

    Raises:
        DivisionByZero: For the zero element.
    """
    code = _code(a)
    if code == 0:
        raise DivisionByZero(f'Zero has no inverse in {f}')

    return FieldElement(int(f.inv_table[code]))


def div(f: FieldSpec, a: Element, b: Element) -> FieldElement:
    """a / b.

    Raises:
        DivisionByZero: For b = 0.
    """
    return mul(f, a, inv(f, b))


_BINARY_OPS = {'add': add, 'sub': sub, 'mul': mul, 'div': div}
_UNARY_OPS = {'neg': neg, 'inv': inv}


def field_op(f: FieldSpec, op: str, a: Element, b: Optional[Element] = None) -> FieldElement:
    """Dispatch one of the field operations by name.

    Args:
        f: Field.
        op: One of add, sub, mul, div, neg, inv.
        a: First operand.
        b: Second operand for the binary operations.

    Returns:
        Result element.

    Example:
        >>> field_op(make_field(5), 'mul', 3, 4)
        FieldElement(code=2)
    """
    for code in (a, b):
        if code is not None and not 0 <= _code(code) < f.q:
            raise RangeError(f'Element code {_code(code)} not in {f}')

    if op in _UNARY_OPS:
        return _UNARY_OPS[op](f, a)

    if op in _BINARY_OPS:
        if b is None:
            raise RangeError(f'Operation {op!r} needs two operands')

        return _BINARY_OPS[op](f, a, b)

    raise RangeError(f'Unknown field operation {op!r}')


class FieldAxiomReport(NamedTuple):

    """Outcome of an exhaustive field axiom audit."""

    q: int
    additive_associativity: bool
    multiplicative_associativity: bool
    commutativity: bool
    distributivity: bool
    identities: bool
    inverses: bool

    @property
    def passed(self) -> bool:
        return all(self[1:])


def verify_field_axioms(f: FieldSpec) -> FieldAxiomReport:
    """Exhaustively audit all field axioms on the operation tables. Cubic in q.

    Args:
        f: Field.

    Returns:
        Axiom report.
    """
    add_, mul_ = f.add_table, f.mul_table
    a = np.arange(f.q)[:, None, None]
    b = np.arange(f.q)[None, :, None]
    c = np.arange(f.q)[None, None, :]
    codes = np.arange(f.q)
    units = codes[1:]
    return FieldAxiomReport(
        q=f.q,
        additive_associativity=bool(np.all(add_[add_[a, b], c] == add_[a, add_[b, c]])),
        multiplicative_associativity=bool(np.all(mul_[mul_[a, b], c] == mul_[a, mul_[b, c]])),
        commutativity=bool(np.all(add_ == add_.T) and np.all(mul_ == mul_.T)),
        distributivity=bool(np.all(mul_[a, add_[b, c]] == add_[mul_[a, b], mul_[a, c]])),
        identities=bool(np.all(add_[0] == codes) and np.all(mul_[1] == codes)),
        inverses=bool(
            np.all(add_[codes, f.neg_table] == 0)
            and np.all(mul_[units, f.inv_table[units]] == 1)
        ),
    )


def multiplicative_order(f: FieldSpec, a: Element) -> int:
    """Order of a nonzero element in the multiplicative group.

    Raises:
        DivisionByZero: For the zero element.
    """
    code = _code(a)
    if code == 0:
        raise DivisionByZero('Zero is not a unit')

    order = 1
    power = code
    while power != 1:
        power = int(f.mul_table[power, code])
        order += 1

    return order


def primitive_element(f: FieldSpec) -> FieldElement:
    """Smallest code of multiplicative order q - 1."""
    for code in range(1, f.q):
        if multiplicative_order(f, code) == f.q - 1:
            return FieldElement(code)

    raise AssertionError(f'{f} has no primitive element')
