"""Serialization of qlattice objects.

Reports are JSON. Result named tuples have to be registered with
:func:`qlattice.serialization.register_named_tuple` and get converted to dict
representations with a ``type`` key. Exact rationals, families and lattice
elements get their own dict representations so that :func:`loads` can restore
them.

Example:
    >>> dumps(Fraction(1, 3))
    '{\\n    "denominator": 3,\\n    "numerator": 1,\\n    "type": "Fraction"\\n}'

Families are stored on disk in the plain text family file format::

    qlattice-family v1 kind=subspaces q=2 n=4
    1000;0100
    0010

One element per line. A subspace is given by its RREF rows joined by ``;``
(``-`` for the zero subspace), a subset by its n character 0/1 indicator
string. Empty lines and lines starting with ``#`` are ignored.
"""
import io
import json
import os
from collections import OrderedDict
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

import numpy as np

from qlattice.constants import FAMILY_MAGIC, FAMILY_VERSION, SUBSETS, SUBSPACES
from qlattice.covering_lym import (
    CoveringAudit, IsomorphismReport, LevelAudit, LymReport, ProfileOptimum,
    TransferAudit, WeightedBoundReport,
)
from qlattice.error import ParseError, QLatticeError
from qlattice.extremal_search import (
    Classification, ConjectureRow, EqualityReport, SearchResult,
)
from qlattice.family_properties import MatchingResult, Verdict
from qlattice.finite_field import FieldAxiomReport, make_field
from qlattice.logging import get_logger
from qlattice.matrix import MatrixGF, parse_row
from qlattice.qcombinatorics import BoundResult, IdentityReport, ThresholdResult
from qlattice.subspace_lattice import (
    ZERO_SUBSPACE_ENCODING, Family, ProfileVector, SubsetHandle, SubspaceHandle,
    canonicalize,
)


__all__ = [
    'dumps', 'loads', 'register_named_tuple', 'parse_element', 'dump_family',
    'load_family', 'read_family_file', 'write_family_file',
]


LOGGER = get_logger(__name__)

PathLike = Union[str, os.PathLike]

NAMED_TUPLE_LOOKUP: Dict[str, type] = {}
"""Lookup for all registered named tuple types.

   :meta hide-value:
"""


def register_named_tuple(namedTupleType: type):
    """Register named tuple type for serialization / deserialization in
    :attr:`qlattice.serialization.NAMED_TUPLE_LOOKUP`.

    Args:
        namedTupleType: Named tuple type to register.

    Raises:
        ValueError: If the named tuple has a field called type.
        RuntimeError: If named tuple has already been registered.
    """
    name = namedTupleType.__name__
    if 'type' in namedTupleType._fields:
        raise ValueError(
            "'type' can not be used as field name. Already used as JSON message"
            f" type. Pick something else for named tuple {name!r}!"
        )

    if name in NAMED_TUPLE_LOOKUP:
        raise RuntimeError(f'Named tuple {name!r} is already registered!')

    NAMED_TUPLE_LOOKUP[name] = namedTupleType


for _type in [
        BoundResult, IdentityReport, ThresholdResult, FieldAxiomReport,
        ProfileVector, Verdict, MatchingResult, SearchResult, Classification,
        EqualityReport, ConjectureRow, IsomorphismReport, LevelAudit,
        CoveringAudit, WeightedBoundReport, TransferAudit, LymReport,
        ProfileOptimum,
    ]:
    register_named_tuple(_type)


def parse_element(kind: str, n: int, q: Optional[int], text: str):
    """Parse one family member from its text encoding.

    Args:
        kind: 'subsets' or 'subspaces'.
        n: Ambient dimension / ground set size.
        q: Field order for subspaces.
        text: Member encoding.

    Returns:
        Subset or subspace handle.

    Raises:
        ParseError: Malformed encoding.

    Example:
        >>> parse_element('subspaces', 4, 2, '1100;0110').encoding
        '1010;0110'
    """
    text = text.strip()
    if kind == SUBSETS:
        if len(text) != n:
            raise ParseError(f'Subset {text!r} needs {n} characters')

        return SubsetHandle.from_encoding(text)

    field = make_field(q)
    if text == ZERO_SUBSPACE_ENCODING:
        return canonicalize(field, MatrixGF.zeros(field, 0, n))

    rows = []
    for row in text.split(';'):
        values = parse_row(row, q)
        if len(values) != n:
            raise ParseError(f'Row {row!r} has {len(values)} entries, ambient dimension is {n}')

        rows.append(values)

    return canonicalize(field, MatrixGF(field, rows), n)


def family_to_dict(fam: Family) -> OrderedDict:
    """Convert family to serializable dict representation."""
    return OrderedDict([
        ('type', Family.__name__),
        ('kind', fam.kind),
        ('n', fam.n),
        ('q', fam.q),
        ('elements', fam.encodings()),
    ])


def family_from_dict(dct: dict) -> Family:
    """Reconstruct family from dict representation."""
    kind, n, q = dct['kind'], dct['n'], dct['q']
    return Family(kind, n, q, (parse_element(kind, n, q, text) for text in dct['elements']))


def handle_to_dict(handle) -> OrderedDict:
    """Convert subset or subspace handle to dict representation."""
    dct = OrderedDict([
        ('type', type(handle).__name__),
        ('n', handle.n),
        ('encoding', handle.encoding),
    ])
    if isinstance(handle, SubspaceHandle):
        dct['q'] = handle.q

    return dct


def handle_from_dict(dct: dict):
    """Reconstruct handle from dict representation."""
    if dct['type'] == SubspaceHandle.__name__:
        return parse_element(SUBSPACES, dct['n'], dct['q'], dct['encoding'])

    return parse_element(SUBSETS, dct['n'], None, dct['encoding'])


def named_tuple_as_dict(obj) -> OrderedDict:
    """Convert named tuple instance to dict representation. Named tuple type has
    to be registered with register_named_tuple().
    """
    dct = OrderedDict([
        ('type', type(obj).__name__),
    ])
    dct.update(**obj._asdict())
    return dct


def _as_tuples(value):
    if isinstance(value, list):
        return tuple(_as_tuples(v) for v in value)

    return value


def named_tuple_from_dict(dct: dict):
    """Resolve named tuple from dict representation. JSON arrays become
    tuples.
    """
    dct = dct.copy()
    msgType = dct.pop('type')
    if msgType not in NAMED_TUPLE_LOOKUP:
        raise RuntimeError(f'Do not know type of named tuple {msgType!r}!')

    type_ = NAMED_TUPLE_LOOKUP[msgType]
    kwargs = getattr(type_, '_field_defaults', {}).copy()
    kwargs.update(**{key: _as_tuples(value) for key, value in dct.items()})
    return type_(**kwargs)


def qlattice_object_hook(dct):
    """qlattice object hook for custom JSON deserialization."""
    msgType = dct.get('type')
    if msgType == Fraction.__name__:
        return Fraction(dct['numerator'], dct['denominator'])

    if msgType == Family.__name__:
        return family_from_dict(dct)

    if msgType in {SubsetHandle.__name__, SubspaceHandle.__name__}:
        return handle_from_dict(dct)

    if msgType in NAMED_TUPLE_LOOKUP:
        return named_tuple_from_dict(dct)

    return dct


def _prepare(o):
    """Recursively convert to JSON native types. Registered named tuples nested
    anywhere get converted as well.
    """
    objType = type(o)
    if objType in NAMED_TUPLE_LOOKUP.values():
        return OrderedDict(
            (key, _prepare(value))
            for key, value in named_tuple_as_dict(o).items()
        )

    if isinstance(o, dict):
        return OrderedDict((str(key), _prepare(value)) for key, value in o.items())

    if isinstance(o, (list, tuple, frozenset, set)):
        values = sorted(o) if isinstance(o, (set, frozenset)) else o
        return [_prepare(v) for v in values]

    if isinstance(o, Fraction):
        return OrderedDict([
            ('type', Fraction.__name__),
            ('numerator', o.numerator),
            ('denominator', o.denominator),
        ])

    if isinstance(o, Family):
        return family_to_dict(o)

    if isinstance(o, (SubsetHandle, SubspaceHandle)):
        return handle_to_dict(o)

    if isinstance(o, np.generic):
        return o.item()

    return o


class QLatticeEncoder(json.JSONEncoder):

    """qlattice JSONEncoder for custom JSON serialization."""

    def iterencode(self, o, _one_shot=False):
        yield from super().iterencode(_prepare(o), _one_shot)

    def default(self, o):
        if isinstance(o, QLatticeError):
            return {'type': type(o).__name__, 'message': str(o)}

        return json.JSONEncoder.default(self, o)


def dumps(obj: Any, *args, **kwargs) -> str:
    """Serialize qlattice object to JSON string. Sorted keys and fixed
    indentation by default.

    Args:
        obj: Object to serialize.
        *args: Variable length argument list for :class:`QLatticeEncoder`.
        **kwargs: Arbitrary keyword arguments for :class:`QLatticeEncoder`.

    Returns:
        JSON string.
    """
    if 'indent' not in kwargs:
        kwargs['indent'] = 4
    if 'sort_keys' not in kwargs:
        kwargs['sort_keys'] = True
    return json.dumps(obj, cls=QLatticeEncoder, *args, **kwargs)


def loads(string: str) -> Any:
    """Deserialize qlattice object from JSON string.

    Args:
        string: Input string.

    Returns:
        Decoded object.
    """
    return json.loads(string, object_hook=qlattice_object_hook)


def _header(fam: Family) -> str:
    q = '-' if fam.q is None else fam.q
    return f'{FAMILY_MAGIC} {FAMILY_VERSION} kind={fam.kind} q={q} n={fam.n}'


def _parse_header(line: str) -> Dict[str, Any]:
    tokens = line.split()
    if len(tokens) < 2 or tokens[0] != FAMILY_MAGIC:
        raise ParseError(f'Not a family file header: {line!r}', lineno=1)

    if tokens[1] != FAMILY_VERSION:
        raise ParseError(f'Unsupported family file version {tokens[1]!r}', lineno=1)

    fields = {}
    for token in tokens[2:]:
        key, sep, value = token.partition('=')
        if not sep:
            raise ParseError(f'Malformed header field {token!r}', lineno=1)

        fields[key] = value

    missing = {'kind', 'q', 'n'} - set(fields)
    if missing:
        raise ParseError(f'Header misses {", ".join(sorted(missing))}', lineno=1)

    kind = fields['kind']
    if kind not in {SUBSETS, SUBSPACES}:
        raise ParseError(f'Unknown family kind {kind!r}', lineno=1)

    try:
        n = int(fields['n'])
        q = None if fields['q'] == '-' else int(fields['q'])
    except ValueError as err:
        raise ParseError(f'Malformed header numbers in {line!r}', lineno=1) from err

    if kind == SUBSPACES and q is None:
        raise ParseError('Subspace family needs q', lineno=1)

    return {'kind': kind, 'n': n, 'q': q}


def dump_family(fam: Family) -> str:
    """Family file text. Canonical member order, so equal families give
    identical text.

    Example:
        >>> print(dump_family(fam))
        qlattice-family v1 kind=subsets q=- n=3
        011
        110
    """
    lines = [_header(fam)]
    lines.extend(fam.encodings())
    return '\n'.join(lines) + '\n'


def load_family(text: Union[str, io.TextIOBase]) -> Family:
    """Parse family file text.

    Raises:
        ParseError: With the offending line number.
    """
    if not isinstance(text, str):
        text = text.read()

    lines = text.splitlines()
    if not lines:
        raise ParseError('Empty family file', lineno=1)

    header = _parse_header(lines[0])
    kind, n, q = header['kind'], header['n'], header['q']
    elements: List[Any] = []
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith('#'):
            continue

        try:
            elements.append(parse_element(kind, n, q, line))
        except ParseError as err:
            raise ParseError(str(err), lineno=lineno) from err
        except QLatticeError as err:
            raise ParseError(f'{type(err).__name__}: {err}', lineno=lineno) from err

    fam = Family(kind, n, q, elements)
    if len(fam) < len(elements):
        LOGGER.warning('Family file lists %d duplicate members', len(elements) - len(fam))

    return fam


def read_family_file(filepath: PathLike) -> Family:
    """Load family from a family file."""
    with open(filepath) as f:
        return load_family(f.read())


def write_family_file(fam: Family, filepath: PathLike):
    """Write family to a family file."""
    with open(filepath, 'w') as f:
        f.write(dump_family(fam))
