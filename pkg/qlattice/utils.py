"""Miscellaneous helpers."""
import collections.abc
import itertools
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Iterator, List, Tuple


def update_dict_recursively(dct: dict, other: collections.abc.Mapping) -> dict:
    """Update dictionary recursively in-place.

    Args:
        dct: Dictionary to update.
        other: Other mapping to go through.

    Returns:
        Mutated input dictionary (for recursive calls).

    Example:
        >>> caps = {'Caps': {'NODE_CAP': 10, 'WITNESS_CAP': 100}}
        ... update_dict_recursively(caps, {'Caps': {'NODE_CAP': 20}})
        {'Caps': {'NODE_CAP': 20, 'WITNESS_CAP': 100}}
    """
    for key, value in other.items():
        if isinstance(value, collections.abc.Mapping):
            dct[key] = update_dict_recursively(dict(dct.get(key, {})), value)
        else:
            dct[key] = value

    return dct


def unique(iterable: Iterable) -> Iterator:
    """Iterate over unique elements while preserving order."""
    seen = set()
    for item in iterable:
        if item in seen:
            continue

        seen.add(item)
        yield item


def parse_number(text: str) -> Any:
    """Parse an integer or an exact rational (``'1/2'``, ``'0.1'``).

    Example:
        >>> parse_number('3'), parse_number('1/10')
        (3, Fraction(1, 10))
    """
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        return Fraction(text)


def parse_values(text: str) -> List[Any]:
    """Parse a parameter value list. Supports ranges ``4..6`` and comma
    separated lists ``1,2,5``.

    Example:
        >>> parse_values('4..6')
        [4, 5, 6]
    """
    values = []
    for part in text.split(','):
        if '..' in part:
            lower, upper = part.split('..', maxsplit=1)
            values.extend(range(int(lower), int(upper) + 1))
        else:
            values.append(parse_number(part))

    return values


def grid_points(grid: Dict[str, List[Any]]) -> Iterator[Dict[str, Any]]:
    """Iterate over all parameter combinations of a grid. Keys in sorted
    order, last key varies fastest.

    Example:
        >>> list(grid_points({'n': [4, 5], 'k': [2]}))
        [{'k': 2, 'n': 4}, {'k': 2, 'n': 5}]
    """
    keys = sorted(grid)
    for combination in itertools.product(*(grid[key] for key in keys)):
        yield dict(zip(keys, combination))


def fraction_str(value: Any) -> str:
    """Exact string representation for ints and fractions."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)

    return str(value)


class NestedDict(collections.abc.MutableMapping):

    """Nested dictionary. Supports :class:`tuple` as keys for accessing
    intermediate dictionaries within.

    Example:
        >>> dct = NestedDict()
        ... dct['Caps', 'NODE_CAP'] = 1000
        ... print(dct)
        NestedDict({'Caps': {'NODE_CAP': 1000}})
    """

    def __init__(self, data=None, default_factory: Callable = dict):
        """
        Args:
            data (optional): Initial data object. If non given (default) use
                `default_factory` to create a new one.
            default_factory (optional): Default factory for intermediate
                dictionaries (:class:`dict` by default).
        """
        if data is None:
            data = default_factory()

        self.data = data
        self.default_factory = default_factory

    @staticmethod
    def _as_keys(key) -> Tuple:
        if isinstance(key, tuple):
            return key

        return (key,)

    def __setitem__(self, key, value):
        d = self.data
        *path, last = self._as_keys(key)
        for k in path:
            d = d.setdefault(k, self.default_factory())

        d[last] = value

    def __getitem__(self, key):
        d = self.data
        for k in self._as_keys(key):
            d = d[k]

        return d

    def __delitem__(self, key):
        d = self.data
        *path, last = self._as_keys(key)
        for k in path:
            d = d[k]

        del d[last]

    def __iter__(self):
        return iter(self.data)

    def __len__(self):
        return len(self.data)

    def __repr__(self):
        return f'{type(self).__name__}({self.data!r})'

    def get(self, key, default=None):
        d = self.data
        for k in self._as_keys(key):
            if not isinstance(d, collections.abc.Mapping) or k not in d:
                return default

            d = d[k]

        return d

    def setdefault(self, key, default=None):
        d = self.data
        *path, last = self._as_keys(key)
        for k in path:
            d = d.setdefault(k, self.default_factory())

        return d.setdefault(last, default)
