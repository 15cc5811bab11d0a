"""Run reports and their renderings. JSON is canonical, csv and text get
derived from the JSON payload.
"""
import csv
import io
import json
from collections import OrderedDict
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple

from qlattice import __version__
from qlattice.constants import REPORT_SCHEMA
from qlattice.serialization import dumps
from qlattice.utils import fraction_str


__all__ = ['OUTPUT_FORMATS', 'make_report', 'flatten', 'render']


OUTPUT_FORMATS = ('json', 'csv', 'text')
"""Supported report formats."""


def make_report(command: str, config: Dict[str, Any], results: Any,
                provenance: Optional[List[Dict[str, Any]]] = None,
                timing: Optional[float] = None) -> OrderedDict:
    """Self-contained report.

    Args:
        command: Command name.
        config: Echo of the run configuration.
        results: Results payload.
        provenance (optional): Theorem ids and parameters the results rest on.
        timing (optional): Wall-clock duration in seconds. Omitted if None so
            that reports stay byte-identical across runs.
    """
    report = OrderedDict([
        ('schema', REPORT_SCHEMA),
        ('version', __version__),
        ('command', command),
        ('config', config),
        ('results', results),
        ('provenance', provenance or []),
    ])
    if timing is not None:
        report['timing'] = timing

    return report


def _plain(report) -> Any:
    """JSON native representation without object hook."""
    return json.loads(dumps(report))


def _scalar(value) -> str:
    if isinstance(value, dict) and value.get('type') == 'Fraction':
        return fraction_str(Fraction(value['numerator'], value['denominator']))

    if value is None:
        return '-'

    if isinstance(value, bool):
        return 'true' if value else 'false'

    return str(value)


def flatten(value, prefix: str = '') -> Iterator[Tuple[str, str]]:
    """Dotted key / scalar string pairs of a JSON native value.

    Example:
        >>> list(flatten({'a': {'b': 1, 'c': [2, 3]}}))
        [('a.b', '1'), ('a.c.0', '2'), ('a.c.1', '3')]
    """
    if isinstance(value, dict) and value.get('type') != 'Fraction':
        if value.get('type') == 'Family':
            yield prefix, ' '.join(value['elements']) or '{}'
            return

        for key, item in value.items():
            yield from flatten(item, f'{prefix}.{key}' if prefix else key)
    elif isinstance(value, list):
        if not value:
            yield prefix, '[]'

        for i, item in enumerate(value):
            yield from flatten(item, f'{prefix}.{i}' if prefix else str(i))
    else:
        yield prefix, _scalar(value)


def _render_text(plain) -> str:
    lines = []
    for key, value in flatten(plain):
        lines.append(f'{key}: {value}')

    return '\n'.join(lines) + '\n'


def _render_csv(plain) -> str:
    """Table rows if the results carry a row list, key value pairs otherwise."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    results = plain.get('results')
    rows = results.get('rows') if isinstance(results, dict) else None
    if rows:
        flatRows = [OrderedDict(flatten(row)) for row in rows]
        header = []
        for row in flatRows:
            for key in row:
                if key not in header:
                    header.append(key)

        writer.writerow(header)
        for row in flatRows:
            writer.writerow([row.get(key, '') for key in header])
    else:
        writer.writerow(['key', 'value'])
        for key, value in flatten(plain):
            writer.writerow([key, value])

    return out.getvalue()


def render(report, fmt: str = 'json') -> str:
    """Render report.

    Raises:
        ValueError: Unknown format.
    """
    if fmt == 'json':
        return dumps(report) + '\n'

    plain = _plain(report)
    if fmt == 'text':
        return _render_text(plain)

    if fmt == 'csv':
        return _render_csv(plain)

    raise ValueError(f'Unknown output format {fmt!r}. Choose from {", ".join(OUTPUT_FORMATS)}')
