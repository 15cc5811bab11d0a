"""Config files in different formats. Currently supported are:
    - YAML (round trip via ``ruamel.yaml``)
    - TOML (round trip via ``tomlkit``)
    - INI (via ``configobj``)
    - JSON

All formats get mapped onto a :class:`qlattice.utils.NestedDict` which can be
accessed through a `path-like` syntax.

Example:
    >>> cfg = ConfigFile('run.yaml')
    ... cfg.store('Caps/NODE_CAP', 1000000)
    ... cfg.retrieve('Caps')
    {'NODE_CAP': 1000000}
"""
import io
import json
import os
from typing import Any, Callable, Dict, NamedTuple, Tuple

import configobj
import ruamel.yaml
import tomlkit

from qlattice.utils import NestedDict


SEP: str = '/'
"""Separator character for name <-> key path conversion."""


def split_name(name: str) -> Tuple[str, ...]:
    """Split path-like config name into keys.

    Example:
        >>> split_name('Caps/NODE_CAP')
        ('Caps', 'NODE_CAP')
    """
    return tuple(part for part in name.split(SEP) if part)


def guess_config_format(filepath: str) -> str:
    """Guess config format from file extension.

    Example:
        >>> guess_config_format('runs/emc.yml')
        'yaml'
    """
    _, ext = os.path.splitext(filepath)
    ext = ext[1:].lower()
    if ext == 'yml':
        return 'yaml'

    return ext


def _yaml_loads(string: str):
    data = ruamel.yaml.YAML().load(string)
    if data is None:
        data = ruamel.yaml.CommentedMap()

    return data


def _yaml_dumps(data) -> str:
    out = io.StringIO()
    ruamel.yaml.YAML().dump(data, stream=out)
    return out.getvalue()


def _ini_dumps(data) -> str:
    buf = io.BytesIO()
    data.write(buf)
    return buf.getvalue().decode()


class ConfigFormat(NamedTuple):

    """Parse / render functions and intermediate level factory of one format."""

    loads: Callable[[str], Any]
    dumps: Callable[[Any], str]
    factory: Callable[[], Any]


FORMATS: Dict[str, ConfigFormat] = {
    'yaml': ConfigFormat(_yaml_loads, _yaml_dumps, ruamel.yaml.CommentedMap),
    'toml': ConfigFormat(tomlkit.loads, tomlkit.dumps, tomlkit.table),
    'ini': ConfigFormat(
        lambda string: configobj.ConfigObj(io.StringIO(string)),
        _ini_dumps,
        dict,
    ),
    'json': ConfigFormat(
        json.loads,
        lambda data: json.dumps(data, indent=4),
        dict,
    ),
}
"""Supported config formats."""


class ConfigFile(NestedDict):

    """Nested config mapping which can be loaded from / saved to a file on
    disk. Format is picked by file extension.
    """

    def __init__(self, filepath: str):
        """
        Args:
            filepath: Associated config file. Loaded if it exists.
        """
        fmt = guess_config_format(filepath)
        if fmt not in FORMATS:
            raise ValueError(f'No config format for {filepath!r}!')

        self.filepath: str = filepath
        """Associated filepath of config file."""

        self.format: ConfigFormat = FORMATS[fmt]
        """Parse / render functions."""

        super().__init__(self.format.loads('{}' if fmt == 'json' else ''),
                         default_factory=self.format.factory)
        if os.path.exists(self.filepath):
            self.reload()

    def retrieve(self, name: str = '') -> Any:
        """Retrieve config value (or intermediate section) for a path-like
        name. Root by default.
        """
        keys = split_name(name)
        if not keys:
            return self.data

        return self[keys]

    def store(self, name: str, value: Any):
        """Store value under a path-like name."""
        self[split_name(name)] = value

    def storedefault(self, name: str, default: Any = None) -> Any:
        """Fetch config value while providing a default value if the entry does
        not exist. Similar :meth:`dict.setdefault`.
        """
        return self.setdefault(split_name(name), default)

    def to_dict(self) -> dict:
        """Plain nested dict copy of the config data."""
        return json.loads(json.dumps(self.data, default=str))

    def save(self):
        """Save data to config file."""
        with open(self.filepath, 'w') as fp:
            fp.write(self.format.dumps(self.data))

    def reload(self):
        """Load data from config file."""
        with open(self.filepath) as fp:
            self.data = self.format.loads(fp.read())

    def __str__(self):
        return f'{type(self).__name__}({self.filepath!r})'
