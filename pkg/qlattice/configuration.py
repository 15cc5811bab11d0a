"""qlattice configuration and default values. Searches the *current working
directory* for a ``qlattice.yaml`` configuration file. If present default
configuration values get updated. The environment variable ``QLATTICE_CAP``
overrides the enumeration cap.

Notes:
  - :obj:`CONFIG` is a plain dict in order to catch :exc:`KeyError`
    pre-runtime.
  - Command line flags do not touch :obj:`CONFIG`. They travel inside the
    :class:`qlattice.cli.RunConfig`.
"""
import logging
import os
from typing import Any, Dict

from qlattice.configs import ConfigFile
from qlattice.utils import update_dict_recursively


CONFIG: Dict[str, Any] = {
    'General': {
        'SEED': 0,  # Default seed for randomized sweeps
        'THREADS': 1,  # Worker processes for parallel search
        'OUTPUT_FORMAT': 'json',  # json | csv | text
    },
    'Caps': {
        'ENUMERATION_CAP': 10 ** 7,  # Max elements per subspace enumeration
        'NODE_CAP': 5 * 10 ** 7,  # Max search nodes per root subtree
        'WITNESS_CAP': 100,  # Max reported maximum families
        'MATCHING_CAP': 2000,  # Max family size for exact matching numbers
        'COVERING_CAP': 10 ** 5,  # Max bases of a covering family
        'THRESHOLD_HORIZON': 100,  # Verification sweep length after n0
        'THRESHOLD_SEARCH_LIMIT': 10 ** 6,  # Give up threshold search after
        'POINT_SET_LIMIT': 4096,  # Max q**n with point-set bitmasks
        'SYMMETRY_CROSS_CHECK': 200,  # Ground size for symmetry cross-check
    },
    'Logging': {
        'LEVEL': logging.WARNING,
        'DIRECTORY': None,
        'FILENAME': 'qlattice.log',
    },
}
"""Global qlattice default configuration."""

for fp in [
    os.path.join(os.getcwd(), 'qlattice.yaml'),
]:
    if os.path.exists(fp):
        update_dict_recursively(CONFIG, ConfigFile(fp))

if os.environ.get('QLATTICE_CAP'):
    CONFIG['Caps']['ENUMERATION_CAP'] = int(os.environ['QLATTICE_CAP'])
