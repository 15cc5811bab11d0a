"""qlattice logging.

See Also:
    `Python Logging Not Outputting Anything <https://stackoverflow.com/questions/7016056/python-logging-not-outputting-anything>`_
"""
import logging
import logging.handlers
import os
from logging import Logger
from typing import Optional, Union

import coloredlogs

from qlattice.configuration import CONFIG


LEVEL = CONFIG['Logging']['LEVEL']
DIRECTORY = CONFIG['Logging']['DIRECTORY']
FILENAME = CONFIG['Logging']['FILENAME']

MB: int = 1024 * 1024
"""One mega byte."""

QLATTICE_LOGGER = logging.getLogger('qlattice')
"""qlattice root logger."""

DEPENDENCY_LOGGERS = ('galois', 'numba')
"""Loggers of our numeric dependencies. galois jit compiles through numba
which logs every compilation pass at DEBUG."""


def get_logger(name: Optional[str] = None) -> Logger:
    """Child of the qlattice root logger.

    Args:
        name: Module name with or without the ``qlattice.`` prefix. None for
            the qlattice root logger.

    Returns:
        Logger.

    Example:
        >>> get_logger('qlattice.cli').name
        'qlattice.cli'
    """
    if name is None or name == 'qlattice':
        return QLATTICE_LOGGER

    if name.startswith('qlattice.'):
        name = name[len('qlattice.'):]

    return QLATTICE_LOGGER.getChild(name)


def quiet_dependency_loggers(level: Union[int, str] = logging.WARNING, names=DEPENDENCY_LOGGERS):
    """Raise the level of dependency loggers (and their children) so they do
    not flood a DEBUG session.
    """
    for name in list(logging.root.manager.loggerDict):
        if name.split('.', 1)[0] in names:
            logging.getLogger(name).setLevel(level)

    for name in names:
        logging.getLogger(name).setLevel(level)


def setup_logging(level: Union[int, str] = LEVEL):
    """Setup qlattice loggers. Colored console output on stderr plus a
    rotating log file if ``Logging/DIRECTORY`` is configured.

    Args:
        level: Logging level.
    """
    fmt = '%(asctime)s.%(msecs)03d - %(levelname)5s - %(name)s - %(message)s'
    datefmt = '%Y-%m-%d %H:%M:%S'
    coloredlogs.install(level=level, logger=logging.root, fmt=fmt, datefmt=datefmt)

    if DIRECTORY:
        os.makedirs(DIRECTORY, exist_ok=True)
        filename = os.path.join(DIRECTORY, FILENAME)
        handler = logging.handlers.RotatingFileHandler(
            filename,
            maxBytes=100 * MB,
            backupCount=5,
        )
        handler.setFormatter(logging.Formatter(fmt=fmt, datefmt=datefmt))
        logging.root.addHandler(handler)
