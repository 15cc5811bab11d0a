"""Run qlattice commands with ``python -m qlattice``."""
import sys

from qlattice.cli import main


sys.exit(main())
