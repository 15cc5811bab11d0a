"""Constants and literals."""


MAX_FIELD_ORDER: int = 256
"""Largest supported field order. Element codes fit into one byte."""

MAX_SUBSET_N: int = 64
"""Largest ground set for subset handles. A subset is one machine word."""

DIGITS: str = '0123456789abcdefghijklmnopqrstuvwxyz'
"""Single character entry digits for q <= 36."""

FAMILY_MAGIC: str = 'qlattice-family'
"""First token of every family file header."""

FAMILY_VERSION: str = 'v1'
"""Family file format version."""

REPORT_SCHEMA: str = 'report-v1'
"""JSON report schema version."""

SUBSETS: str = 'subsets'
"""Family kind literal for subsets of [n]."""

SUBSPACES: str = 'subspaces'
"""Family kind literal for subspaces of F_q^n."""

EXIT_OK: int = 0
"""Success."""

EXIT_VIOLATED: int = 1
"""Property violated or conjecture VIOLATION found."""

EXIT_EXHAUSTED: int = 2
"""Resource exhausted or cap exceeded."""

EXIT_USAGE: int = 3
"""Usage or parse error."""
