"""Exact extremal combinatorics on Boolean and linear lattices."""


__author__ = 'qlattice developers'
__version__ = '0.3.0'
