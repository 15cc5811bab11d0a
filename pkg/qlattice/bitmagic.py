"""Bit operation helpers for int bitsets. Subsets of [n], GF(2) rows and
point sets of subspaces are all plain Python integers.
"""
from typing import Iterator


def popcount(value: int) -> int:
    """Number of set bits.

    Example:
        >>> popcount(0b1011)
        3
    """
    return bin(value).count('1')


def bit_mask(width: int) -> int:
    """All ones bit mask for a given width.

    Example:
        >>> bin(bit_mask(width=4))
        '0b1111'
    """
    return (1 << width) - 1


def lowest_bit(value: int) -> int:
    """Index of the lowest set bit. -1 for zero.

    Example:
        >>> lowest_bit(0b10100)
        2
    """
    return (value & -value).bit_length() - 1


def iter_bits(value: int) -> Iterator[int]:
    """Iterate over set bit indices in ascending order.

    Example:
        >>> list(iter_bits(0b1101))
        [0, 2, 3]
    """
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


def next_colex(value: int) -> int:
    """Next integer with the same popcount (Gosper's hack). Iterating from
    ``bit_mask(k)`` walks all k-subsets in colex order.

    Example:
        >>> bin(next_colex(0b0111))
        '0b1011'
    """
    low = value & -value
    ripple = value + low
    return ripple | (((value ^ ripple) >> 2) // low)


def is_subset(small: int, big: int) -> bool:
    """Check if all bits of `small` are set in `big`."""
    return small & ~big == 0
