"""
Index conventions for hypercubes and result tensors.

Axis 1 is the most significant digit in both the binary (hypercube) and
the ternary (result) flat index, so a hypercube's flat index is the
multi-index read as a binary number and a result cell's flat index is
its digits read in base 3.
"""
from functools import lru_cache

import numpy as np

from conv_app.errors import InvalidIndexError


def _digits_to_flat(digits, base):
    flat = 0
    for position, digit in enumerate(digits):
        if isinstance(digit, bool) or not isinstance(digit, (int, np.integer)) or not 0 <= digit < base:
            raise InvalidIndexError(
                f"digit {digit!r} at axis {position + 1} is outside [0, {base - 1}]"
            )
        flat = flat * base + int(digit)
    return flat


def _flat_to_digits(flat, dim, base):
    if isinstance(flat, bool) or not isinstance(flat, (int, np.integer)):
        raise InvalidIndexError(f"flat index must be an integer, got {flat!r}")
    if dim < 1:
        raise InvalidIndexError(f"dimension must be at least 1, got {dim}")
    if not 0 <= flat < base**dim:
        raise InvalidIndexError(f"flat index {flat} is outside [0, {base**dim})")
    digits = []
    flat = int(flat)
    for _ in range(dim):
        flat, digit = divmod(flat, base)
        digits.append(digit)
    return tuple(reversed(digits))


def hypercube_flat_index(multi_index):
    """
    Map a multi-index of D bits to its flat position, axis 1 most significant.

    Raises:
        InvalidIndexError: If an entry is not 0 or 1.
    """
    return _digits_to_flat(multi_index, 2)


def hypercube_unflatten(flat, dim):
    """Inverse of `hypercube_flat_index`."""
    return _flat_to_digits(flat, dim, 2)


def ternary_flat_index(t):
    """
    Map a TernaryIndex (or a plain digit sequence) to its flat position.

    Raises:
        InvalidIndexError: If a digit is outside {0, 1, 2}.
    """
    digits = getattr(t, "digits", t)
    return _digits_to_flat(digits, 3)


def ternary_unflatten(flat, dim):
    """
    Inverse of `ternary_flat_index`.

    Raises:
        InvalidIndexError: If `flat` is outside [0, 3^dim).
    """
    from conv_app.api.tensors.models import TernaryIndex

    return TernaryIndex(_flat_to_digits(flat, dim, 3))


def _expand(dim, per_axis, base):
    table = np.zeros(1, dtype=np.int64)
    step = np.asarray(per_axis, dtype=np.int64)
    for _ in range(dim):
        table = (table[:, None] * base + step).ravel()
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def binary_to_ternary_table(dim):
    """For every hypercube flat index, the result flat index with the same digits."""
    return _expand(dim, (0, 1), 3)


@lru_cache(maxsize=None)
def carried_index_table(dim):
    """For every result cell, the integer Σ k_a · 2^(D−a) its digits carry into."""
    return _expand(dim, (0, 1, 2), 2)


@lru_cache(maxsize=None)
def ones_digit_count_table(dim):
    """For every result cell, how many of its ternary digits equal 1."""
    table = np.zeros(1, dtype=np.int64)
    for _ in range(dim):
        table = (table[:, None] + np.array([0, 1, 0], dtype=np.int64)).ravel()
    table.flags.writeable = False
    return table
