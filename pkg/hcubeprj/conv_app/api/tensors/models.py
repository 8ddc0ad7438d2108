from dataclasses import dataclass

import numpy as np

from conv_app.api.tensors.indexing import hypercube_flat_index, ternary_flat_index
from conv_app.api.tensors.limits import check_dim
from conv_app.errors import InvalidIndexError, ShapeError


def _frozen_array(values, expected, label, copy=True):
    if copy:
        data = np.array(values, dtype=np.float64).reshape(-1)
    else:
        data = np.asarray(values, dtype=np.float64).reshape(-1)
    if data.size != expected:
        raise ShapeError(f"{label} expects {expected} values, got {data.size}")
    data.flags.writeable = False
    return data


@dataclass(frozen=True, eq=False)
class Hypercube:
    """
    A D-dimensional tensor whose every axis has length 2.

    Attributes:
        dim (int): Number of axes D (1 <= D <= MAX_DIM).
        data (numpy.ndarray): 2^D doubles in row-major order, axis 1 most
            significant. The array is copied on construction and frozen.
    """
    dim: int
    data: np.ndarray

    def __post_init__(self):
        check_dim(self.dim)
        object.__setattr__(self, "data", _frozen_array(self.data, 2**self.dim, f"Hypercube(dim={self.dim})"))

    @classmethod
    def from_flat(cls, values):
        """
        Build a hypercube from a flat sequence whose length is a power of two.

        Raises:
            ShapeError: If the length is not 2^D for some D >= 1.
        """
        size = len(values)
        if size < 2 or size & (size - 1):
            raise ShapeError(f"length {size} is not a power of two >= 2")
        return cls(size.bit_length() - 1, values)

    @property
    def size(self):
        return self.data.size

    def at(self, multi_index):
        if len(multi_index) != self.dim:
            raise InvalidIndexError(f"expected {self.dim} bits, got {len(multi_index)}")
        return float(self.data[hypercube_flat_index(multi_index)])

    def __eq__(self, other):
        if not isinstance(other, Hypercube):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.data, other.data)

    __hash__ = None

    def __repr__(self):
        return f"Hypercube(dim={self.dim}, data={self.data.tolist() if self.dim <= 4 else '...'})"


@dataclass(frozen=True, eq=False)
class ResultTensor:
    """
    A D-dimensional tensor whose every axis has length 3, holding a convolution.

    Attributes:
        dim (int): Number of axes D.
        data (numpy.ndarray): 3^D doubles in row-major order.
    """
    dim: int
    data: np.ndarray

    def __post_init__(self):
        check_dim(self.dim)
        object.__setattr__(self, "data", _frozen_array(self.data, 3**self.dim, f"ResultTensor(dim={self.dim})"))

    @classmethod
    def adopt(cls, dim, data):
        """Wrap a freshly computed buffer without copying it; the buffer is frozen."""
        tensor = object.__new__(cls)
        object.__setattr__(tensor, "dim", check_dim(dim))
        object.__setattr__(tensor, "data", _frozen_array(data, 3**dim, f"ResultTensor(dim={dim})", copy=False))
        return tensor

    @property
    def size(self):
        return self.data.size

    def at(self, index):
        digits = getattr(index, "digits", index)
        if len(digits) != self.dim:
            raise InvalidIndexError(f"expected {self.dim} ternary digits, got {len(digits)}")
        return float(self.data[ternary_flat_index(digits)])

    def __eq__(self, other):
        if not isinstance(other, ResultTensor):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.data, other.data)

    __hash__ = None

    def __repr__(self):
        return f"ResultTensor(dim={self.dim}, data={self.data.tolist() if self.dim <= 3 else '...'})"


@dataclass(frozen=True)
class TernaryIndex:
    """A vector of D digits in {0, 1, 2} addressing a ResultTensor cell."""
    digits: tuple

    def __post_init__(self):
        digits = tuple(self.digits)
        for position, digit in enumerate(digits):
            if isinstance(digit, bool) or not isinstance(digit, (int, np.integer)) or digit not in (0, 1, 2):
                raise InvalidIndexError(f"digit {digit!r} at axis {position + 1} is outside {{0, 1, 2}}")
        object.__setattr__(self, "digits", tuple(int(d) for d in digits))

    @property
    def dim(self):
        return len(self.digits)

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)


def reflect_hypercube(x):
    """
    Flip every axis of `x`: bit vector i becomes its complement.

    Under the binary flat-index convention this reverses the flat data.
    """
    return Hypercube(x.dim, x.data[::-1])
