"""
Numerical reference: convolution through length-3 DFTs on every axis.

Both operands are zero padded into the 3^D result shape, transformed
line by line along each axis with the direct 3x3 DFT matrix, multiplied
pointwise and transformed back. Lines along leading axes are strided;
this engine makes no attempt at cache locality.
"""
from dataclasses import dataclass
import enum
import math

import numpy as np

from conv_app.api.tensors.indexing import binary_to_ternary_table
from conv_app.api.tensors.limits import (
    COMPLEX_BYTES,
    DEFAULT_MEMORY_CAP_BYTES,
    check_dim,
    check_same_dim,
    ensure_capacity,
)
from conv_app.api.tensors.models import ResultTensor
from conv_app.errors import ShapeError

OMEGA = complex(-0.5, -math.sqrt(3.0) / 2.0)
OMEGA_SQUARED = OMEGA.conjugate()


class Direction(enum.Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


@dataclass(frozen=True, eq=False)
class ComplexTensor:
    """
    3^D complex values in the same ternary row-major layout as ResultTensor.
    """
    dim: int
    data: np.ndarray

    def __post_init__(self):
        check_dim(self.dim)
        data = np.asarray(self.data, dtype=np.complex128).reshape(-1)
        if data.size != 3**self.dim:
            raise ShapeError(f"ComplexTensor(dim={self.dim}) expects {3**self.dim} values, got {data.size}")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)


def dft_required_bytes(dim):
    # two padded operands plus the temporaries of one axis pass
    return 5 * 3**dim * COMPLEX_BYTES


def pad_to_ternary(x, *, memory_cap=DEFAULT_MEMORY_CAP_BYTES):
    """
    Zero pad a hypercube into the 3^D result shape.

    Cell k receives x at the binary index with the same digits when every
    digit of k is 0 or 1, and zero otherwise.
    """
    ensure_capacity(3**x.dim * COMPLEX_BYTES, memory_cap, "ternary padding")
    padded = np.zeros(3**x.dim, dtype=np.complex128)
    padded[binary_to_ternary_table(x.dim)] = x.data
    return ComplexTensor(x.dim, padded)


def _transform_inplace(data, dim, direction):
    w1, w2 = (OMEGA, OMEGA_SQUARED) if direction is Direction.FORWARD else (OMEGA_SQUARED, OMEGA)
    for axis in reversed(range(dim)):
        lines = data.reshape(3**axis, 3, 3**(dim - axis - 1))
        a0 = lines[:, 0].copy()
        a1 = lines[:, 1].copy()
        a2 = lines[:, 2].copy()
        lines[:, 0] = a0 + a1 + a2
        lines[:, 1] = a0 + w1 * a1 + w2 * a2
        lines[:, 2] = a0 + w2 * a1 + w1 * a2
    if direction is Direction.INVERSE:
        data /= 3**dim
    return data


def dft3_along_all_axes(t, direction):
    """
    Replace every length-3 line, axis D down to axis 1, by its 3-point DFT.

    The forward twiddle is exp(-2πi/3); the inverse uses exp(+2πi/3) and
    divides by 3^D once at the end.

    Args:
        t (ComplexTensor): Input tensor.
        direction (Direction | str): "forward" or "inverse".

    Returns:
        ComplexTensor: The transformed tensor.
    """
    direction = Direction(direction)
    data = np.array(t.data, dtype=np.complex128)
    return ComplexTensor(t.dim, _transform_inplace(data, t.dim, direction))


def _inverse_product(x, y, memory_cap):
    dim = check_same_dim(x, y)
    ensure_capacity(dft_required_bytes(dim), memory_cap, "DFT convolution")
    fx = np.array(pad_to_ternary(x, memory_cap=memory_cap).data)
    fy = np.array(pad_to_ternary(y, memory_cap=memory_cap).data)
    _transform_inplace(fx, dim, Direction.FORWARD)
    _transform_inplace(fy, dim, Direction.FORWARD)
    fx *= fy
    del fy
    return dim, _transform_inplace(fx, dim, Direction.INVERSE)


def dft_convolve(x, y, *, memory_cap=DEFAULT_MEMORY_CAP_BYTES):
    """
    Approximate the hypercube convolution with forward and inverse 3-point DFTs.

    The imaginary residue of the inverse transform is discarded without
    inspection; see `dft_imag_residue` for the diagnostic.

    Raises:
        DimensionError: If the dimensions differ.
        CapacityError: If the transforms would exceed `memory_cap`.
    """
    dim, z = _inverse_product(x, y, memory_cap)
    return ResultTensor.adopt(dim, np.ascontiguousarray(z.real))


def dft_imag_residue(x, y, *, memory_cap=DEFAULT_MEMORY_CAP_BYTES):
    """Largest |imag| left in the inverse transform of the pointwise product."""
    _, z = _inverse_product(x, y, memory_cap)
    return float(np.max(np.abs(z.imag)))
