"""
Exact divide-and-conquer hypercube convolution.

Peeling axis 1 splits each operand into two contiguous halves x[0], x[1]
and the result into three contiguous thirds:

    z[0] = x[0] * y[0]
    z[2] = x[1] * y[1]
    z[1] = (x[0] + x[1]) * (y[0] + y[1]) - z[0] - z[2]

so a D-dimensional convolution costs three (D-1)-dimensional ones. The
middle slab is exact whenever (a + b) - a == b holds for the values
involved, e.g. moderate integers in double precision, or always for
Python integers.

Large blocks recurse in Python over contiguous halves and thirds. Once a
block is at most `leaf_dim` axes deep it is finished by a vectorised
sweep that performs the same operation sequence level by level: marginal
sums along axes 1..D, one product per result cell, then the middle-slab
subtractions along axes D..1.
"""
import numpy as np

from conv_app.api.tensors.limits import (
    DEFAULT_LEAF_DIM,
    DEFAULT_MEMORY_CAP_BYTES,
    FLOAT_BYTES,
    check_dim,
    check_same_dim,
    ensure_capacity,
)
from conv_app.api.tensors.models import ResultTensor, reflect_hypercube
from conv_app.errors import ContractError


class MultiplyCounter:
    """Counts the scalar multiplications performed by the kernel."""

    def __init__(self):
        self.count = 0

    def add(self, n):
        self.count += n


def dnc_required_bytes(dim, leaf_dim=DEFAULT_LEAF_DIM, itemsize=FLOAT_BYTES):
    """Bytes allocated by one `dnc_convolve` call: result, operand copies, sums, leaf buffers."""
    return itemsize * (3**dim + 4 * 2**dim + 4 * 3**min(dim, leaf_dim))


class _LeafSweep:
    """Finishes blocks of at most `leaf_dim` axes with preallocated buffers."""

    def __init__(self, leaf_dim, dtype, counter):
        size = 3**leaf_dim
        self.leaf_dim = leaf_dim
        self.buffers = np.empty((4, size), dtype=dtype)
        self.counter = counter

    def _lift(self, v, dim, ping, pong):
        # (3^a, 2, r) -> (3^a, 3, r): keep both halves and insert their sum between them
        current = v
        for axis in range(dim):
            rows = 3**axis
            run = 2**(dim - axis - 1)
            src = current.reshape(rows, 2, run)
            out = (ping if axis % 2 == 0 else pong)[:rows * 3 * run].reshape(rows, 3, run)
            out[:, 0] = src[:, 0]
            out[:, 2] = src[:, 1]
            np.add(src[:, 0], src[:, 1], out=out[:, 1])
            current = out.reshape(-1)
        return current

    def apply(self, dest, x, y, dim):
        tx = self._lift(x, dim, self.buffers[0], self.buffers[1])
        ty = self._lift(y, dim, self.buffers[2], self.buffers[3])
        np.multiply(tx, ty, out=dest)
        if self.counter is not None:
            self.counter.add(dest.size)
        for axis in reversed(range(dim)):
            view = dest.reshape(3**axis, 3, 3**(dim - axis - 1))
            middle = view[:, 1]
            np.subtract(middle, view[:, 0], out=middle)
            np.subtract(middle, view[:, 2], out=middle)


def _recurse(dest, x, y, dim, sums_x, sums_y, leaf):
    if dim <= leaf.leaf_dim:
        leaf.apply(dest, x, y, dim)
        return

    half = 2**(dim - 1)
    third = 3**(dim - 1)
    marginal_x, deeper_x = sums_x[:half], sums_x[half:]
    marginal_y, deeper_y = sums_y[:half], sums_y[half:]

    # marginals go to their own scratch, so sibling calls never see altered operands
    np.add(x[:half], x[half:], out=marginal_x)
    np.add(y[:half], y[half:], out=marginal_y)

    _recurse(dest[:third], x[:half], y[:half], dim - 1, deeper_x, deeper_y, leaf)
    _recurse(dest[2 * third:], x[half:], y[half:], dim - 1, deeper_x, deeper_y, leaf)

    middle = dest[third:2 * third]
    _recurse(middle, marginal_x, marginal_y, dim - 1, deeper_x, deeper_y, leaf)
    np.subtract(middle, dest[:third], out=middle)
    np.subtract(middle, dest[2 * third:], out=middle)


def _check_block(name, block, size):
    if not isinstance(block, np.ndarray) or block.ndim != 1:
        raise ContractError(f"{name} must be a one-dimensional numpy array")
    if block.size != size:
        raise ContractError(f"{name} holds {block.size} values, {size} expected")
    if not block.flags.c_contiguous or not block.flags.writeable:
        raise ContractError(f"{name} must be contiguous and writeable")


def dnc_convolve_into(dest, x_scratch, y_scratch, dim, *, leaf_dim=DEFAULT_LEAF_DIM, counter=None):
    """
    Convolve in place into caller-provided blocks.

    `x_scratch` and `y_scratch` hold the operands on entry; their contents
    are unspecified afterwards. All three blocks must stay exclusively
    owned by this call until it returns. The dtype of `dest` selects the
    arithmetic: float64 for doubles, object for arbitrary-precision
    integers.

    Args:
        dest (numpy.ndarray): Writable block of 3^dim cells.
        x_scratch (numpy.ndarray): Writable block of 2^dim cells.
        y_scratch (numpy.ndarray): Writable block of 2^dim cells.
        dim (int): Hypercube dimension.
        leaf_dim (int): Depth at which the vectorised sweep takes over.
        counter (MultiplyCounter | None): Optional instrumentation.

    Raises:
        ContractError: If a block has the wrong size, layout or dtype.
    """
    check_dim(dim)
    _check_block("dest", dest, 3**dim)
    _check_block("x_scratch", x_scratch, 2**dim)
    _check_block("y_scratch", y_scratch, 2**dim)
    if not (dest.dtype == x_scratch.dtype == y_scratch.dtype):
        raise ContractError(
            f"block dtypes differ: {dest.dtype}, {x_scratch.dtype}, {y_scratch.dtype}"
        )
    if leaf_dim < 1:
        raise ContractError(f"leaf_dim must be at least 1, got {leaf_dim}")

    leaf = _LeafSweep(min(dim, leaf_dim), dest.dtype, counter)
    sums = np.empty((2, 2**dim if dim > leaf_dim else 0), dtype=dest.dtype)
    _recurse(dest, x_scratch, y_scratch, dim, sums[0], sums[1], leaf)


def dnc_convolve_arrays(x_values, y_values, dim, *, dtype=np.float64, leaf_dim=DEFAULT_LEAF_DIM, counter=None):
    """Copy two flat operand arrays into scratch, convolve, and return the flat result array."""
    operands = np.empty((2, 2**dim), dtype=dtype)
    operands[0] = x_values
    operands[1] = y_values
    dest = np.empty(3**dim, dtype=dtype)
    dnc_convolve_into(dest, operands[0], operands[1], dim, leaf_dim=leaf_dim, counter=counter)
    return dest


def dnc_convolve(x, y, *, memory_cap=DEFAULT_MEMORY_CAP_BYTES, leaf_dim=DEFAULT_LEAF_DIM, counter=None):
    """
    Convolve two hypercubes with three half-dimension convolutions per axis.

    Produces the same contract as `naive_convolve`; the caller's data is
    never modified.

    Raises:
        DimensionError: If the dimensions differ.
        CapacityError: If the allocation plan exceeds `memory_cap`.

    Returns:
        ResultTensor: The 3^D convolution result.
    """
    dim = check_same_dim(x, y)
    ensure_capacity(dnc_required_bytes(dim, leaf_dim), memory_cap, "divide-and-conquer convolution")
    dest = dnc_convolve_arrays(x.data, y.data, dim, leaf_dim=leaf_dim, counter=counter)
    return ResultTensor.adopt(dim, dest)


def difference_convolve(x, y, **kwargs):
    """
    Distribution of the digit-wise difference i - j.

    Cell k holds Σ x[i] * y[j] over pairs with i_a - j_a = k_a - 1 on
    every axis, so digit 0 stands for -1, 1 for 0 and 2 for +1.
    """
    return dnc_convolve(x, reflect_hypercube(y), **kwargs)
