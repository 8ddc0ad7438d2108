import logging

import numpy as np

from conv_app.api.tensors.indexing import binary_to_ternary_table
from conv_app.api.tensors.limits import (
    DEFAULT_MEMORY_CAP_BYTES,
    FLOAT_BYTES,
    NAIVE_PRACTICAL_MAX_DIM,
    check_same_dim,
    ensure_capacity,
    result_bytes,
)
from conv_app.api.tensors.models import ResultTensor

logger = logging.getLogger(__name__)


def naive_required_bytes(dim):
    # result plus the binary-to-ternary offset table
    return result_bytes(dim) + 2**dim * FLOAT_BYTES


def naive_convolve(x, y, *, memory_cap=DEFAULT_MEMORY_CAP_BYTES, practical_max_dim=NAIVE_PRACTICAL_MAX_DIM):
    """
    Convolve two hypercubes through the full Cartesian product of their cells.

    Every pair (i, j) adds x[i] * y[j] into z[i + j], with the index sum
    taken digit-wise. Contributions reach each cell in order of i, then j,
    so the result is reproducible bit for bit.

    Args:
        x (Hypercube): Left operand.
        y (Hypercube): Right operand, same dimension as `x`.
        memory_cap (int): Allocation limit in bytes.
        practical_max_dim (int): Above this dimension a warning is logged;
            the computation still runs.

    Raises:
        DimensionError: If the dimensions differ.
        CapacityError: If the result would exceed `memory_cap`.

    Returns:
        ResultTensor: The 3^D convolution result.
    """
    dim = check_same_dim(x, y)
    ensure_capacity(naive_required_bytes(dim), memory_cap, "naive convolution")
    if dim > practical_max_dim:
        logger.warning(
            "naive convolution at D=%d performs %d multiply-adds; expect a long run",
            dim, 4**dim,
        )

    offsets = binary_to_ternary_table(dim)
    z = np.zeros(3**dim, dtype=np.float64)
    y_data = y.data
    for i, x_i in enumerate(x.data):
        # for a fixed i the targets i + j are distinct, so this is one add per cell
        z[offsets[i] + offsets] += x_i * y_data
    return ResultTensor.adopt(dim, z)
