import logging

from conv_app.errors import CapacityError, DimensionError

logger = logging.getLogger(__name__)

DEFAULT_MEMORY_CAP_BYTES = 8 * 2**30
MAX_DIM = 20
NAIVE_PRACTICAL_MAX_DIM = 13
DEFAULT_LEAF_DIM = 10
# benchmark dimensions above this need an explicit opt-in (multi-GB results)
BENCH_DEFAULT_MAX_DIM = 16

FLOAT_BYTES = 8
COMPLEX_BYTES = 16


def check_dim(dim):
    """
    Validate a hypercube dimension.

    Args:
        dim (int): Number of axes.

    Raises:
        DimensionError: If `dim` is not an integer in [1, MAX_DIM].

    Returns:
        int: The validated dimension.
    """
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise DimensionError(f"dimension must be an integer, got {dim!r}")
    if dim < 1:
        raise DimensionError(f"dimension must be at least 1, got {dim}")
    if dim > MAX_DIM:
        raise DimensionError(f"dimension {dim} exceeds the supported maximum {MAX_DIM}")
    return dim


def check_same_dim(x, y):
    if x.dim != y.dim:
        raise DimensionError(f"operand dimensions differ: {x.dim} and {y.dim}")
    return x.dim


def ensure_capacity(required_bytes, memory_cap=DEFAULT_MEMORY_CAP_BYTES, what="operation"):
    """
    Refuse an allocation plan that exceeds the memory cap.

    Raises:
        CapacityError: If `required_bytes` is above `memory_cap`.
    """
    if required_bytes > memory_cap:
        logger.warning("%s needs %d bytes, cap is %d", what, required_bytes, memory_cap)
        raise CapacityError(
            f"{what} needs {required_bytes} bytes, above the memory cap of {memory_cap} bytes",
            required_bytes=required_bytes,
            cap_bytes=memory_cap,
        )


def result_bytes(dim, itemsize=FLOAT_BYTES):
    return 3**dim * itemsize
